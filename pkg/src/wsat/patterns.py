"""Subgraph-pattern machinery: containment, witnesses through an edge,
automorphism counting, and copy counting.

A "copy" of a pattern F in G is a subgraph of G isomorphic to F -- not
necessarily induced.  All searches are deterministic: candidate host vertices
are tried in ascending (degree, index) order, so the first witness found for
a given input is always the same.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

from .errors import ParameterError
from .graph import Edge, Graph, density_m, density_mu


@dataclass(frozen=True)
class Pattern:
    """A target graph F with cached invariants.

    Isolated vertices are stripped by :func:`normalize_pattern` (they do not
    affect weak saturation), so ``delta >= 1`` always holds.
    """

    graph: Graph
    s: int
    t: int
    delta: int
    max_deg: int
    m_F: Fraction
    mu_F: Fraction
    aut: int

    # matching order: pattern vertices arranged so each one is adjacent to an
    # earlier one whenever its component allows; precomputed once.
    order: tuple[int, ...]

    def is_connected(self) -> bool:
        g = self.graph
        if g.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in g.adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == g.n


def _matching_order(g: Graph) -> tuple[int, ...]:
    """Connectivity-first vertex order: start each component at its highest
    degree vertex, then grow by neighbors (ties broken by index)."""
    order: list[int] = []
    placed = [False] * g.n
    while len(order) < g.n:
        frontier = [
            v for v in range(g.n) if not placed[v] and any(placed[u] for u in g.adj[v])
        ]
        if frontier:
            v = max(frontier, key=lambda x: (sum(placed[u] for u in g.adj[x]), -x))
        else:
            v = max(
                (x for x in range(g.n) if not placed[x]),
                key=lambda x: (len(g.adj[x]), -x),
            )
        placed[v] = True
        order.append(v)
    return tuple(order)


def normalize_pattern(f: Graph) -> Pattern:
    """Strip isolated vertices, relabel to 0..s-1, and cache all invariants."""
    if f.m_edges == 0:
        raise ParameterError("pattern must have at least one edge")
    used = sorted(v for v in range(f.n) if f.adj[v])
    if len(used) != f.n:
        f, _ = f.induced(used)
    return Pattern(
        graph=f,
        s=f.n,
        t=f.m_edges,
        delta=f.min_degree(),
        max_deg=f.max_degree(),
        m_F=density_m(f),
        mu_F=density_mu(f),
        aut=automorphism_count(f),
        order=_matching_order(f),
    )


# -- core backtracking matcher -----------------------------------------------


def _iter_maps(
    pat: Graph,
    order: tuple[int, ...],
    host,
    fixed: dict[int, int] | None = None,
) -> Iterator[dict[int, int]]:
    """Yield injective edge-preserving maps V(pat) -> V(host).

    ``host`` needs only ``.n`` and ``.adj`` (a sequence of sets), so closure
    engines can pass mutable working graphs.  ``fixed`` pins pattern vertices
    to host vertices (used to anchor a witness at an edge).
    """
    n = host.n
    mapping: dict[int, int] = {}
    used = [False] * n
    if fixed:
        for pv, hv in fixed.items():
            if used[hv]:
                return
            mapping[pv] = hv
            used[hv] = True
        # fixed assignments must already respect pattern edges between them
        for pv, hv in fixed.items():
            for pu in pat.adj[pv]:
                if pu in mapping and mapping[pu] not in host.adj[hv]:
                    return
    todo = [v for v in order if v not in mapping]

    # degree-then-index candidate order, computed once per call
    by_rank = sorted(range(n), key=lambda v: (len(host.adj[v]), v))

    def extend(i: int) -> Iterator[dict[int, int]]:
        if i == len(todo):
            yield dict(mapping)
            return
        pv = todo[i]
        mapped_nbrs = [mapping[pu] for pu in pat.adj[pv] if pu in mapping]
        if mapped_nbrs:
            cands = set(host.adj[mapped_nbrs[0]])
            for hv in mapped_nbrs[1:]:
                cands &= host.adj[hv]
            pool = sorted(cands, key=lambda v: (len(host.adj[v]), v))
        else:
            pool = by_rank
        deg_needed = len(pat.adj[pv])
        for hv in pool:
            if used[hv] or len(host.adj[hv]) < deg_needed:
                continue
            mapping[pv] = hv
            used[hv] = True
            yield from extend(i + 1)
            del mapping[pv]
            used[hv] = False

    yield from extend(0)


def contains_copy(g, f: Pattern) -> bool:
    """True iff an injective edge-preserving map F -> G exists."""
    if f.s > g.n:
        return False
    for _ in _iter_maps(f.graph, f.order, g):
        return True
    return False


def count_injective_maps(g, f: Pattern) -> int:
    """Number of injective edge-preserving maps V(F) -> V(G)."""
    return sum(1 for _ in _iter_maps(f.graph, f.order, g))


def count_copies(g, f: Pattern) -> int:
    """Number of subgraphs of G isomorphic to F (injective maps / |Aut(F)|)."""
    total = count_injective_maps(g, f)
    assert total % f.aut == 0
    return total // f.aut


@dataclass(frozen=True)
class CopyWitness:
    """Injective map V(F) -> V(G) as a tuple indexed by pattern vertex."""

    mapping: tuple[int, ...]

    def image(self) -> frozenset[int]:
        return frozenset(self.mapping)

    def validates(self, g, f: Pattern, through: Edge | None = None) -> bool:
        m = self.mapping
        if len(m) != f.s or len(set(m)) != f.s:
            return False
        if any(not (0 <= v < g.n) for v in m):
            return False
        for a, b in f.graph.edge_set:
            if m[b] not in g.adj[m[a]]:
                return False
        if through is not None:
            u, v = through
            covered = any(
                {m[a], m[b]} == {u, v} for a, b in f.graph.edge_set
            )
            if not covered:
                return False
        return True


def copy_through_edge(g, f: Pattern, e: Edge) -> Optional[CopyWitness]:
    """First (deterministic) copy of F in G whose image contains the edge e.

    Anchors each pattern edge onto e in both orientations and extends by
    backtracking.  Returns None when no copy through e exists.
    """
    u, v = e
    if u > v:
        u, v = v, u
    if v not in g.adj[u]:
        raise ParameterError(f"edge ({u},{v}) not present in host")
    for a, b in sorted(f.graph.edge_set):
        for hu, hv in ((u, v), (v, u)):
            for mapping in _iter_maps(f.graph, f.order, g, fixed={a: hu, b: hv}):
                return CopyWitness(tuple(mapping[i] for i in range(f.s)))
    return None


def automorphism_count(f: Graph) -> int:
    """|Aut(F)| by backtracking.

    An injective edge-preserving self-map is a bijection carrying edges onto
    edges, hence an automorphism, so counting such maps suffices.
    """
    if f.n == 0:
        return 1
    order = _matching_order(f)
    return sum(1 for _ in _iter_maps(f, order, f))
