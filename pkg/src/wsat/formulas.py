"""Closed-form wsat values and bounds, explicit saturator constructions, and
the stability profile phi(n) = wsat(n,F) - (delta-1)n.

Every construction verifies its output with the bootstrap engine before
returning; an unverified graph is never handed back.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .bootstrap import closure, is_weakly_saturated
from .errors import (
    ConstructionError,
    ParameterError,
    RangeError,
    StructureAbsentError,
)
from .graph import Graph, Seed, complete
from .patterns import Pattern, contains_copy
from .solver import SearchBudget, greedy_upper_bound, wsat_exact


@dataclass(frozen=True)
class FormulaQuery:
    """A closed-form lookup: family in {ks, ktt, kst, k2t, k1t} plus parameters."""

    family: str
    n: int
    s: int | None = None
    t: int | None = None


def closed_form_wsat(q: FormulaQuery) -> int | tuple[int, int]:
    """Evaluate the known closed forms.

    ks:  wsat(n, K_s) = (s-2)n - C(s-1,2)            for n >= s >= 2
    ktt: wsat(n, K_{t,t}) = (t-1)n - C(t-1,2)        for n >= 3t-3
    kst: (s-1)(n-t+1)+C(t,2) <= wsat(n, K_{s,t}) <= (s-1)(n-s)+C(t,2)
         for t > s (bounds only, large n; we require n >= s+t)
    k2t: wsat(n, K_{2,t}) = n-1+C(t,2) if t even and n <= 2t-2, else n-2+C(t,2)
         for t >= 3 and n >= t+2
    k1t: wsat(n, K_{1,t}) = C(t,2)                   for n >= t+1
    """
    fam, n = q.family, q.n
    if fam == "ks":
        s = _req(q.s, "s")
        if s < 2:
            raise RangeError("ks requires s >= 2")
        if n < s:
            raise RangeError(f"ks requires n >= s (got n={n} < s={s})")
        return (s - 2) * n - comb(s - 1, 2)
    if fam == "ktt":
        t = _req(q.t, "t")
        if t < 1:
            raise RangeError("ktt requires t >= 1")
        if n < 3 * t - 3:
            raise RangeError(f"ktt requires n >= 3t-3 (got n={n} < {3*t-3})")
        return (t - 1) * n - comb(t - 1, 2)
    if fam == "kst":
        s, t = _req(q.s, "s"), _req(q.t, "t")
        if not t > s >= 1:
            raise RangeError("kst requires t > s >= 1")
        if n < s + t:
            raise RangeError(f"kst requires n >= s+t (got n={n} < {s+t})")
        return ((s - 1) * (n - t + 1) + comb(t, 2), (s - 1) * (n - s) + comb(t, 2))
    if fam == "k2t":
        t = _req(q.t, "t")
        if t < 3:
            raise RangeError("k2t requires t >= 3")
        if n < t + 2:
            raise RangeError(f"k2t requires n >= t+2 (got n={n} < {t+2})")
        if t % 2 == 0 and n <= 2 * t - 2:
            return n - 1 + comb(t, 2)
        return n - 2 + comb(t, 2)
    if fam == "k1t":
        t = _req(q.t, "t")
        if t < 1:
            raise RangeError("k1t requires t >= 1")
        if n < t + 1:
            raise RangeError(f"k1t requires n >= t+1 (got n={n} < {t+1})")
        return comb(t, 2)
    raise ParameterError(f"unknown formula family {q.family!r}")


def _req(value: Optional[int], name: str) -> int:
    if value is None:
        raise ParameterError(f"formula query missing parameter {name!r}")
    return value


def generic_upper_bounds(
    n: int, f: Pattern, m: int | None = None, wsat_m: int | None = None
) -> int:
    """Upper bounds on wsat(n, F).

    With (m, wsat_m) supplied: (delta-1)(n-m) + wsat_m, valid for n >= m >= s-1.
    Without: (delta-1)n + (s-1)(s-2*delta)/2, valid for n >= s-1.
    """
    s, d = f.s, f.delta
    if m is not None:
        if wsat_m is None:
            raise ParameterError("wsat_m must accompany m")
        if not n >= m >= s - 1:
            raise RangeError(f"need n >= m >= s-1 (n={n}, m={m}, s={s})")
        return (d - 1) * (n - m) + wsat_m
    if n < s - 1:
        raise RangeError(f"need n >= s-1 (n={n}, s={s})")
    return (d - 1) * n + (s - 1) * (s - 2 * d) // 2


# -- constructions -----------------------------------------------------------


def construct_complete_host_saturator(
    n: int, f: Pattern, m: int, core: Graph
) -> Graph:
    """Core-plus-fringe saturator for the complete host K_n.

    Places a verified weakly (K_m, F)-saturated core on vertices 0..m-1, then
    joins every outside vertex to the delta-1 lowest-labeled core vertices.
    |E(H)| = (delta-1)(n-m) + |E(core)|.  The result is verified weakly
    (K_n, F)-saturated before being returned.

    For F = K_s with m = s-2 and core = K_{s-2} this is the classical join
    construction attaining (s-2)n - C(s-1,2).
    """
    d = f.delta
    if core.n != m:
        raise ParameterError(f"core has {core.n} vertices, expected m={m}")
    if not n >= m >= max(d - 1, 1):
        raise RangeError(f"need n >= m >= delta-1 (n={n}, m={m}, delta={d})")
    if not is_weakly_saturated(complete(m), f, core):
        raise ConstructionError("core is not weakly (K_m, F)-saturated")
    edges = set(core.edge_set)
    for v in range(m, n):
        for u in range(d - 1):
            edges.add((u, v))
    h = Graph(n, edges)
    host = complete(n)
    if not is_weakly_saturated(host, f, h):
        raise ConstructionError(
            "constructed graph failed verification",
            diagnostic=_first_unreached(host, f, h),
        )
    return h


def _first_unreached(host: Graph, f: Pattern, h: Graph):
    if contains_copy(h, f):
        return {"reason": "candidate contains a copy of the pattern"}
    res = closure(host, f, h)
    missing = sorted(host.edge_set - res.closure.edge_set)
    return {"reason": "closure stalled", "first_unreachable_edge": missing[0] if missing else None}


def _find_clique(g: Graph, m: int) -> Optional[tuple[int, ...]]:
    """Lexicographically first m-clique, by backtracking over ascending vertices."""
    def extend(chosen: list[int], cands: list[int]) -> Optional[tuple[int, ...]]:
        if len(chosen) == m:
            return tuple(chosen)
        if len(chosen) + len(cands) < m:
            return None
        for i, v in enumerate(cands):
            nxt = [u for u in cands[i + 1:] if u in g.adj[v]]
            got = extend(chosen + [v], nxt)
            if got is not None:
                return got
        return None

    if m == 0:
        return ()
    return extend([], list(range(g.n)))


def _max_clique(g: Graph, vertices: list[int]) -> list[int]:
    """Maximum clique within a vertex subset (first one found among maximums)."""
    best: list[int] = []

    def extend(chosen: list[int], cands: list[int]) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) + len(cands) <= len(best):
            return
        for i, v in enumerate(cands):
            nxt = [u for u in cands[i + 1:] if u in g.adj[v]]
            extend(chosen + [v], nxt)

    extend([], sorted(vertices))
    return best


def _greedy_core(g: Graph, part: list[int], f: Pattern, seed: Seed) -> set:
    """Weakly (G[part], F)-saturated edge set via reverse-delete, in G's labels."""
    sub, labels = g.induced(part)
    if sub.m_edges == 0:
        return set()
    res = greedy_upper_bound(sub, f, seed)
    h, _ = res.certificate
    return {(labels[u], labels[v]) for u, v in h.edge_set}


def construct_random_host_saturator(
    g: Graph, f: Pattern, m: int, seed: Seed | int = 0
) -> Graph:
    """Clique-anchored saturator for an arbitrary host.

    Finds an m-clique Omega, builds a greedy weakly (G[Omega], F)-saturated
    core, joins every common neighbor of Omega to its delta-1 lowest-labeled
    clique vertices, and gives every remaining vertex delta-1 edges into the
    common neighborhood of itself and Omega (ascending label order).  The
    result is verified; failure raises with the first unreachable edge, which
    is an expected outcome on sparse hosts.
    """
    if isinstance(seed, int):
        seed = Seed(seed)
    d = f.delta
    omega = _find_clique(g, m)
    if omega is None:
        raise StructureAbsentError(f"host contains no clique of size {m}")
    omega_set = set(omega)
    edges = _greedy_core(g, list(omega), f, seed)
    common = [
        v for v in range(g.n)
        if v not in omega_set and all(v in g.adj[u] for u in omega)
    ]
    if d - 1 > m:
        raise StructureAbsentError(
            f"clique size {m} cannot host delta-1 = {d-1} edges per vertex"
        )
    for v in common:
        for u in omega[: d - 1]:
            edges.add((min(u, v), max(u, v)))
    far = [v for v in range(g.n) if v not in omega_set and v not in common]
    common_set = set(common)
    for v in far:
        targets = sorted(u for u in g.adj[v] if u in common_set)
        if len(targets) < d - 1:
            raise StructureAbsentError(
                f"vertex {v} has only {len(targets)} neighbors in N(Omega), "
                f"needs {d-1}"
            )
        for u in targets[: d - 1]:
            edges.add((min(u, v), max(u, v)))
    h = Graph(g.n, edges)
    if not is_weakly_saturated(g, f, h):
        raise ConstructionError(
            "clique-anchored construction failed verification",
            diagnostic=_first_unreached(g, f, h),
        )
    return h


def construct_clique_partition_saturator(
    g: Graph, f: Pattern, seed: Seed | int = 0
) -> Graph:
    """Clique-partition saturator for an arbitrary host.

    Greedily partitions V(G) into cliques V_1 >= V_2 >= ... (largest first),
    builds a greedy core inside each part, fixes an (s-2)-set S in V_1, and
    wires each part's (s-1)-set S_i (preferring common neighbors of S) to
    S plus an (s-2)-set R_i drawn from the common neighborhood of S u S_i.
    All set choices are greedy lowest-index so failures are reproducible.
    """
    if isinstance(seed, int):
        seed = Seed(seed)
    s = f.s
    remaining = list(range(g.n))
    parts: list[list[int]] = []
    while remaining:
        c = _max_clique(g, remaining)
        parts.append(sorted(c))
        remaining = [v for v in remaining if v not in set(c)]
    if len(parts[0]) < s - 2:
        raise StructureAbsentError(
            f"largest clique has {len(parts[0])} vertices, cannot pick S of size {s-2}"
        )
    S = parts[0][: s - 2]
    S_set = set(S)
    nS = _common_neighbors(g, S)
    edges: set = set()
    for i, part in enumerate(parts):
        edges |= _greedy_core(g, part, f, Seed(seed.master, seed.stream + i + 1))
    for i, part in enumerate(parts):
        inside = [v for v in part if v in nS]
        if len(inside) >= s - 1:
            s_i = inside[: s - 1]
        else:
            fill = [v for v in part if v not in S_set and v not in inside]
            s_i = inside + fill[: s - 1 - len(inside)]
            if len(s_i) < s - 1:
                raise StructureAbsentError(
                    f"part {i} too small to pick S_i of size {s-1}"
                )
        r_pool = _common_neighbors(g, S + s_i)
        if len(r_pool) < s - 2:
            raise StructureAbsentError(
                f"part {i}: only {len(r_pool)} common neighbors of S u S_i, "
                f"cannot pick R_i of size {s-2}"
            )
        r_i = r_pool[: s - 2]
        for u in s_i:
            for v in S + r_i:
                if v in g.adj[u]:
                    edges.add((min(u, v), max(u, v)))
    h = Graph(g.n, edges)
    if not is_weakly_saturated(g, f, h):
        raise ConstructionError(
            "clique-partition construction failed verification",
            diagnostic=_first_unreached(g, f, h),
        )
    return h


def _common_neighbors(g: Graph, vertices: list[int]) -> list[int]:
    vs = set(vertices)
    out = [
        v for v in range(g.n)
        if v not in vs and all(v in g.adj[u] for u in vertices)
    ]
    return out


# -- stability profile -------------------------------------------------------


@dataclass
class StabilityProfile:
    """phi(n) = wsat(n,F) - (delta-1)n scanned up to n_max.

    d_F is the last scanned value and k the first n attaining it; both are
    desk-scale estimates (constancy beyond n_max is not certified).  For
    delta >= 2 the point n = s-1 is excluded from k-detection: the host
    K_{s-1} is F-free, so wsat there is the degenerate forced value C(s-1,2).
    """

    delta: int
    d_F: int
    k: int
    phi_table: list[tuple[int, int]]
    complete_scan: bool = True
    note: str = "desk-scale estimate"


def stability_profile(
    f: Pattern, n_max: int, budget: SearchBudget | None = None
) -> StabilityProfile:
    s, d = f.s, f.delta
    n_min = s - 1
    if n_max < n_min:
        raise ParameterError(f"n_max must be at least s-1 = {n_min}")
    table: list[tuple[int, int]] = []
    complete_scan = True
    for n in range(n_min, n_max + 1):
        res = wsat_exact(complete(n), f, budget)
        if res.exact is None:
            complete_scan = False
            break
        table.append((n, res.exact - (d - 1) * n))
    if not table:
        raise ParameterError("budget exhausted before any profile point")
    for (_, a), (_, b) in zip(table, table[1:]):
        if b > a:
            raise AssertionError(f"phi increased from {a} to {b}; engine bug")
    d_F = table[-1][1]
    floor = n_min if d == 1 else s
    k = next((n for n, phi in table if phi == d_F and n >= floor), table[-1][0])
    return StabilityProfile(
        delta=d, d_F=d_F, k=k, phi_table=table, complete_scan=complete_scan
    )
