"""F-bootstrap percolation: closure inside a host, weak-saturation check,
and independent trace verification.

The closure of a seed is the unique maximal spanning subgraph of the host
reachable by repeatedly adding a host edge that completes a new copy of the
pattern through itself.  Addability is monotone under edge addition, so the
result is independent of processing order; the engine exploits that with a
work queue instead of full rescans.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from collections import deque

from .errors import PreconditionError
from .graph import Edge, Graph
from .patterns import CopyWitness, Pattern, contains_copy, copy_through_edge


@dataclass
class ActivationTrace:
    """Ordered (edge, witness) steps certifying a saturation process."""

    steps: list[tuple[Edge, CopyWitness]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def to_json(self) -> str:
        return json.dumps(
            [
                {"edge": list(e), "witness": list(w.mapping)}
                for e, w in self.steps
            ]
        )

    @classmethod
    def from_json(cls, text: str) -> "ActivationTrace":
        data = json.loads(text)
        steps = [
            ((int(d["edge"][0]), int(d["edge"][1])), CopyWitness(tuple(d["witness"])))
            for d in data
        ]
        return cls(steps)


@dataclass
class ClosureResult:
    closure: Graph
    trace: ActivationTrace
    percolates: bool


class _Work:
    """Mutable adjacency view used internally during fixpoint computation."""

    __slots__ = ("n", "adj")

    def __init__(self, g: Graph):
        self.n = g.n
        self.adj = [set(s) for s in g.adj]

    def add(self, u: int, v: int) -> None:
        self.adj[u].add(v)
        self.adj[v].add(u)

    def remove(self, u: int, v: int) -> None:
        self.adj[u].discard(v)
        self.adj[v].discard(u)

    def edges(self) -> set[Edge]:
        return {(u, v) for u in range(self.n) for v in self.adj[u] if u < v}


def _try_edge(work: _Work, f: Pattern, e: Edge) -> CopyWitness | None:
    u, v = e
    work.add(u, v)
    w = copy_through_edge(work, f, e)
    if w is None:
        work.remove(u, v)
    return w


def _near(work: _Work, e: Edge, radius: int) -> set[int]:
    """Vertices within BFS distance ``radius`` of either endpoint of e."""
    seen = {e[0], e[1]}
    frontier = [e[0], e[1]]
    for _ in range(radius):
        nxt = []
        for v in frontier:
            for u in work.adj[v]:
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        if not nxt:
            break
        frontier = nxt
    return seen


def closure(host: Graph, f: Pattern, seed: Graph) -> ClosureResult:
    """Compute the F-closure of ``seed`` inside ``host`` with a full trace.

    When the pattern is connected, a newly added edge can only unlock stalled
    candidates with an endpoint within distance s-1 of its endpoints (any copy
    containing both edges lives on at most s vertices), so only those are
    re-enqueued.  Disconnected patterns fall back to re-enqueueing everything.
    """
    if not seed.is_spanning_subgraph_of(host):
        raise PreconditionError("seed must be a spanning subgraph of the host")
    work = _Work(seed)
    queue = deque(sorted(host.edge_set - seed.edge_set))
    stalled: set[Edge] = set()
    steps: list[tuple[Edge, CopyWitness]] = []
    local = f.is_connected()
    radius = f.s - 1
    while queue:
        e = queue.popleft()
        w = _try_edge(work, f, e)
        if w is None:
            stalled.add(e)
            continue
        steps.append((e, w))
        if stalled:
            if local:
                reach = _near(work, e, radius)
                wake = {c for c in stalled if c[0] in reach or c[1] in reach}
            else:
                wake = set(stalled)
            stalled -= wake
            queue.extend(sorted(wake))
    closed = Graph(host.n, work.edges())
    return ClosureResult(
        closure=closed,
        trace=ActivationTrace(steps),
        percolates=closed.edge_set == host.edge_set,
    )


def closure_naive(host: Graph, f: Pattern, seed: Graph, scan_order=None) -> ClosureResult:
    """Reference fixpoint: rescan every missing edge after each addition.

    ``scan_order`` optionally permutes the candidate scan; the resulting edge
    set must be identical for every order (order-independence oracle).
    """
    if not seed.is_spanning_subgraph_of(host):
        raise PreconditionError("seed must be a spanning subgraph of the host")
    work = _Work(seed)
    missing = sorted(host.edge_set - seed.edge_set)
    if scan_order is not None:
        missing = list(scan_order(missing))
    steps: list[tuple[Edge, CopyWitness]] = []
    progress = True
    while progress:
        progress = False
        for e in list(missing):
            w = _try_edge(work, f, e)
            if w is not None:
                steps.append((e, w))
                missing.remove(e)
                progress = True
    closed = Graph(host.n, work.edges())
    return ClosureResult(closed, ActivationTrace(steps), closed.edge_set == host.edge_set)


def is_weakly_saturated(host: Graph, f: Pattern, h: Graph) -> bool:
    """True iff H is F-free and its F-closure inside the host percolates."""
    if not h.is_spanning_subgraph_of(host):
        raise PreconditionError("H must be a spanning subgraph of the host")
    if contains_copy(h, f):
        return False
    return closure(host, f, h).percolates


def verify_trace_detailed(
    host: Graph, f: Pattern, seed: Graph, trace: ActivationTrace
) -> tuple[bool, int | None, str]:
    """Replay a trace; on failure report (False, first bad step index, reason)."""
    if not seed.is_spanning_subgraph_of(host):
        return False, None, "seed is not a spanning subgraph of the host"
    work = _Work(seed)
    present = set(seed.edge_set)
    for i, (e, w) in enumerate(trace.steps):
        u, v = e
        edge = (u, v) if u < v else (v, u)
        if edge not in host.edge_set:
            return False, i, f"edge {edge} not in host"
        if edge in present:
            return False, i, f"edge {edge} added twice (or already in seed)"
        work.add(*edge)
        present.add(edge)
        if not w.validates(work, f, through=edge):
            return False, i, f"witness at step {i} is not a copy of F through {edge}"
    return True, None, "ok"


def verify_trace(host: Graph, f: Pattern, seed: Graph, trace: ActivationTrace) -> bool:
    ok, _, _ = verify_trace_detailed(host, f, seed, trace)
    return ok
