import pytest

from wsat import (
    ActivationTrace,
    Graph,
    PreconditionError,
    Seed,
    closure,
    closure_naive,
    complete,
    empty,
    is_weakly_saturated,
    matching,
    normalize_pattern,
    star,
    verify_trace,
    verify_trace_detailed,
)
from conftest import random_host, random_spanning_subgraph


def _pad(g: Graph, n: int) -> Graph:
    return Graph(n, g.edge_set)


def test_closure_star_in_k4(k3):
    res = closure(complete(4), k3, _pad(star(3), 4))
    assert res.percolates
    assert len(res.trace) == 3
    assert res.closure == complete(4)


def test_closure_matching_stalls(k3):
    seed = Graph(4, [(0, 1), (2, 3)])
    res = closure(complete(4), k3, seed)
    assert not res.percolates
    assert res.closure == seed
    assert len(res.trace) == 0


def test_closure_triangle_free_host_is_inert(k3):
    host = Graph(8, [(0, 1), (1, 2), (2, 3), (4, 5), (0, 7)])  # triangle-free
    seed = Graph(8, [(0, 1)])
    res = closure(host, k3, seed)
    assert res.closure == seed


def test_closure_requires_spanning_subgraph(k3):
    with pytest.raises(PreconditionError):
        closure(complete(4), k3, complete(3))
    with pytest.raises(PreconditionError):
        closure(Graph(4, [(0, 1)]), k3, Graph(4, [(2, 3)]))


def test_is_weakly_saturated_examples(k3):
    host = complete(4)
    assert is_weakly_saturated(host, k3, _pad(star(3), 4))
    assert not is_weakly_saturated(host, k3, host)  # contains F
    assert not is_weakly_saturated(host, k3, Graph(4, [(0, 1), (2, 3)]))


def test_emitted_trace_verifies(k3):
    host = complete(4)
    seed = _pad(star(3), 4)
    res = closure(host, k3, seed)
    assert verify_trace(host, k3, seed, res.trace)


def test_swapped_trace_fails(k3):
    host = complete(4)
    seed = Graph(4, [(0, 1), (1, 2), (2, 3)])  # path: later steps need earlier ones
    res = closure(host, k3, seed)
    assert len(res.trace) == 3
    # find a swap that breaks causality: a later edge whose witness needs an
    # earlier edge, moved in front of it
    steps = list(res.trace.steps)
    broken = None
    for i in range(len(steps)):
        for j in range(i + 1, len(steps)):
            cand = list(steps)
            cand[i], cand[j] = cand[j], cand[i]
            if not verify_trace(host, k3, seed, ActivationTrace(cand)):
                broken = ActivationTrace(cand)
                break
        if broken:
            break
    assert broken is not None
    ok, idx, reason = verify_trace_detailed(host, k3, seed, broken)
    assert not ok and idx is not None


def test_empty_trace_on_full_seed(k3):
    host = complete(4)
    assert verify_trace(host, k3, host, ActivationTrace())


def test_trace_rejects_duplicate_and_foreign_edges(k3):
    host = complete(4)
    seed = _pad(star(3), 4)
    res = closure(host, k3, seed)
    dup = ActivationTrace(res.trace.steps + [res.trace.steps[0]])
    ok, idx, _ = verify_trace_detailed(host, k3, seed, dup)
    assert not ok and idx == len(res.trace.steps)


def test_trace_json_roundtrip(k3):
    res = closure(complete(4), k3, _pad(star(3), 4))
    again = ActivationTrace.from_json(res.trace.to_json())
    assert again.steps == res.trace.steps


def test_k2_empty_seed_percolates_any_host():
    k2 = normalize_pattern(complete(2))
    for i in range(10):
        host = random_host(7, 0.5, 900 + i)
        res = closure(host, k2, empty(7))
        assert res.percolates  # wsat(G, K_2) = 0


def _instances(count, patterns):
    out = []
    for i in range(count):
        host = random_host(4 + i % 5, 0.3 + 0.4 * ((i * 7) % 10) / 10, 9000 + i)
        seed1 = random_spanning_subgraph(host, 0.3, 9500 + i)
        extra = random_spanning_subgraph(host, 0.3, 9700 + i)
        seed2 = Graph(host.n, seed1.edge_set | extra.edge_set)
        out.append((host, seed1, seed2, patterns[i % len(patterns)]))
    return out


def test_closure_idempotent(k3, p3, k13):
    for host, seed, _, f in _instances(60, [k3, p3, k13]):
        once = closure(host, f, seed).closure
        twice = closure(host, f, once).closure
        assert twice == once


def test_closure_monotone_in_seed(k3, p3, k13, k4):
    for host, seed1, seed2, f in _instances(200, [k3, p3, k13, k4]):
        c1 = closure(host, f, seed1).closure
        c2 = closure(host, f, seed2).closure
        assert c1.edge_set <= c2.edge_set


def test_closure_order_independent_vs_naive(k3, p3, k13):
    for idx, (host, seed, _, f) in enumerate(_instances(100, [k3, p3, k13])):
        fast = closure(host, f, seed)
        assert verify_trace(host, f, seed, fast.trace)
        results = {fast.closure.edge_set}
        for order_seed in range(5):
            rng = Seed(order_seed, idx).rng()

            def scramble(edges, rng=rng):
                edges = list(edges)
                rng.shuffle(edges)
                return edges

            naive = closure_naive(host, f, seed, scramble)
            results.add(naive.closure.edge_set)
            assert verify_trace(host, f, seed, naive.trace)
        assert len(results) == 1, "closure depends on processing order"


def test_every_emitted_trace_verifies(k3, p3):
    for host, seed, _, f in _instances(40, [k3, p3]):
        res = closure(host, f, seed)
        assert verify_trace(host, f, seed, res.trace)


def test_disconnected_pattern_closure(k3):
    # matching pattern exercises the full-rescan fallback
    m2 = normalize_pattern(matching(2))
    host = complete(5)
    seed = Graph(5, [(0, 1)])
    res = closure(host, m2, seed)
    naive = closure_naive(host, m2, seed)
    assert res.closure == naive.closure
    assert res.percolates
    assert verify_trace(host, m2, seed, res.trace)
