import pytest

from wsat import (
    Graph,
    PreconditionError,
    SearchBudget,
    complete,
    count_copies,
    greedy_upper_bound,
    is_weakly_saturated,
    lower_bound_general,
    normalize_pattern,
    star,
    verify_trace,
    wsat_exact,
    wsat_exact_naive,
)
from conftest import random_host


def test_lower_bound_examples(k3, k13):
    assert lower_bound_general(complete(5), k3) == 3
    # delta(F) = 1 pattern on a complete host: bound collapses to t-1
    assert lower_bound_general(complete(8), k13) == k13.t - 1
    # G = F itself: min{t, t-1}
    assert lower_bound_general(complete(3), k3) == 2


def test_lower_bound_precondition(k4):
    with pytest.raises(PreconditionError):
        lower_bound_general(complete(3), k4)


def test_wsat_exact_examples(k3, k4, k13):
    assert wsat_exact(complete(4), k3).exact == 3
    assert wsat_exact(complete(5), k13).exact == 3
    assert wsat_exact(complete(5), k4).exact == 7


def test_wsat_exact_k5_k4_against_unpruned_oracle(k4):
    assert wsat_exact_naive(complete(5), k4) == 7  # also 2n-3 = 7


def test_wsat_certificate_verifies(k3, k4):
    for host, f in [(complete(5), k3), (complete(5), k4)]:
        res = wsat_exact(host, f)
        h, trace = res.certificate
        assert h.m_edges == res.exact
        assert is_weakly_saturated(host, f, h)
        assert verify_trace(host, f, h, trace)


def test_wsat_f_free_host_is_forced(k3):
    host = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4)])  # triangle-free
    res = wsat_exact(host, k3)
    assert res.exact == host.m_edges
    assert res.certificate[0] == host


def test_oracle_equivalence_small_complete_hosts(k3, k4, k13, p3):
    k12 = normalize_pattern(star(1))
    for n in (4, 5, 6):
        host = complete(n)
        for f in (k3, k4, k13, k12, p3):
            if host.n < f.s:
                continue
            assert wsat_exact(host, f).exact == wsat_exact_naive(host, f), (n, f.s, f.t)


def test_budget_exhaustion_flags_partial(k3):
    res = wsat_exact(complete(7), k3, SearchBudget(max_nodes=5, max_seconds=60))
    assert res.budget_exceeded
    assert res.exact is None
    assert res.lower <= res.upper == complete(7).m_edges


def test_greedy_examples(k3):
    res = greedy_upper_bound(complete(4), k3, 1)
    assert res.upper == wsat_exact(complete(4), k3).exact == 3

    tri_free = Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)])
    res = greedy_upper_bound(tri_free, k3, 1)
    assert res.upper == tri_free.m_edges  # nothing deletable

    res = greedy_upper_bound(complete(6), k3, 1)
    assert res.upper == 5


def test_greedy_meets_clique_closed_form(k3):
    for n in range(4, 9):
        best = min(greedy_upper_bound(complete(n), k3, s).upper for s in range(10))
        assert best == n - 1


def test_greedy_certificate_sound(k3, k13):
    for i in range(10):
        host = random_host(7, 0.6, 1100 + i)
        for f in (k3, k13):
            res = greedy_upper_bound(host, f, i)
            h, trace = res.certificate
            assert h.m_edges == res.upper
            assert is_weakly_saturated(host, f, h)
            assert verify_trace(host, f, h, trace)


def test_sandwich_lower_exact_greedy(k3, k13):
    for i in range(15):
        host = random_host(6, 0.5, 1200 + i)
        for f in (k3, k13):
            if host.n < f.s:
                continue
            exact = wsat_exact(host, f).exact
            assert lower_bound_general(host, f) <= exact
            assert exact <= greedy_upper_bound(host, f, i).upper


def test_copy_count_sandwich_on_random_hosts(k3):
    # |E(G)| - X_F(G) <= wsat(G,F) <= |E(G)| on 100 random hosts, n <= 7
    for i in range(100):
        n = 4 + i % 4
        host = random_host(n, 0.2 + 0.06 * (i % 11), 1300 + i)
        exact = wsat_exact(host, k3).exact
        x_f = count_copies(host, k3)
        assert host.m_edges - x_f <= exact <= host.m_edges


def test_wsat_k2_is_zero():
    k2 = normalize_pattern(complete(2))
    for i in range(5):
        host = random_host(6, 0.5, 1400 + i)
        assert wsat_exact(host, k2).exact == 0
