import itertools

import numpy as np
import pytest

from transcat.elusive import (ElusiveReport, elusive_census, exact_derangement, is_prime_derangement,
                              is_two_closed, prime_order_derangement, report_text, two_closure)
from transcat.graphs import orbital_labels
from transcat.perm import BudgetExceeded, PermGroup, alternating_group, cyclic_group, symmetric_group
from transcat.seeds import primitive_group


def brute_derangement_exists(G):
    """Oracle: scan every element for a fixed-point-free element of prime order."""
    return any(is_prime_derangement(tuple(int(x) for x in r)) for r in G.elements_array())


def brute_two_closure_order(G):
    """Oracle: count permutations preserving every orbital."""
    lab = orbital_labels(G)
    n = G.degree
    return sum(np.array_equal(lab[np.ix_(p, p)], lab) for p in map(list, itertools.permutations(range(n))))


def test_witness_examples():
    for G in (cyclic_group(6), symmetric_group(4)):
        w = prime_order_derangement(G)
        assert w is not None and G.contains(w) and is_prime_derangement(w)
    assert is_prime_derangement((1, 0, 3, 2)) and not is_prime_derangement((1, 2, 3, 0))
    assert not is_prime_derangement((1, 0, 2))


def test_m11_on_twelve_points_is_elusive():
    G = primitive_group(12, "M11(12)")
    assert prime_order_derangement(G) is None
    assert exact_derangement(G) is None


def test_symmetric_and_alternating_shortcut():
    assert exact_derangement(symmetric_group(9)) is not None
    assert exact_derangement(alternating_group(9)) is not None  # (3-1)*3 is even
    w = exact_derangement(alternating_group(6))
    assert w is not None and is_prime_derangement(w)


def test_budget_is_explicit():
    with pytest.raises(BudgetExceeded):
        exact_derangement(primitive_group(12, "M12"), budget=1000)


def test_random_and_exact_agree(store):
    for n in range(2, 11):
        for e in store.get(n):
            fast = prime_order_derangement(e.group, seed=1, use_random=True)
            exact = prime_order_derangement(e.group, use_random=False)
            assert (fast is None) == (exact is None), (n, e.index)
            if e.order <= 5000:
                assert (exact is not None) == brute_derangement_exists(e.group)


def test_degree_thirteen_has_no_elusive_groups(store):
    assert not any(r.elusive for r in elusive_census(13, store.get(13)))


def test_two_closure_examples():
    assert two_closure(symmetric_group(4)).order == 24
    assert two_closure(cyclic_group(4)).order == 4  # regular groups are 2-closed
    assert two_closure(alternating_group(4)).order == 24
    assert is_two_closed(cyclic_group(5)) and not is_two_closed(alternating_group(5))


def test_two_closure_matches_permutation_scan(store):
    for n in range(2, 8):
        for e in store.get(n):
            K = two_closure(e.group)
            assert K.order == brute_two_closure_order(e.group), (n, e.index)
            assert e.group.is_subgroup_of(K)
            assert np.array_equal(orbital_labels(K), orbital_labels(e.group))
            assert two_closure(K).order == K.order


def test_report_lines():
    r = ElusiveReport(12, 272, None, False)
    assert r.elusive and r.line() == "12\t272\tELUSIVE\tNOT2CLOSED"
    r = ElusiveReport(4, 1, (1, 2, 3, 0), True)
    assert r.line() == "4\t1\t(1,2,3,4)\t2CLOSED"
    assert report_text([r]).splitlines()[-1] == r.line()


@pytest.mark.slow
def test_random_and_exact_agree_at_degrees_eleven_and_twelve(store):
    for n in (11, 12):
        for e in store.get(n):
            fast = prime_order_derangement(e.group, seed=1, use_random=True)
            exact = prime_order_derangement(e.group, use_random=False)
            assert (fast is None) == (exact is None), (n, e.index)
