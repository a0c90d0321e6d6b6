import itertools
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from transcat.constructions import mathieu11
from transcat.perm import (BudgetExceeded, PermGroup, alternating_group, build_group, class_reps,
                           conj, cycle_type, cyclic_group, format_cycles, format_gens, from_cycles,
                           identity, inv, mul, orbit_partition, parse_gens, parse_perm, perm_order,
                           symmetric_group)
from transcat.seeds import primitive_group, primitive_groups


def perms(n):
    return st.permutations(list(range(n))).map(tuple)


def closure(n, gens):
    """Oracle: all products of the generators."""
    seen = {identity(n)}
    frontier = [identity(n)]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def test_multiplication_applies_left_factor_first():
    p = (1, 2, 0)
    q = (0, 2, 1)
    assert mul(p, q) == tuple(q[p[i]] for i in range(3))
    assert conj(p, q) == mul(mul(inv(q), p), q)


@given(perms(7), perms(7), perms(7))
def test_group_axioms(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, inv(a)) == identity(7)
    assert perm_order(a) == perm_order(conj(a, b))


def test_build_group_examples():
    assert build_group(4, [(1, 2, 3, 0)]).order == 4
    g = PermGroup(4, [(1, 2, 3, 0), (2, 1, 0, 3)])
    assert g.order == 8 == len(closure(4, g.generators))
    assert mathieu11().order == 7920
    assert primitive_group(12, "M11(12)").order == 7920


def test_build_group_errors():
    with pytest.raises(ValueError):
        PermGroup(0, [])
    with pytest.raises(ValueError):
        PermGroup(4, [(1, 0, 2)])
    with pytest.raises(ValueError):
        PermGroup(3, [(0, 0, 1)])


@given(st.lists(perms(6), min_size=1, max_size=3))
def test_order_and_membership_match_enumeration(gens):
    G = PermGroup(6, gens)
    els = closure(6, gens)
    assert G.order == len(els)
    for p in itertools.islice(itertools.permutations(range(6)), 0, 720, 7):
        assert G.contains(p) == (p in els)
    E = G.elements_array()
    assert {tuple(int(x) for x in r) for r in E} == els


def test_determinism():
    gens = [(1, 2, 3, 4, 0, 5), (0, 1, 2, 5, 3, 4)]
    a, b = PermGroup(6, gens), PermGroup(6, gens)
    assert (a.order, a.base, a.orbits()) == (b.order, b.base, b.orbits())


def test_orbit_partition_examples():
    assert orbit_partition(PermGroup(4, [(1, 2, 3, 0)])) == [[0, 1, 2, 3]]
    assert orbit_partition(PermGroup(4, [(1, 0, 2, 3)])) == [[0, 1], [2], [3]]
    V = PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)])
    assert V.is_transitive() and V.order == 4


@given(st.lists(perms(8), min_size=1, max_size=2))
def test_orbit_partition_is_invariant(gens):
    G = PermGroup(8, gens)
    cell = {x: i for i, c in enumerate(orbit_partition(G)) for x in c}
    assert all(cell[g[x]] == cell[x] for g in gens for x in range(8))


def test_class_reps_examples():
    C4 = cyclic_group(4)
    assert sorted(s for _, _, s in class_reps(C4)) == [1, 1, 1, 1]
    assert sorted(s for _, _, s in class_reps(symmetric_group(4))) == [1, 3, 6, 6, 8]
    assert sorted(s for _, _, s in class_reps(symmetric_group(3))) == [1, 2, 3]


def test_class_reps_sum_and_orders():
    G = primitive_group(12, "M11(12)")
    reps = class_reps(G)
    assert sum(s for _, _, s in reps) == G.order
    assert len(reps) == 10  # M11 has 10 conjugacy classes
    for g, o, _ in reps:
        assert perm_order(g) == o


def test_element_budget_is_explicit():
    with pytest.raises(BudgetExceeded):
        symmetric_group(9).elements_array(budget=1000)


def test_text_forms():
    assert parse_perm("1 2 3 0") == (1, 2, 3, 0)
    assert parse_gens("1 2 3 0; 2 1 0 3") == [(1, 2, 3, 0), (2, 1, 0, 3)]
    assert parse_perm("(1,2,3)(4,5)", 6) == from_cycles(6, [(0, 1, 2), (3, 4)])
    assert format_cycles((1, 2, 0, 3)) == "(1,2,3)"
    assert format_gens([(1, 0)]) == "1 0"
    with pytest.raises(ValueError):
        parse_perm("0 0 1")


@given(perms(9))
def test_cycle_notation_round_trip(p):
    assert parse_perm(format_cycles(p), 9) == p
    assert sum(cycle_type(p)) == 9


def test_random_elements_are_members():
    rng = random.Random(1)
    A = alternating_group(7)
    assert A.order == 2520
    for _ in range(50):
        assert A.contains(A.random_element(rng))


def test_primitive_seed_orders_match_element_counts():
    for n in range(2, 9):
        for name, G in primitive_groups(n):
            if G.order <= 10**5:
                assert len(G.elements_array()) == G.order, name
                E = G.elements_array()
                assert np.all(G.rank(E) >= 0)
