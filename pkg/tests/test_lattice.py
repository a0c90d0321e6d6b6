from collections import Counter

import pytest

from transcat.blocks import wreath_product
from transcat.conjugacy import are_conjugate, conjugate_group
from transcat.lattice import (all_subgroup_classes, is_minimal_transitive, maximal_subgroups,
                              transitive_maximal_subgroups)
from transcat.perm import BudgetExceeded, PermGroup, alternating_group, cyclic_group, symmetric_group
from transcat.regular import RegularGroup
from transcat.seeds import small_group

C4 = PermGroup(4, [(1, 2, 3, 0)])


def all_subgroups(G):
    """Oracle: every subgroup, by closing element sets under joins with single elements."""
    E = [tuple(int(x) for x in r) for r in G.elements_array()]
    n = G.degree
    found = {frozenset([tuple(range(n))])}
    frontier = list(found)
    while frontier:
        nxt = []
        for H in frontier:
            for x in E:
                if x in H:
                    continue
                K = PermGroup(n, list(H) + [x])
                key = frozenset(tuple(int(v) for v in r) for r in K.elements_array())
                if key not in found:
                    found.add(key)
                    nxt.append(key)
        frontier = nxt
    return found


def dihedral(m):
    return PermGroup(m, [tuple((i + 1) % m for i in range(m)), tuple((-i) % m for i in range(m))])


Q8 = small_group(8, 4).group


def a4_x_c2():
    A = alternating_group(4)
    gens = [tuple(list(g) + [4, 5]) for g in A.generators] + [(0, 1, 2, 3, 5, 4)]
    return PermGroup(6, gens)


@pytest.mark.parametrize("G,count", [(symmetric_group(4), 11), (cyclic_group(6), 4), (Q8, 6)])
def test_class_counts(G, count):
    assert len(all_subgroup_classes(G)) == count


@pytest.mark.parametrize("G", [symmetric_group(4), dihedral(6), a4_x_c2(), Q8,
                               PermGroup(6, [(1, 2, 3, 4, 0, 5), (1, 0, 2, 3, 4, 5)])])
def test_lattice_matches_exhaustive_closure(G):
    classes = all_subgroup_classes(G)
    oracle = all_subgroups(G)
    assert sum(c.class_size for c in classes) == len(oracle)
    by_order = Counter(len(H) for H in oracle)
    mine = Counter()
    for c in classes:
        mine[c.representative.order] += c.class_size
        assert c.representative.is_subgroup_of(G)
        if c.normalizer_order:
            assert c.class_size * c.normalizer_order == G.order
    assert mine == by_order


def test_maximal_flags_are_witnessed():
    G = symmetric_group(5)
    classes = all_subgroup_classes(G)
    E = G.elements_array()
    for c in classes:
        if not c.is_maximal:
            continue
        H = c.representative
        for d in classes:
            K = d.representative
            if K.order <= H.order or K.order == G.order or K.order % H.order:
                continue
            # no conjugate of H lies inside K
            for row in E:
                g = tuple(int(x) for x in row)
                assert not conjugate_group(H, g).is_subgroup_of(K)


def test_maximal_subgroups_of_s4():
    orders = sorted(H.order for H in maximal_subgroups(symmetric_group(4)))
    assert orders == [6, 8, 12]


@pytest.mark.parametrize("G,orders", [(symmetric_group(4), [8, 12]), (C4, []),
                                      (wreath_product(2, cyclic_group(2)).product, [4, 4])])
def test_transitive_maximal_subgroups(G, orders):
    got = transitive_maximal_subgroups(G)
    assert sorted(H.order for H in got) == orders
    assert all(H.is_transitive() for H in got)
    if len(got) == 2 and orders == [4, 4]:
        assert are_conjugate(got[0], got[1]) is None  # C4 and V4


def test_budget_is_a_hard_error():
    with pytest.raises(BudgetExceeded):
        all_subgroup_classes(symmetric_group(8), budget=1000)


def test_minimal_transitive_examples():
    assert is_minimal_transitive(C4)
    assert not is_minimal_transitive(symmetric_group(4))


def test_random_stage_never_changes_verdicts(store):
    for n in range(2, 11):
        for e in store.get(n):
            if e.group.order > 800:
                continue
            fast = is_minimal_transitive(e.group, seed=1, use_random=True)
            exact = is_minimal_transitive(e.group, use_random=False)
            assert fast == exact == e.minimal, (n, e.index)


def test_regular_groups_are_minimal(store):
    for n in (6, 8, 9, 10):
        for e in store.get(n):
            if e.group.order == n:
                assert e.minimal
                RegularGroup(e.group)  # raises unless regular
