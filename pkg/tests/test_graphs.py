import itertools
from fractions import Fraction

import numpy as np
import pytest

from transcat.canon import canonical_form, from_graph6
from transcat.graphs import (cayley_count_estimate, invariant_graphs, is_invariant, orbital_labels, orbitals,
                             transitive_graph_census)
from transcat.perm import PermGroup, cyclic_group, symmetric_group

nx = pytest.importorskip("networkx")

C4 = cyclic_group(4)
V4 = PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)])


def dihedral(m):
    return PermGroup(m, [tuple((i + 1) % m for i in range(m)), tuple((-i) % m for i in range(m))])


def brute_invariant_classes(G):
    """Oracle: all simple graphs on n vertices fixed by G, up to isomorphism."""
    n = G.degree
    pairs = list(itertools.combinations(range(n), 2))
    forms = set()
    for mask in range(1 << len(pairs)):
        A = np.zeros((n, n), dtype=np.uint8)
        for i, (a, b) in enumerate(pairs):
            if mask >> i & 1:
                A[a, b] = A[b, a] = 1
        if is_invariant(G, A):
            forms.add(canonical_form(A))
    return forms


def test_orbital_examples():
    orbs = orbitals(C4)
    assert len(orbs) == 3
    by_rep = {o.rep: o for o in orbs}
    plus1, plus2, plus3 = by_rep[(0, 1)], by_rep[(0, 2)], by_rep[(0, 3)]
    assert plus1.paired_with == plus3.index and plus2.self_paired
    assert len(orbitals(symmetric_group(4))) == 1
    d5 = orbitals(dihedral(5))
    assert len(d5) == 2 and all(o.self_paired for o in d5)
    with pytest.raises(ValueError):
        orbitals(PermGroup(3, [(1, 0, 2)]))


def test_orbital_labels_partition_off_diagonal_pairs():
    for G in (C4, V4, dihedral(6), symmetric_group(3)):
        lab = orbital_labels(G)
        assert (np.diag(lab) == -1).all()
        assert (lab[~np.eye(G.degree, dtype=bool)] >= 0).all()
        for o in orbitals(G):
            assert int(o.arcs.sum()) % G.degree == 0


@pytest.mark.parametrize("G,count", [(C4, 4), (symmetric_group(4), 2), (V4, 4), (cyclic_group(5), 3),
                                     (dihedral(6), 8), (cyclic_group(6), 8)])
def test_invariant_graphs_match_brute_force(G, count):
    got = invariant_graphs(G)
    assert len(got) == count
    assert {D.canonical for D in got} == brute_invariant_classes(G)
    for D in got:
        assert np.array_equal(D.adjacency, D.adjacency.T)


def test_invariant_digraphs():
    got = invariant_graphs(cyclic_group(3), directed=True)
    assert len(got) == 3  # empty, a directed triangle, K3
    assert sum(D.directed for D in got) == 1


def vertex_transitive_atlas(n):
    """Oracle: vertex-transitive graphs on n vertices from the networkx graph atlas."""
    out = []
    for G in nx.graph_atlas_g():
        if G.number_of_nodes() != n:
            continue
        orbit = {m[0] for m in nx.algorithms.isomorphism.GraphMatcher(G, G).isomorphisms_iter()}
        if len(orbit) == n:
            out.append(nx.to_numpy_array(G, nodelist=range(n), dtype=np.uint8))
    return out


@pytest.mark.parametrize("n", range(2, 8))
def test_census_matches_atlas(store, n):
    census = transitive_graph_census(n, store.get(n))
    oracle = vertex_transitive_atlas(n)
    assert census.t == len(oracle)
    assert {D.canonical for D in census.graphs} == {canonical_form(A) for A in oracle}
    assert census.c == census.t  # every vertex-transitive graph of order below 10 is Cayley


def test_t4_and_invariance(store):
    census = transitive_graph_census(4, store.get(4))
    assert census.t == 4
    regular = [e.group for e in store.get(4) if e.order == 4]
    for D in census.graphs:
        assert any(is_invariant(G, D.adjacency) for G in regular)


def test_non_cayley_graphs_of_order_ten(store):
    census = transitive_graph_census(10, store.get(10))
    assert (census.t, census.c) == (22, 20)
    odd = [D for D in census.graphs if not D.cayley]
    assert sorted(set(D.adjacency.sum(axis=1)).pop() for D in odd) == [3, 6]
    assert canonical_form(from_graph6("IheA@GUAo")) in {D.canonical for D in odd}


def test_census_text(store):
    text = transitive_graph_census(5, store.get(5)).text(seed=3).splitlines()
    assert text[0] == "# vertex-transitive graphs of order 5"
    assert text[1] == "# seed 3" and text[2] == "5 3 3"
    assert all(np.array_equal(from_graph6(t), from_graph6(t).T) for t in text[3:])


def test_too_many_orbitals():
    with pytest.raises(ValueError):
        invariant_graphs(cyclic_group(62))


@pytest.mark.parametrize("G,value", [(C4, Fraction(2)), (V4, Fraction(4, 3)), (cyclic_group(2), Fraction(2))])
def test_cayley_count_estimates(G, value):
    assert cayley_count_estimate(G) == value
