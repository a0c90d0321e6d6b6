import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from transcat import linalg
from transcat.blocks import lift_top, minimal_block_size, wreath_product
from transcat.classify import same_classes
from transcat.conjugacy import unique_up_to_conjugacy
from transcat.descent import descend_part
from transcat.goursat import automorphisms_mod_inner, goursat_two_blocks, normal_subgroups, quotient
from transcat.lattice import all_subgroup_classes
from transcat.layer_engine import (ExtensionTask, complements_mod_H1, extend_block2, extend_layered,
                                   kernel_module, normalizer_in_symmetric, submodules)
from transcat.layers import Layer
from transcat.perm import PermGroup, alternating_group, cyclic_group, symmetric_group

C2 = cyclic_group(2)


def matrices(p, rows, cols):
    return st.lists(st.lists(st.integers(0, p - 1), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows).map(lambda a: np.array(a, dtype=np.int64))


@pytest.mark.parametrize("p", [2, 3, 5])
@given(data=st.data())
def test_rank_nullity(p, data):
    A = data.draw(matrices(p, 4, 6))
    N = linalg.nullspace(A, p)
    assert linalg.rank(A, p) + len(N) == 6
    if len(N):
        assert not ((A @ N.T) % p).any()
    R, piv = linalg.rref(A, p)
    assert len(piv) == linalg.rank(A, p)


def all_subspaces(p, dim):
    """Oracle: every subspace of F_p^dim, as row spaces of vector subsets."""
    vecs = [v for v in itertools.product(range(p), repeat=dim) if any(v)]
    found = {}
    Z = np.zeros((0, dim), dtype=np.int64)
    found[linalg.key(Z)] = Z
    for r in range(1, dim + 1):
        for combo in itertools.combinations(vecs, r):
            S = linalg.row_space(np.array(combo, dtype=np.int64), p, dim)
            found.setdefault(linalg.key(S), S)
    return found


def invariant(S, mats, p):
    return all(linalg.is_subspace((S @ M) % p, S, p) for M in mats)


def test_kernel_module_examples():
    mod = kernel_module(C2, 2)
    assert mod.dim == 2 and mod.matrices[0].tolist() == [[0, 1], [1, 0]]
    assert kernel_module(symmetric_group(3), 2).dim == 3
    assert kernel_module(C2, 3).p == 3
    assert mod.is_consistent()
    with pytest.raises(ValueError):
        kernel_module(C2, 4)


@pytest.mark.parametrize("G,p,count", [(C2, 2, 3), (PermGroup(1, [(0,)]), 2, 2),
                                       (symmetric_group(3), 2, 4), (C2, 3, 4)])
def test_submodule_examples(G, p, count):
    assert len(submodules(kernel_module(G, p))) == count


@pytest.mark.parametrize("G", [cyclic_group(3), cyclic_group(4), alternating_group(4),
                               symmetric_group(4), PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)])])
def test_submodules_match_subspace_oracle(G):
    mod = kernel_module(G, 2)
    mine = {linalg.key(S) for S in submodules(mod)}
    brute = {k for k, S in all_subspaces(2, mod.dim).items() if invariant(S, mod.matrices, 2)}
    assert mine == brute


def lifted(T, k=2):
    return PermGroup(k * T.degree, [lift_top(k, h) for h in T.generators])


def test_complement_examples():
    X, L = lifted(C2), Layer(2, 2, 0)
    by_dim = {len(M): complements_mod_H1(ExtensionTask(X, L, M)) for M in submodules(kernel_module(C2, 2))}
    assert [G.order for G in by_dim[0]] == [2]
    assert sorted(G.order for G in by_dim[1]) == [4, 4]
    assert all(G.is_transitive() for G in by_dim[1])
    assert unique_up_to_conjugacy(by_dim[1]) == by_dim[1]
    assert [G.order for G in by_dim[2]] == [8]


@pytest.mark.parametrize("T", [C2, cyclic_group(3), symmetric_group(3), cyclic_group(4),
                               PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)])])
def test_complement_classes_match_explicit_search(T):
    """H^1 counts against complements found in the full subgroup lattice of 2 wr T."""
    m = T.degree
    L = Layer(2, m, 0)
    X = lifted(T)
    W = wreath_product(2, T).product
    K = PermGroup(2 * m, L.basis_perms)
    classes = all_subgroup_classes(W)
    for M in submodules(kernel_module(T, 2)):
        task = ExtensionTask(X, L, M)
        assert task.check()
        got = complements_mod_H1(task)
        Mgroup = PermGroup(2 * m, [L.realize(v) for v in M])
        want = 0
        for c in classes:
            C = c.representative
            if C.order != T.order * Mgroup.order:
                continue
            inter = [tuple(int(x) for x in r) for r in K.elements_array() if C.contains(tuple(int(x) for x in r))]
            if len(inter) == Mgroup.order and all(Mgroup.contains(g) for g in inter):
                want += 1
        assert len(got) == want, (T, len(M))
        for G in got:
            assert G.is_subgroup_of(W)


def test_extend_block2_examples(store):
    got = extend_block2(C2)
    assert sorted(G.order for G in got) == [4, 4, 8]
    # union with the primitive part gives all of degree 4
    assert len(got) + 2 == len(store.get(4)) == 5


def test_extend_layered_requires_small_blocks():
    with pytest.raises(ValueError):
        extend_layered(5, C2)


def test_normalizer_in_symmetric():
    assert normalizer_in_symmetric(cyclic_group(5)).order == 20
    assert normalizer_in_symmetric(symmetric_group(4)).order == 24


@pytest.mark.parametrize("k,T", [(3, C2), (2, symmetric_group(3)), (2, cyclic_group(3)),
                                 (4, C2), (3, cyclic_group(3))])
def test_engines_agree(k, T):
    a = [G for G in descend_part(k, T) if G.is_transitive() and minimal_block_size(G) == k]
    b = extend_layered(k, T)
    assert same_classes(unique_up_to_conjugacy(a), b)


def test_descent_and_goursat_agree_for_two_blocks(store):
    a = [G for G in descend_part(3, C2) if G.is_transitive() and minimal_block_size(G) == 3]
    b = [G for G in goursat_two_blocks(3, store.get(3).groups) if minimal_block_size(G) == 3]
    assert same_classes(unique_up_to_conjugacy(a), unique_up_to_conjugacy(b))


def test_goursat_outputs_are_two_block_groups(store):
    for G in goursat_two_blocks(5, store.get(5).groups):
        assert G.degree == 10 and G.is_transitive()
        assert G.order % 2 == 0


def test_normal_subgroups_and_quotients():
    assert [N.order for N in normal_subgroups(symmetric_group(4))] == [1, 4, 12, 24]
    assert [N.order for N in normal_subgroups(cyclic_group(6))] == [1, 2, 3, 6]
    S4 = symmetric_group(4)
    V = normal_subgroups(S4)[1]
    Q, imgs = quotient(S4, V)
    assert Q.order == 6 and len(imgs) == len(S4.generators)


def test_outer_automorphism_counts():
    # Out(C3) = C2, Out(S3) = 1, Out(C2 x C2) = S3
    assert len(automorphisms_mod_inner(cyclic_group(3), list(cyclic_group(3).generators))) == 2
    S3 = symmetric_group(3)
    assert len(automorphisms_mod_inner(S3, list(S3.generators))) == 1
    V = PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)])
    assert len(automorphisms_mod_inner(V, list(V.generators))) == 6
