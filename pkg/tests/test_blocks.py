import pytest

from transcat.blocks import (BlockSystem, Signature, all_block_systems, block_action, is_invariant,
                             is_primitive, minimal_block_size, minimal_block_systems, signature,
                             wreath_product)
from transcat.perm import PermGroup, cyclic_group, symmetric_group
from transcat.seeds import primitive_group, primitive_groups

C4 = PermGroup(4, [(1, 2, 3, 0)])
V4 = PermGroup(4, [(1, 0, 3, 2), (2, 3, 0, 1)])


def set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for p in set_partitions(rest):
        for i in range(len(p)):
            yield p[:i] + [[first] + p[i]] + p[i + 1:]
        yield [[first]] + p


def brute_systems(G):
    """Oracle: every nontrivial G-invariant partition into equal blocks."""
    n = G.degree
    out = []
    for p in set_partitions(list(range(n))):
        sizes = {len(b) for b in p}
        if len(sizes) != 1 or len(p) in (1, n):
            continue
        B = BlockSystem(len(p[0]), tuple(sorted(tuple(sorted(b)) for b in p)))
        if is_invariant(G, B):
            out.append(B)
    return out


def test_minimal_block_system_examples():
    assert [B.blocks for B in minimal_block_systems(C4)] == [((0, 2), (1, 3))]
    assert len(minimal_block_systems(V4)) == 3
    assert all(B.block_size == 2 for B in minimal_block_systems(V4))
    assert minimal_block_systems(symmetric_group(4)) == []


def test_minimal_block_systems_require_transitivity():
    with pytest.raises(ValueError):
        minimal_block_systems(PermGroup(4, [(1, 0, 2, 3)]))


def test_block_systems_match_partition_oracle(store):
    for n in (4, 6, 8):
        for e in store.get(n):
            got = {B.blocks for B in all_block_systems(e.group)}
            assert got == {B.blocks for B in brute_systems(e.group)}, (n, e.index)


def test_primitive_seeds_have_no_blocks():
    for n in range(2, 15):
        for name, G in primitive_groups(n):
            assert minimal_block_systems(G) == [], name
    assert is_primitive(primitive_group(12, "M11(12)"))


def test_minimal_systems_admit_no_refinement(store):
    for e in store.get(8):
        for B in minimal_block_systems(e.group):
            finer = [C for C in all_block_systems(e.group) if C.block_size < B.block_size]
            for C in finer:
                inside = all(any(set(c) <= set(b) for b in B.blocks) for c in C.blocks)
                assert not inside


def test_block_action_examples():
    B = minimal_block_systems(C4)[0]
    H = block_action(C4, B)
    assert H.degree == 2 and H.order == 2
    W = wreath_product(2, symmetric_group(3))
    top = block_action(W.product, W.canonical_blocks)
    assert top.order == 6 and top.degree == 3


def test_block_action_rejects_non_invariant():
    with pytest.raises(ValueError):
        block_action(C4, BlockSystem(2, ((0, 1), (2, 3))))


@pytest.mark.parametrize("k,H,order", [(2, cyclic_group(2), 8), (3, cyclic_group(2), 72),
                                        (2, symmetric_group(3), 48)])
def test_wreath_product_orders(k, H, order):
    W = wreath_product(k, H)
    assert W.product.order == order
    assert W.product.degree == k * H.degree
    assert is_invariant(W.product, W.canonical_blocks)
    assert block_action(W.product, W.canonical_blocks).equals(H)


def test_wreath_product_rejects_intransitive_top():
    with pytest.raises(ValueError):
        wreath_product(2, PermGroup(3, [(1, 0, 2)]))


def test_signature_examples(store):
    assert signature(C4, store) == Signature(2, 1)
    assert signature(V4, store) == Signature(2, 1)
    assert signature(wreath_product(2, cyclic_group(2)).product, store) == Signature(2, 1)


def test_signature_top_is_catalogued(store):
    for e in store.get(10):
        if e.signature is None:
            continue
        k, idx = e.signature.k, e.signature.top_index
        assert k == minimal_block_size(e.group)
        tops = store.get(10 // k)
        assert 1 <= idx <= len(tops)
        found = [tops.identify(block_action(e.group, B)) for B in minimal_block_systems(e.group)
                 if B.block_size == k]
        assert idx == min(found)
