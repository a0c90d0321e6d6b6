"""Block systems, block actions, wreath products and signatures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Protocol, Sequence

from .perm import Perm, PermGroup, from_cycles


@dataclass(frozen=True)
class BlockSystem:
    block_size: int
    blocks: tuple[tuple[int, ...], ...]

    def __str__(self):
        return f"k={self.block_size} | " + " ".join(
            "{" + ",".join(map(str, b)) + "}" for b in self.blocks)

    def block_of(self) -> list[int]:
        lab = [0] * sum(len(b) for b in self.blocks)
        for i, b in enumerate(self.blocks):
            for x in b:
                lab[x] = i
        return lab

    @staticmethod
    def from_labels(labels: Sequence[int]) -> "BlockSystem":
        cells: dict[int, list[int]] = {}
        for x, c in enumerate(labels):
            cells.setdefault(c, []).append(x)
        blocks = tuple(sorted(tuple(sorted(c)) for c in cells.values()))
        return BlockSystem(len(blocks[0]), blocks)

    @staticmethod
    def canonical(n: int, k: int) -> "BlockSystem":
        return BlockSystem(k, tuple(tuple(range(i, i + k)) for i in range(0, n, k)))


@dataclass(frozen=True)
class Signature:
    k: int
    top_index: int

    def __str__(self):
        return f"{self.k},{self.top_index}"


@dataclass
class WreathFrame:
    base_degree: int
    top_group: PermGroup
    product: PermGroup
    canonical_blocks: BlockSystem


def block_closure(G: PermGroup, seed: Sequence[int]) -> list[int]:
    """Labels of the finest G-invariant partition in which ``seed`` lies in one cell."""
    n = G.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    pending = []
    a0 = seed[0]
    for b in seed[1:]:
        ra, rb = find(a0), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
            pending.append((a0, b))
    while pending:
        a, b = pending.pop()
        for g in G.generators:
            ra, rb = find(g[a]), find(g[b])
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
                pending.append((g[a], g[b]))
    return [find(x) for x in range(n)]


def _system_from_labels(labels) -> BlockSystem | None:
    bs = BlockSystem.from_labels(labels)
    if bs.block_size in (1, len(labels)):
        return None
    return bs


def all_block_systems(G: PermGroup) -> list[BlockSystem]:
    """Every nontrivial block system of a transitive group."""
    if not G.is_transitive():
        raise ValueError("block systems are only defined here for transitive groups")
    n = G.degree
    found: dict[tuple, BlockSystem] = {}
    frontier = []
    for w in range(1, n):
        bs = _system_from_labels(block_closure(G, [0, w]))
        if bs is not None and bs.blocks not in found:
            found[bs.blocks] = bs
            frontier.append(bs)
    while frontier:
        bs = frontier.pop()
        b0 = bs.blocks[0]
        for w in range(n):
            if w in b0:
                continue
            nb = _system_from_labels(block_closure(G, list(b0) + [w]))
            if nb is not None and nb.blocks not in found:
                found[nb.blocks] = nb
                frontier.append(nb)
    return sorted(found.values(), key=lambda s: (s.block_size, s.blocks))


def minimal_block_systems(G: PermGroup) -> list[BlockSystem]:
    if not G.is_transitive():
        raise ValueError("minimal_block_systems requires a transitive group")
    n = G.degree
    cands: dict[tuple, BlockSystem] = {}
    for w in range(1, n):
        bs = _system_from_labels(block_closure(G, [0, w]))
        if bs is not None:
            cands[bs.blocks] = bs
    zero_blocks = {key: set(bs.blocks[0]) for key, bs in cands.items()}
    out = []
    for key, bs in cands.items():
        b = zero_blocks[key]
        if not any(o < b for k2, o in zero_blocks.items() if k2 != key):
            out.append(bs)
    return sorted(out, key=lambda s: (s.block_size, s.blocks))


def is_primitive(G: PermGroup) -> bool:
    return G.is_transitive() and not minimal_block_systems(G)


def minimal_block_size(G: PermGroup) -> int:
    """Smallest nontrivial block size; the degree itself for primitive groups."""
    systems = minimal_block_systems(G)
    return min((s.block_size for s in systems), default=G.degree)


def is_invariant(G: PermGroup, B: BlockSystem) -> bool:
    lab = B.block_of()
    for g in G.generators:
        for blk in B.blocks:
            t = lab[g[blk[0]]]
            if any(lab[g[x]] != t for x in blk):
                return False
    return True


def block_action_images(gens: Sequence[Perm], B: BlockSystem) -> list[Perm]:
    lab = B.block_of()
    out = []
    for g in gens:
        img = []
        for blk in B.blocks:
            t = lab[g[blk[0]]]
            if any(lab[g[x]] != t for x in blk):
                raise ValueError(f"block system {B} is not invariant")
            img.append(t)
        out.append(tuple(img))
    return out


def block_action(G: PermGroup, B: BlockSystem) -> PermGroup:
    return PermGroup(len(B.blocks), block_action_images(G.generators, B))


def lift_top(k: int, h: Perm) -> Perm:
    """Act on blocks {ik..ik+k-1} by h, fixing positions inside blocks."""
    return tuple(h[i // k] * k + i % k for i in range(k * len(h)))


def local_perm(k: int, m: int, block: int, p: Sequence[int]) -> Perm:
    """The permutation acting as p on block ``block`` and trivially elsewhere."""
    img = list(range(k * m))
    for j in range(k):
        img[block * k + j] = block * k + p[j]
    return tuple(img)


def wreath_product(k: int, H: PermGroup) -> WreathFrame:
    if k < 2:
        raise ValueError("block size must be at least 2")
    if not H.is_transitive():
        raise ValueError("top group must be transitive")
    m = H.degree
    n = k * m
    gens = [local_perm(k, m, 0, tuple(list(range(1, k)) + [0]))]
    if k > 2:
        gens.append(local_perm(k, m, 0, from_cycles(k, [(0, 1)])))
    gens += [lift_top(k, h) for h in H.generators]
    W = PermGroup(n, gens)
    assert W.order == math.factorial(k) ** m * H.order
    return WreathFrame(k, H, W, BlockSystem.canonical(n, k))


class CatalogueStore(Protocol):
    def identify(self, G: PermGroup) -> int: ...


def signature(G: PermGroup, catalogues) -> Signature:
    """Least (k, index of block action) over the minimal block systems.

    ``catalogues`` maps a degree to an object with ``identify(group) -> index``.
    """
    systems = minimal_block_systems(G)
    if not systems:
        raise ValueError("signature is undefined for primitive groups")
    best = None
    for B in systems:
        m = len(B.blocks)
        if m not in catalogues:
            raise KeyError(f"missing catalogue of degree {m}")
        idx = catalogues[m].identify(block_action(G, B))
        cand = (B.block_size, idx)
        if best is None or cand < best:
            best = cand
    return Signature(*best)


def system_signature(G: PermGroup, B: BlockSystem, catalogues) -> Signature:
    m = len(B.blocks)
    return Signature(B.block_size, catalogues[m].identify(block_action(G, B)))
