"""Transitive groups of degree 2k with a system of two blocks of size k.

Such a group G has a block stabilizer G0 of index 2.  After conjugation both
projections of G0 equal one transitive group A of degree k, and Goursat's
lemma describes G0 as {(x, y) : psi(xN) = yN} for a normal subgroup N of A and
an automorphism psi of Q = A/N.  Conjugating by the second coordinate a block
swapping element becomes tau = sigma (1, z) with sigma: i <-> i + k.  Then
tau normalizes G0 and squares into it exactly when psi^2 is conjugation by zN
and psi fixes zN.  Changing psi by an inner automorphism gives a conjugate
group, so psi runs over coset representatives of Inn(Q) in Aut(Q).
"""

from __future__ import annotations

import logging
import random
from typing import Sequence

import numpy as np

from .conjugacy import conjugates_of, unique_up_to_conjugacy
from .perm import Perm, PermGroup, class_reps, identity, mul, normal_closure, perm_order, random_generators

log = logging.getLogger(__name__)


def normal_subgroups(A: PermGroup) -> list[PermGroup]:
    """Every normal subgroup of A, smallest first."""
    found = [PermGroup(A.degree, [])]

    def add(N):
        for M in found:
            if M.order == N.order and all(M.contains(g) for g in N.generators):
                return False
        found.append(N)
        return True
    for rep, _, _ in class_reps(A):
        add(normal_closure(A, [rep]))
    i = 0
    while i < len(found):
        for j in range(i):
            add(PermGroup(A.degree, list(found[i].generators) + list(found[j].generators)))
        i += 1
    return sorted(found, key=lambda N: N.order)


def quotient(A: PermGroup, N: PermGroup) -> tuple[PermGroup, list[Perm]]:
    """A/N acting on the right cosets of N, with the images of A's generators."""
    if N.order == 1:
        return A, list(A.generators)
    E = A.elements_array()
    NE = N.elements_array().astype(np.int64)
    label = np.full(len(E), -1, dtype=np.int64)
    reps = []
    for x in range(len(E)):
        if label[x] >= 0:
            continue
        label[A.rank(E[x][NE])] = len(reps)
        reps.append(x)
    R = E[reps].astype(np.int64)
    images = []
    for g in A.generators:
        ga = np.asarray(g, dtype=np.int64)
        images.append(tuple(int(v) for v in label[A.rank(ga[R])]))
    return PermGroup(len(reps), images), images


def hom_table(src: PermGroup, images: Sequence[Perm], dst: PermGroup) -> np.ndarray:
    """For a homomorphism given on src.generators, the image index of every element."""
    n, d = src.degree, dst.degree
    if src.order == 1:
        return np.zeros(1, dtype=np.int64)
    graph = PermGroup(n + d, [tuple(g) + tuple(n + x for x in h) for g, h in zip(src.generators, images)])
    if graph.order != src.order:
        raise ValueError("generator images do not define a homomorphism")
    D = graph.elements_array().astype(np.int64)
    table = np.empty(src.order, dtype=np.int64)
    table[src.rank(D[:, :n])] = dst.rank(D[:, n:] - n)
    return table


def _as_group(Q: PermGroup, gens: Sequence[Perm]) -> PermGroup:
    return PermGroup(Q.degree, list(gens))


def automorphisms_mod_inner(Q: PermGroup, gens: Sequence[Perm]) -> list[tuple[Perm, ...]]:
    """Images of ``gens`` (generating Q) under one automorphism per coset of Inn(Q)."""
    if Q.order == 1:
        return [tuple(gens)]
    E = Q.elements_array()
    lab = Q.conjugacy_classes()
    sizes = np.bincount(lab)
    orders = np.array([perm_order(tuple(int(v) for v in row)) for row in E])
    ranks = [int(Q.rank(np.asarray(g))[0]) for g in gens]
    firsts = {}
    for i, c in enumerate(lab):
        firsts.setdefault(int(c), i)
    first_choices = [i for c, i in sorted(firsts.items())
                     if orders[i] == orders[ranks[0]] and sizes[c] == sizes[lab[ranks[0]]]]
    prefix_orders = [_as_group(Q, gens[:j + 1]).order for j in range(len(gens))]
    found = []

    def extend(chosen):
        j = len(chosen)
        if j == len(gens):
            imgs = [tuple(int(v) for v in E[i]) for i in chosen]
            if _as_group(Q, imgs).order == Q.order:
                found.append(tuple(imgs))
            return
        r = ranks[j]
        mask = (orders == orders[r]) & (sizes[lab] == sizes[lab[r]])
        for cand in np.nonzero(mask)[0]:
            trial = chosen + [int(cand)]
            pairs = [tuple(int(v) for v in gens[t]) + tuple(Q.degree + int(v) for v in E[trial[t]])
                     for t in range(j + 1)]
            if PermGroup(2 * Q.degree, pairs).order != prefix_orders[j]:
                continue
            extend(trial)
    for c in first_choices:
        extend([c])
    # one representative per Inn(Q)-class of image tuples
    reps = {}
    for imgs in found:
        key = tuple(Q.rank(conjugates_of(b, E)) for b in imgs)
        k = min(zip(*key))
        reps.setdefault(k, imgs)
    return [reps[k] for k in sorted(reps)]


def _pair(x: Perm, y: Perm) -> Perm:
    k = len(x)
    return tuple(x) + tuple(k + v for v in y)


def two_block_groups(A: PermGroup, seed: int = 1) -> list[PermGroup]:
    """Transitive groups of degree 2k whose block stabilizer projects onto A on both blocks."""
    k = A.degree
    sigma = tuple(list(range(k, 2 * k)) + list(range(k)))
    e = identity(k)
    out = []
    EA = A.elements_array()
    for N in normal_subgroups(A):
        Q, pi_imgs = quotient(A, N)
        pi = hom_table(A, pi_imgs, Q)
        lift = np.full(Q.order, -1, dtype=np.int64)
        lift[pi[::-1]] = np.arange(len(pi))[::-1]
        short = random_generators(Q, random.Random(seed))
        EQ = Q.elements_array()
        base = [_pair(n, e) for n in N.generators] + [_pair(e, n) for n in N.generators]
        for psi_imgs in automorphisms_mod_inner(Q, short):
            psi = hom_table(_as_group(Q, short), psi_imgs, Q) if short else np.zeros(1, dtype=np.int64)
            # psi was tabulated on <short> = Q, whose element order may differ from Q's
            if short:
                S = _as_group(Q, short)
                perm_idx = Q.rank(S.elements_array())
                full = np.empty(Q.order, dtype=np.int64)
                full[perm_idx] = psi
                psi = full
            ok = psi[np.arange(Q.order)] == np.arange(Q.order)
            for q in short:
                qi = int(Q.rank(np.asarray(q))[0])
                ok &= Q.rank(conjugates_of(q, EQ)) == psi[psi[qi]]
            gens0 = [_pair(a, tuple(int(v) for v in EA[lift[psi[pi[int(A.rank(np.asarray(a))[0])]]]]))
                     for a in A.generators]
            for z in np.nonzero(ok)[0]:
                zl = tuple(int(v) for v in EA[lift[z]])
                tau = mul(sigma, _pair(e, zl))
                G = PermGroup(2 * k, gens0 + base + [tau])
                assert G.order == 2 * A.order * N.order, "swap element does not normalize the graph"
                out.append(G)
    return out


def goursat_two_blocks(k: int, tops: Sequence[PermGroup], seed: int = 1) -> list[PermGroup]:
    """All transitive groups of degree 2k with a two-block system, up to conjugacy.

    ``tops`` lists the transitive groups of degree k.  The caller filters the
    result by signature; groups with finer block systems are included here.
    """
    if k < 2:
        raise ValueError("block size must be at least 2")
    raw = []
    for A in tops:
        raw.extend(two_block_groups(A, seed))
    log.debug("goursat k=%d: %d raw groups", k, len(raw))
    return unique_up_to_conjugacy(raw)
