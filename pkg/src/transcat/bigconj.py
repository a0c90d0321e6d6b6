"""Conjugacy of groups too large for element enumeration.

Only groups with a system of two blocks are handled.  Once the two systems
are aligned, a conjugator may be taken to fix both blocks (compose with a
swapping element of the target), so it is a pair (cX, cY).  cX carries the
projection on X of one block stabilizer to the other and matters only modulo
that projection.  cY carries the projections on Y and matters only modulo
the part of the target's block stabilizer that is trivial on X.  Both
transporters are found by brute force in Sym(k), so this applies to block
sizes up to 8.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .blocks import all_block_systems, block_action_images
from .perm import BudgetExceeded, Perm, PermGroup, inv, kernel_of_action, mul, symmetric_group

TRANSPORTER_DEGREE_BOUND = 8


def _restrict(g: Perm, pts: tuple) -> Perm:
    pos = {p: i for i, p in enumerate(pts)}
    return tuple(pos[g[p]] for p in pts)


def _conj(g: Perm, c: Perm) -> Perm:
    r = [0] * len(g)
    for i, x in enumerate(g):
        r[c[i]] = c[x]
    return tuple(r)


def transporter(A: PermGroup, B: PermGroup) -> np.ndarray:
    """Every c in Sym(k) with A^c = B (as rows)."""
    from .conjugacy import conjugating_elements
    k = A.degree
    if k > TRANSPORTER_DEGREE_BOUND:
        raise BudgetExceeded("transporter in Sym(k)", k, TRANSPORTER_DEGREE_BOUND)
    if A.order != B.order:
        return np.zeros((0, k), dtype=np.int16)
    E = symmetric_group(k).elements_array()
    return E[conjugating_elements(A, B, E)]


def _coset_reps(C: np.ndarray, H: PermGroup) -> list[Perm]:
    """Representatives of the right H-cosets cH among the rows of C (a union of them)."""
    left = np.ones(len(C), dtype=bool)
    reps = []
    Ci = C.astype(np.int64)
    for i in range(len(C)):
        if not left[i]:
            continue
        c = tuple(int(v) for v in C[i])
        reps.append(c)
        ci = np.asarray(inv(c), dtype=np.int64)
        # x lies in cH iff c^-1 x lies in H; mul(c^-1, x)[j] = x[c^-1[j]]
        left &= H.rank(Ci[:, ci]) < 0
    return reps


def _two_block_systems(G: PermGroup):
    return [B for B in all_block_systems(G) if len(B.blocks) == 2]


def _embed(cx: Perm, cy: Perm, X: tuple, Y: tuple, n: int) -> Perm:
    out = [0] * n
    for i, p in enumerate(X):
        out[p] = X[cx[i]]
    for i, p in enumerate(Y):
        out[p] = Y[cy[i]]
    return tuple(out)


def conjugate_large(G1: PermGroup, G2: PermGroup, ambient: Optional[PermGroup] = None) -> Optional[Perm]:
    if ambient is not None:
        raise BudgetExceeded("restricted conjugacy of large groups", ambient.order, 0)
    S1 = _two_block_systems(G1)
    S2 = _two_block_systems(G2)
    if not S1 or not S2:
        raise BudgetExceeded("conjugacy of large groups without a two-block system", G1.order, 0)
    if len(S1) != len(S2):
        return None
    n = G1.degree
    B1 = S1[0]
    for B2 in S2:
        # c0 maps the blocks of B1 onto those of B2 in order
        c0 = [0] * n
        for b1, b2 in zip(B1.blocks, B2.blocks):
            for p, q in zip(b1, b2):
                c0[p] = q
        c0 = tuple(c0)
        H1 = PermGroup(n, [_conj(g, c0) for g in G1.generators])
        c = _aligned(H1, G2, B2)
        if c is not None:
            return mul(c0, c)
    return None


def _aligned(H1: PermGroup, G2: PermGroup, B) -> Optional[Perm]:
    """Conjugator fixing both blocks of B, for groups both preserving B."""
    n = H1.degree
    X, Y = B.blocks
    K1 = kernel_of_action(H1, block_action_images(H1.generators, B))
    K2 = kernel_of_action(G2, block_action_images(G2.generators, B))
    if K1.order != K2.order:
        return None
    A1x = PermGroup(len(X), [_restrict(g, X) for g in K1.generators])
    A2x = PermGroup(len(X), [_restrict(g, X) for g in K2.generators])
    A1y = PermGroup(len(Y), [_restrict(g, Y) for g in K1.generators])
    A2y = PermGroup(len(Y), [_restrict(g, Y) for g in K2.generators])
    TX = transporter(A1x, A2x)
    TY = transporter(A1y, A2y)
    if len(TX) == 0 or len(TY) == 0:
        return None
    # elements of K2 trivial on X, restricted to Y
    pairs = [_restrict(g, X) + tuple(len(X) + v for v in _restrict(g, Y)) for g in K2.generators]
    onX = [_restrict(g, X) for g in K2.generators]
    Ny = kernel_of_action(PermGroup(len(X) + len(Y), pairs), onX)
    Ny = PermGroup(len(Y), [tuple(v - len(X) for v in g[len(X):]) for g in Ny.generators])
    for cx in _coset_reps(TX, A2x):
        for cy in _coset_reps(TY, Ny):
            c = _embed(cx, cy, X, Y, n)
            if all(G2.contains(_conj(g, c)) for g in H1.generators):
                return c
    return None
