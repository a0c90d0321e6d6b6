"""Elementary abelian layers of Sym(k) wr Sym(m) and complements modulo 1-coboundaries.

For k in {2, 3, 4} the group Sym(k) has a normal series with elementary
abelian factors:

    k = 2:  S2 > 1
    k = 3:  S3 > A3 > 1              (factors C2, C3)
    k = 4:  S4 > A4 > V4 > 1         (factors C2, C3, C2^2)

Taking m-th powers gives a series B_0 > B_1 > ... of the base group of the
wreath product by subgroups that are normal in the whole wreath product.  Each
factor B_j / B_{j+1} is an F_p-space of dimension d*m with one coordinate block
per block of the canonical block system.

The central routine, ``complement_classes``, handles the following situation.
X is a permutation group, N a normal subgroup of X with X ∩ B_j ≤ N ≤ B_j up to
the next layer, so that V = N B_{j+1}/B_{j+1} is an F_p[X]-module; U is a
submodule.  It returns one subgroup per conjugacy class (under N) of
subgroups C with C N = X and C ∩ N = Ũ, the preimage of U.  These are found by
walking the Cayley graph of X/N: every non-tree edge gives a linear equation
for the values of a 1-cocycle on the generators, and coboundaries together
with U are factored out.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import linalg
from .perm import Perm, PermGroup, identity, inv, kernel_of_action, mul


# ------------------------------------------------------------------ local data

@dataclass(frozen=True)
class LocalLayer:
    """One factor L_j / L_{j+1} of the local series of Sym(k)."""
    k: int
    p: int
    basis: tuple  # local perms in L_j whose images form a basis of the factor
    coords: dict  # local perm in L_j -> coordinate tuple (kernel L_{j+1})
    lower: frozenset  # elements of L_{j+1}

    @property
    def d(self) -> int:
        return len(self.basis)


_CHAINS = {
    2: [(2, [(1, 0)])],
    3: [(2, [(1, 0, 2)]), (3, [(1, 2, 0)])],
    4: [(2, [(1, 0, 2, 3)]), (3, [(1, 2, 0, 3)]), (2, [(1, 0, 3, 2), (2, 3, 0, 1)])],
}


def _closure(k: int, gens) -> set:
    e = identity(k)
    out = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


@lru_cache(maxsize=None)
def local_chain(k: int) -> tuple[LocalLayer, ...]:
    """Factors of the local series of Sym(k), top first; only k in {2, 3, 4}."""
    if k not in _CHAINS:
        raise ValueError(f"no elementary abelian series implemented for block size {k}")
    spec = _CHAINS[k]
    layers = []
    for j, (p, basis) in enumerate(spec):
        lower_gens = [b for _, bs in spec[j + 1:] for b in bs]
        lower = _closure(k, lower_gens)
        coords = {}
        for exps in itertools.product(range(p), repeat=len(basis)):
            x = identity(k)
            for b, e in zip(basis, exps):
                for _ in range(e):
                    x = mul(x, b)
            for l in lower:
                coords[mul(x, l)] = exps
        layers.append(LocalLayer(k, p, tuple(basis), coords, frozenset(lower)))
    return tuple(layers)


def local_series_groups(k: int) -> list[set]:
    """L_0 = Sym(k), L_1, ..., L_r = 1 as sets of local perms."""
    chain = local_chain(k)
    out = [set(_closure(k, [b for L in chain[j:] for b in L.basis])) for j in range(len(chain))]
    out.append({identity(k)})
    return out


# ------------------------------------------------------------- block geometry

def local_restriction(k: int, g: Perm, block: int) -> tuple[int, Perm]:
    """(image block, local perm) of g on the given canonical block."""
    base = block * k
    tgt = g[base] // k
    return tgt, tuple(g[base + x] - tgt * k for x in range(k))


def place_local(k: int, m: int, block: int, lp: Sequence[int]) -> Perm:
    img = list(range(k * m))
    for x in range(k):
        img[block * k + x] = block * k + lp[x]
    return tuple(img)


@lru_cache(maxsize=None)
def _coset_table(k: int, j: int):
    """Left cosets x L_j of Sym(k): list of coset sets and lookup perm -> index."""
    L = local_series_groups(k)[j]
    full = _closure(k, [tuple(list(range(1, k)) + [0]), tuple([1, 0] + list(range(2, k)))])
    cosets = []
    index = {}
    for x in sorted(full):
        if x in index:
            continue
        c = {mul(l, x) for l in L}  # mul(l, x): apply l then x, i.e. the coset x o L
        for y in c:
            index[y] = len(cosets)
        cosets.append(sorted(c))
    return cosets, index


def quotient_action(k: int, m: int, g: Perm, j: int) -> Perm:
    """Image of g in Sym(k) wr Sym(m) acting on m copies of Sym(k)/L_j; kernel L_j^m."""
    if j == 0:
        return tuple(g[i * k] // k for i in range(m))
    cosets, index = _coset_table(k, j)
    c = len(cosets)
    img = [0] * (m * c)
    for i in range(m):
        tgt, lp = local_restriction(k, g, i)
        for ci, cs in enumerate(cosets):
            x = cs[0]
            img[i * c + ci] = tgt * c + index[mul(x, lp)]
    return tuple(img)


class Layer:
    """The factor B_j / B_{j+1} of the base group as an F_p-space of dimension d*m."""

    def __init__(self, k: int, m: int, j: int):
        self.k, self.m, self.j = k, m, j
        self.local = local_chain(k)[j]
        self.p = self.local.p
        self.d = self.local.d
        self.dim = self.d * m
        self.basis_perms = [place_local(k, m, i, b) for i in range(m) for b in self.local.basis]

    def coords(self, g: Perm) -> np.ndarray:
        """Coordinates of an element of B_j (must fix every block)."""
        v = []
        for i in range(self.m):
            tgt, lp = local_restriction(self.k, g, i)
            if tgt != i:
                raise ValueError("element moves blocks")
            v.extend(self.local.coords[lp])
        return np.array(v, dtype=np.int64)

    def realize(self, v: Sequence[int]) -> Perm:
        """A product of basis perms with the given coordinates."""
        x = identity(self.k * self.m)
        for b, e in zip(self.basis_perms, v):
            for _ in range(int(e) % self.p):
                x = mul(x, b)
        return x

    def action_matrix(self, a: Perm) -> np.ndarray:
        """Matrix A with phi_a(v) = v A, phi_a(v) = a v a^-1 (a applied first)."""
        ai = inv(a)
        rows = [self.coords(mul(mul(a, b), ai)) for b in self.basis_perms]
        return np.array(rows, dtype=np.int64).reshape(self.dim, self.dim)


# ------------------------------------------------------------- complements

@dataclass
class SectionData:
    """The section N/(N ∩ B_{j+1}) of a group X, seen inside the layer."""
    layer: Layer
    V: np.ndarray  # basis (rref) of the image of N in the layer
    V_elems: list  # elements of N realizing the rows of V
    lower_gens: list  # generators of N ∩ B_{j+1}


def section(layer: Layer, N_gens: Sequence[Perm], lower_gens: Sequence[Perm]) -> SectionData:
    """Echelonize the images of N's generators, carrying group elements along."""
    p = layer.p
    rows = [(layer.coords(g) % p, g) for g in N_gens]
    basis: list[tuple[np.ndarray, Perm]] = []
    piv_cols: list[int] = []
    n = layer.k * layer.m
    extra_lower = []
    for v, g in rows:
        v = v.copy()
        for (b, h), c in zip(basis, piv_cols):
            if v[c]:
                e = int(v[c])
                v = (v - e * b) % p
                g = mul(g, _pw(inv(h), e, n))
        nz = np.nonzero(v)[0]
        if len(nz) == 0:
            if g != identity(n):
                extra_lower.append(g)
            continue
        c = int(nz[0])
        s = pow(int(v[c]), p - 2, p)
        v = (v * s) % p
        g = _pw(g, s, n)
        # keep earlier rows reduced
        new_basis = []
        for (b, h) in basis:
            if b[c]:
                e = int(b[c])
                b = (b - e * v) % p
                h = mul(h, _pw(inv(g), e, n))
            new_basis.append((b, h))
        basis = new_basis + [(v, g)]
        piv_cols.append(c)
    order = sorted(range(len(basis)), key=lambda i: piv_cols[i])
    V = np.array([basis[i][0] for i in order], dtype=np.int64).reshape(len(basis), layer.dim)
    elems = [basis[i][1] for i in order]
    return SectionData(layer, V, elems, list(lower_gens) + extra_lower)


def _pw(g: Perm, e: int, n: int) -> Perm:
    x = identity(n)
    for _ in range(e):
        x = mul(x, g)
    return x


def realize_in_section(sd: SectionData, v: np.ndarray) -> Perm:
    """An element of N with layer coordinates v (v in the row space of sd.V)."""
    p = sd.layer.p
    n = sd.layer.k * sd.layer.m
    x = identity(n)
    v = np.asarray(v, dtype=np.int64) % p
    for b, h in zip(sd.V, sd.V_elems):
        c = int(np.nonzero(b)[0][0])
        e = int(v[c])
        if e:
            v = (v - e * b) % p
            x = mul(x, _pw(h, e, n))
    if np.any(v):
        raise ValueError("vector outside the section")
    return x


def module_matrices(layer: Layer, gens: Sequence[Perm]) -> list[np.ndarray]:
    return [layer.action_matrix(g) % layer.p for g in gens]


def complement_classes(sd: SectionData, lifts: Sequence[Perm], images: Sequence[Perm],
                       U: np.ndarray, expected_order: int | None = None,
                       max_classes: int | None = None) -> list[PermGroup]:
    """Subgroups C with C N = <N, lifts> and C ∩ N = Ũ, one per N-class.

    ``images`` are the images of ``lifts`` in a faithful permutation
    representation of X/N; X/N must be small enough to enumerate.
    Returns an empty list when no complement exists.
    """
    layer = sd.layer
    p, D = layer.p, layer.dim
    V = sd.V
    dV = len(V)
    n = layer.k * layer.m
    U = np.asarray(U, dtype=np.int64).reshape(-1, D)
    P = linalg.quotient_map(U, V, p) if dV else np.zeros((0, D), dtype=np.int64)
    q = len(P)
    pairs = [(l, im) for l, im in zip(lifts, images) if im != identity(len(im))]
    r = len(pairs)
    U_elems = [realize_in_section(sd, u) for u in U]
    base_gens = list(sd.lower_gens) + U_elems
    if q == 0 or r == 0:
        # nothing to choose: the unique candidate is <Ũ, lifts>
        G = PermGroup(n, base_gens + [l for l, _ in pairs])
        return [G] if expected_order is None or G.order == expected_order else []
    nvar = r * dV
    A_gen = [layer.action_matrix(l) % p for l, _ in pairs]
    sel = []
    for s in range(r):
        S = np.zeros((nvar, D), dtype=np.int64)
        S[s * dV:(s + 1) * dV] = V
        sel.append(S)
    deg_img = len(pairs[0][1])
    e_img = identity(deg_img)
    # BFS over X/N
    info = {e_img: (identity(n), np.eye(D, dtype=np.int64), np.zeros((nvar, D), dtype=np.int64),
                    np.zeros(D, dtype=np.int64))}
    queue = [e_img]
    eq_rows = []
    eq_rhs = []
    qi = 0
    while qi < len(queue):
        h = queue[qi]
        qi += 1
        lift_h, A_h, E_h, c_h = info[h]
        for s, (ls, ims) in enumerate(pairs):
            g = mul(h, ims)
            E_new = (E_h + sel[s] @ A_h) % p
            if g not in info:
                info[g] = (mul(lift_h, ls), (A_gen[s] @ A_h) % p, E_new, c_h)
                queue.append(g)
                continue
            lift_g, _, E_g, c_g = info[g]
            delta = mul(mul(lift_h, ls), inv(lift_g))
            dv = layer.coords(delta)
            lin = ((E_new - E_g) @ P.T) % p  # nvar x q
            const = ((c_h + dv - c_g) @ P.T) % p
            eq_rows.append(lin.T)
            eq_rhs.append((-const) % p)
    order_quot = len(info)
    if eq_rows:
        Aeq = np.vstack(eq_rows)
        beq = np.concatenate(eq_rhs)
        Aeq, beq = _compress(Aeq, beq, p)
    else:
        Aeq = np.zeros((0, nvar), dtype=np.int64)
        beq = np.zeros(0, dtype=np.int64)
    x0 = linalg.solve_affine(Aeq, beq, p)
    if x0 is None:
        return []
    Z = linalg.nullspace(Aeq, p) if len(Aeq) else np.eye(nvar, dtype=np.int64)
    # coboundaries and U-directions, in the variables t
    CV = linalg.quotient_map(np.zeros((0, D), dtype=np.int64), V, p)  # D -> coords in V
    triv = []
    for w in V:
        row = np.concatenate([((w @ A_gen[s] - w) % p) @ CV.T % p for s in range(r)])
        triv.append(row)
    Uc = (U @ CV.T) % p if len(U) else np.zeros((0, dV), dtype=np.int64)
    for s in range(r):
        for u in Uc:
            row = np.zeros(nvar, dtype=np.int64)
            row[s * dV:(s + 1) * dV] = u
            triv.append(row)
    T = linalg.row_space(np.array(triv, dtype=np.int64).reshape(-1, nvar), p, nvar)
    reps = linalg.complement_basis(T, linalg.row_space(np.vstack([T, Z]) if len(T) else Z, p, nvar), p)
    if max_classes is not None and p ** len(reps) > max_classes:
        raise RuntimeError(f"{p ** len(reps)} complement classes exceed the limit")
    target = expected_order
    if target is None:
        target = order_quot * (p ** len(U)) * PermGroup(n, sd.lower_gens).order
    out = []
    for coeffs in itertools.product(range(p), repeat=len(reps)):
        t = x0.copy()
        for c, z in zip(coeffs, reps):
            t = (t + c * z) % p
        gens = list(base_gens)
        for s, (ls, _) in enumerate(pairs):
            v = (t[s * dV:(s + 1) * dV] @ V) % p
            gens.append(mul(realize_in_section(sd, v), ls))
        G = PermGroup(n, gens)
        if G.order != target:
            raise AssertionError("complement of wrong order; cocycle system inconsistent")
        out.append(G)
    return out


def _compress(A: np.ndarray, b: np.ndarray, p: int):
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, _ = linalg.rref(aug, p)
    return R[:, :-1], R[:, -1]


# ---------------------------------------------------------------- modules

@dataclass
class LayerModule:
    p: int
    dim: int
    group: PermGroup
    matrices: list

    def is_consistent(self) -> bool:
        """Every action matrix is invertible over F_p."""
        return all(linalg.rank(M, self.p) == self.dim for M in self.matrices)


def kernel_module(Hbar: PermGroup, p: int) -> LayerModule:
    """The permutation module F_p^m of a group of degree m (rows permuted by generators)."""
    if p < 2 or any(p % d == 0 for d in range(2, int(math.isqrt(p)) + 1)):
        raise ValueError("p must be prime")
    m = Hbar.degree
    mats = []
    for h in Hbar.generators:
        M = np.zeros((m, m), dtype=np.int64)
        for i in range(m):
            M[i, h[i]] = 1
        mats.append(M)
    return LayerModule(p, m, Hbar, mats)


SUBMODULE_DIM_BOUND = 16


def submodules(mod: LayerModule) -> list[np.ndarray]:
    """Every invariant subspace, each as an rref basis (rows)."""
    if mod.dim > SUBMODULE_DIM_BOUND:
        raise ValueError(f"module dimension {mod.dim} exceeds {SUBMODULE_DIM_BOUND}")
    return linalg.invariant_subspaces(mod.matrices, mod.p, mod.dim)


def maximal_submodules(mats, p: int, V: np.ndarray) -> list[np.ndarray]:
    """Maximal proper invariant subspaces of the invariant subspace V."""
    dim = V.shape[1]
    subs = linalg.invariant_subspaces(mats, p, dim, within=V)
    proper = [S for S in subs if len(S) < len(V)]
    out = []
    for S in proper:
        if not any(len(T) > len(S) and linalg.is_subspace(S, T, p) for T in proper):
            out.append(S)
    return out
