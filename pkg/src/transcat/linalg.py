"""Linear algebra over a prime field F_p with numpy integer arrays."""

from __future__ import annotations

import itertools

import numpy as np


def rref(A: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of A over F_p and its pivot columns."""
    A = np.array(A, dtype=np.int64) % p
    if A.ndim != 2 or A.size == 0:
        return A.reshape(0, A.shape[-1] if A.ndim == 2 else 0), []
    rows, cols = A.shape
    inv = [0] + [pow(x, p - 2, p) for x in range(1, p)]
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + nz[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = (A[r] * inv[int(A[r, c])]) % p
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            A[hit] = (A[hit] - np.outer(col[hit], A[r])) % p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def row_space(A: np.ndarray, p: int, width: int | None = None) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    if A.size == 0:
        return np.zeros((0, width if width is not None else A.shape[-1]), dtype=np.int64)
    return rref(A, p)[0]


def rank(A: np.ndarray, p: int) -> int:
    return len(row_space(A, p))


def nullspace(A: np.ndarray, p: int) -> np.ndarray:
    """Basis (rows) of {x : A x = 0}."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    R, piv = rref(A, p) if A.shape[0] else (np.zeros((0, cols), dtype=np.int64), [])
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        x = np.zeros(cols, dtype=np.int64)
        x[f] = 1
        for i, c in enumerate(piv):
            x[c] = (-R[i, f]) % p
        basis.append(x)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)


def solve_affine(A: np.ndarray, b: np.ndarray, p: int):
    """One solution of A x = b over F_p, or None if inconsistent."""
    A = np.asarray(A, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    cols = A.shape[1]
    if A.shape[0] == 0:
        return np.zeros(cols, dtype=np.int64)
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, piv = rref(aug, p)
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, cols]
    return x


def key(B: np.ndarray) -> tuple:
    """Hashable canonical form of a row space given in rref."""
    return tuple(map(tuple, np.asarray(B, dtype=np.int64).tolist()))


def span_key(A: np.ndarray, p: int, width: int) -> tuple:
    return key(row_space(A, p, width))


def contains(B: np.ndarray, v: np.ndarray, p: int) -> bool:
    if len(B) == 0:
        return not np.any(np.asarray(v) % p)
    return rank(np.vstack([B, v]), p) == len(B)


def is_subspace(A: np.ndarray, B: np.ndarray, p: int) -> bool:
    """Row space of A inside row space of B."""
    if len(A) == 0:
        return True
    if len(B) == 0:
        return not np.any(A % p)
    return rank(np.vstack([B, A]), p) == rank(B, p)


def complement_basis(U: np.ndarray, V: np.ndarray, p: int) -> np.ndarray:
    """Rows of V completing a basis of U to a basis of V (U inside V)."""
    cur = np.asarray(U, dtype=np.int64).reshape(-1, V.shape[1])
    r = rank(cur, p) if len(cur) else 0
    out = []
    for v in V:
        test = np.vstack([cur, v]) if len(cur) else v.reshape(1, -1)
        rr = rank(test, p)
        if rr > r:
            cur, r = test, rr
            out.append(v)
    return np.array(out, dtype=np.int64).reshape(len(out), V.shape[1])


def quotient_map(U: np.ndarray, V: np.ndarray, p: int) -> np.ndarray:
    """Matrix P (rows = dim V/U) with P v = coordinates of v + U along a complement.

    Defined on vectors of V; P u = 0 for u in U.
    """
    dim = V.shape[1]
    W = complement_basis(U, V, p)
    Ub = np.asarray(U, dtype=np.int64).reshape(-1, dim)
    basis = np.vstack([Ub, W]) if len(Ub) else W
    # extend to a basis of the ambient space
    ext = complement_basis(basis, np.eye(dim, dtype=np.int64), p)
    full = np.vstack([basis, ext]) if len(ext) else basis
    Finv = inverse(full.T, p)  # coordinates of v w.r.t. rows of full
    return Finv[len(Ub):len(Ub) + len(W)]


def inverse(A: np.ndarray, p: int) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64) % p
    n = A.shape[0]
    R, piv = rref(np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]


def all_vectors(B: np.ndarray, p: int) -> np.ndarray:
    """Every vector of the row space of B."""
    d = len(B)
    if d == 0:
        return np.zeros((1, B.shape[1]), dtype=np.int64)
    coeffs = np.array(list(itertools.product(range(p), repeat=d)), dtype=np.int64)
    return (coeffs @ B) % p


def invariant_subspaces(mats: list[np.ndarray], p: int, dim: int,
                        within: np.ndarray | None = None, limit: int = 200000) -> list[np.ndarray]:
    """All subspaces of ``within`` (default F_p^dim) invariant under v -> v M for every M.

    Vectors are rows and matrices act on the right.  Every invariant subspace
    is a sum of cyclic ones, so the cyclic submodules are closed under sums.
    """
    if within is None:
        within = np.eye(dim, dtype=np.int64)
    W = row_space(within, p, dim)
    zero = np.zeros((0, dim), dtype=np.int64)
    found: dict[tuple, np.ndarray] = {key(zero): zero}
    cyclic: dict[tuple, np.ndarray] = {}
    seen_lines: set = set()
    for v in all_vectors(W, p)[1:]:
        # one vector per line suffices
        nz = np.nonzero(v)[0][0]
        vn = (v * pow(int(v[nz]), p - 2, p)) % p
        t = tuple(vn.tolist())
        if t in seen_lines:
            continue
        seen_lines.add(t)
        S = spin(vn.reshape(1, -1), mats, p)
        k = key(S)
        if k not in cyclic:
            cyclic[k] = S
    found.update(cyclic)
    frontier = list(cyclic.values())
    gens = list(cyclic.values())
    while frontier:
        nxt = []
        for S in frontier:
            for C in gens:
                if is_subspace(C, S, p):
                    continue
                T = row_space(np.vstack([S, C]), p, dim)
                k = key(T)
                if k not in found:
                    found[k] = T
                    nxt.append(T)
                    if len(found) > limit:
                        raise RuntimeError("too many invariant subspaces")
        frontier = nxt
    return sorted(found.values(), key=lambda B: (len(B), key(B)))


def spin(B: np.ndarray, mats: list[np.ndarray], p: int) -> np.ndarray:
    """Smallest invariant subspace containing the rows of B."""
    dim = B.shape[1]
    S = row_space(B, p, dim)
    while True:
        imgs = [S] + [(S @ M) % p for M in mats]
        T = row_space(np.vstack(imgs), p, dim)
        if len(T) == len(S):
            return T
        S = T
