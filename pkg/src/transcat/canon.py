"""Canonical forms of (di)graphs by partition refinement and backtracking.

Vertex colours are refined until equitable; the search individualizes each
vertex of the first smallest non-singleton cell in turn.  Every discrete
partition gives a relabelled adjacency matrix and the least one (as bytes) is
the canonical form.  A leaf equal to the first or best leaf yields an
automorphism; the search then returns to the node where the two paths split,
and children lying in one orbit of the automorphisms found so far that fix
the current path are explored only once.
"""

from __future__ import annotations

import itertools
from typing import Optional

import numpy as np


def _relabel(keys: np.ndarray) -> np.ndarray:
    """Dense colour ranks of the rows of ``keys`` in lexicographic order."""
    _, inv = np.unique(keys, axis=0, return_inverse=True)
    return inv.reshape(-1).astype(np.int64)


def refine(A: np.ndarray, colors: np.ndarray) -> np.ndarray:
    """Coarsest equitable refinement; colour order depends only on the input colours."""
    n = len(colors)
    directed = not np.array_equal(A, A.T)
    Ai = A.astype(np.int64)
    colors = _relabel(colors.reshape(-1, 1))
    while True:
        k = int(colors.max()) + 1
        onehot = np.zeros((n, k), dtype=np.int64)
        onehot[np.arange(n), colors] = 1
        parts = [colors.reshape(-1, 1), Ai @ onehot]
        if directed:
            parts.append(Ai.T @ onehot)
        new = _relabel(np.concatenate(parts, axis=1))
        if new.max() == colors.max():
            return new
        colors = new


def _individualize(colors: np.ndarray, v: int) -> np.ndarray:
    c = colors * 2 + 1
    c[v] -= 1
    return c


def _certificate(A: np.ndarray, colors: np.ndarray) -> bytes:
    inv = np.argsort(colors)  # position -> vertex
    return np.packbits(A[np.ix_(inv, inv)]).tobytes()


class _Search:
    def __init__(self, A: np.ndarray):
        self.A = A
        self.n = len(A)
        self.first: Optional[tuple] = None
        self.best: Optional[tuple] = None
        self.autos: list[np.ndarray] = []

    def run(self, colors: np.ndarray):
        self._node(refine(self.A, colors), [])

    def _stabilizer_orbits(self, path: list[int], cell: np.ndarray) -> dict[int, int]:
        """Orbit label of each vertex of ``cell`` under found automorphisms fixing ``path``."""
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x
        for g in self.autos:
            if all(g[v] == v for v in path):
                for x in range(self.n):
                    a, b = find(x), find(int(g[x]))
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return {int(v): find(int(v)) for v in cell}

    def _node(self, colors: np.ndarray, path: list[int]) -> Optional[int]:
        """Explore a node; a returned depth asks callers to unwind to that depth."""
        k = int(colors.max()) + 1
        if k == self.n:
            return self._leaf(colors, path)
        sizes = np.bincount(colors, minlength=k)
        target = int(np.argmin(np.where(sizes > 1, sizes, self.n + 1)))
        cell = np.nonzero(colors == target)[0]
        done: set = set()
        depth = len(path)
        for v in cell:
            orb = self._stabilizer_orbits(path, cell)
            if orb[int(v)] in done:
                continue
            done.add(orb[int(v)])
            r = self._node(refine(self.A, _individualize(colors, int(v))), path + [int(v)])
            if r is not None and r < depth:
                return r
        return None

    def _leaf(self, colors: np.ndarray, path: list[int]) -> Optional[int]:
        cert = _certificate(self.A, colors)
        lab = np.argsort(colors)  # position -> vertex
        if self.first is None:
            self.first = (cert, lab, path)
            self.best = (cert, lab, path)
            return None
        for ref_cert, ref_lab, ref_path in (self.first, self.best):
            if cert == ref_cert:
                g = np.empty(self.n, dtype=np.int64)
                g[ref_lab] = lab  # vertex at position i of the reference leaf -> vertex at position i here
                if not np.array_equal(g, np.arange(self.n)):
                    self.autos.append(g)
                # the subtree below the divergence point is an image of one already seen
                c = 0
                while c < len(path) and c < len(ref_path) and path[c] == ref_path[c]:
                    c += 1
                return c
        if cert < self.best[0]:
            self.best = (cert, lab, path)
        return None


def canonical_labeling(A: np.ndarray, colors: Optional[np.ndarray] = None) -> np.ndarray:
    """Order of vertices (position -> vertex) giving the canonical form."""
    A = np.asarray(A, dtype=np.uint8)
    n = len(A)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    if colors is None:
        colors = np.zeros(n, dtype=np.int64)
    s = _Search(A)
    s.run(np.asarray(colors, dtype=np.int64))
    return s.best[1]


def canonical_form(A: np.ndarray, colors: Optional[np.ndarray] = None) -> bytes:
    """Isomorphism-invariant byte string of a (di)graph given by its adjacency matrix."""
    A = np.asarray(A, dtype=np.uint8)
    n = len(A)
    lab = canonical_labeling(A, colors)
    return n.to_bytes(2, "big") + np.packbits(A[np.ix_(lab, lab)]).tobytes()


def automorphism_generators(A: np.ndarray) -> list[tuple]:
    """Automorphisms met during canonical labelling (not necessarily generating)."""
    A = np.asarray(A, dtype=np.uint8)
    s = _Search(A)
    s.run(np.zeros(len(A), dtype=np.int64))
    return [tuple(int(x) for x in g) for g in s.autos]


def brute_isomorphic(A: np.ndarray, B: np.ndarray) -> bool:
    """Oracle: try every bijection (small n only)."""
    n = len(A)
    if n != len(B):
        return False
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    if sorted(A.sum(axis=1)) != sorted(B.sum(axis=1)):
        return False
    for p in itertools.permutations(range(n)):
        p = np.array(p)
        if np.array_equal(A[np.ix_(p, p)], B):
            return True
    return False


# ------------------------------------------------------------------ graph6

def _n_code(n: int) -> str:
    if n < 63:
        return chr(63 + n)
    if n < 258048:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    raise ValueError("graph too large for this encoder")


def _bits_to_text(bits: list[int]) -> str:
    bits = bits + [0] * (-len(bits) % 6)
    return "".join(chr(63 + int("".join(map(str, bits[i:i + 6])), 2)) for i in range(0, len(bits), 6))


def to_graph6(A: np.ndarray) -> str:
    n = len(A)
    bits = [int(A[i, j]) for j in range(1, n) for i in range(j)]
    return _n_code(n) + _bits_to_text(bits)


def to_digraph6(A: np.ndarray) -> str:
    n = len(A)
    bits = [int(A[i, j]) for i in range(n) for j in range(n)]
    return "&" + _n_code(n) + _bits_to_text(bits)


def _decode(text: str) -> tuple[int, list[int]]:
    vals = [ord(c) - 63 for c in text]
    if vals[0] == 63:
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        rest = vals[4:]
    else:
        n = vals[0]
        rest = vals[1:]
    bits = []
    for v in rest:
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    return n, bits


def from_graph6(text: str) -> np.ndarray:
    text = text.strip()
    if text.startswith(">>graph6<<"):
        text = text[10:]
    if text.startswith("&"):
        n, bits = _decode(text[1:])
        return np.array(bits[:n * n], dtype=np.uint8).reshape(n, n)
    n, bits = _decode(text)
    A = np.zeros((n, n), dtype=np.uint8)
    t = 0
    for j in range(1, n):
        for i in range(j):
            A[i, j] = A[j, i] = bits[t]
            t += 1
    return A
