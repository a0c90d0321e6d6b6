"""Permutations on 0..n-1 and permutation groups with stabilizer chains.

Permutations are plain tuples of images.  Products are read left to right:
``mul(p, q)`` applies ``p`` first and then ``q``, so ``mul(p, q)[i] == q[p[i]]``.
Conjugation follows the same convention, ``g^c = c^-1 g c``.
"""

from __future__ import annotations

import math
import random
import re
from functools import reduce
from operator import itemgetter
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

Perm = tuple

ELEMENT_BUDGET = 10**7
DEFAULT_SEED = 1


class BudgetExceeded(RuntimeError):
    """Raised when an exhaustive computation would exceed its configured budget."""

    def __init__(self, what: str, size: int, budget: int):
        super().__init__(f"{what}: size {size} exceeds budget {budget}")
        self.size = size
        self.budget = budget


# ---------------------------------------------------------------- permutations

def identity(n: int) -> Perm:
    return tuple(range(n))


def mul(p: Perm, q: Perm) -> Perm:
    if len(p) == 1:
        return (q[p[0]],)
    return itemgetter(*p)(q)


def inv(p: Perm) -> Perm:
    r = [0] * len(p)
    for i, x in enumerate(p):
        r[x] = i
    return tuple(r)


def conj(g: Perm, c: Perm) -> Perm:
    """Return c^-1 g c, i.e. the map c(x) -> c(g(x))."""
    r = [0] * len(g)
    for i, x in enumerate(g):
        r[c[i]] = c[x]
    return tuple(r)


def power(p: Perm, e: int) -> Perm:
    n = len(p)
    if e < 0:
        p, e = inv(p), -e
    result = identity(n)
    base = p
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def is_perm(images: Sequence[int]) -> bool:
    return sorted(images) == list(range(len(images)))


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for i in range(len(p)):
        if seen[i]:
            continue
        c = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            c.append(j)
            seen[j] = True
            j = p[j]
        out.append(tuple(c))
    return out


def cycle_type(p: Perm) -> tuple[int, ...]:
    return tuple(sorted((len(c) for c in cycles(p)), reverse=True))


def perm_order(p: Perm) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), (len(c) for c in cycles(p)), 1)


def support(p: Perm) -> list[int]:
    return [i for i, x in enumerate(p) if x != i]


def from_cycles(n: int, cyc: Iterable[Sequence[int]]) -> Perm:
    r = list(range(n))
    for c in cyc:
        for a, b in zip(c, tuple(c[1:]) + (c[0],)):
            r[a] = b
    if not is_perm(r):
        raise ValueError(f"cycles {cyc!r} do not define a permutation of {n} points")
    return tuple(r)


def format_perm(p: Perm) -> str:
    return " ".join(map(str, p))


def format_gens(gens: Sequence[Perm]) -> str:
    return "; ".join(format_perm(g) for g in gens)


def parse_perm(text: str, n: int | None = None) -> Perm:
    """Parse an image list ``1 2 3 0`` or 1-based cycle notation ``(1,2,3)(4,5)``."""
    text = text.strip()
    if text.startswith("("):
        cyc = [tuple(int(x) - 1 for x in re.split(r"[,\s]+", c.strip()) if x)
               for c in re.findall(r"\(([^)]*)\)", text)]
        if n is None:
            n = 1 + max((max(c) for c in cyc if c), default=0)
        return from_cycles(n, [c for c in cyc if c])
    images = tuple(int(x) for x in text.split())
    if not is_perm(images):
        raise ValueError(f"not a permutation: {text!r}")
    if n is not None and len(images) != n:
        raise ValueError(f"expected degree {n}, got {len(images)}")
    return images


def parse_gens(text: str, n: int | None = None) -> list[Perm]:
    text = text.strip()
    if not text:
        return []
    return [parse_perm(part, n) for part in text.split(";")]


def format_cycles(p: Perm) -> str:
    """1-based cycle notation, fixed points omitted."""
    cs = [c for c in cycles(p) if len(c) > 1]
    if not cs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cs)


# -------------------------------------------------------------- stabilizer chain

class _Level:
    __slots__ = ("base", "gens", "trans", "tinv", "orbit", "checked")

    def __init__(self, base: int, n: int):
        self.base = base
        self.gens: list[Perm] = []
        ident = identity(n)
        self.trans = {base: ident}
        self.tinv = {base: ident}
        self.orbit = [base]
        self.checked: set = set()

    def extend(self):
        """Grow the orbit after generators were added."""
        i = 0
        while i < len(self.orbit):
            gamma = self.orbit[i]
            for g in self.gens:
                d = g[gamma]
                if d not in self.trans:
                    u = mul(self.trans[gamma], g)
                    self.trans[d] = u
                    self.tinv[d] = inv(u)
                    self.orbit.append(d)
            i += 1


def _sift(levels: list[_Level], g: Perm, start: int = 0):
    for lv in range(start, len(levels)):
        L = levels[lv]
        b = g[L.base]
        t = L.tinv.get(b)
        if t is None:
            return g, lv
        g = mul(g, t)
    return g, len(levels)


def _schreier_sims(n: int, gens: Sequence[Perm], base_hint: Sequence[int]) -> list[_Level]:
    ident = identity(n)
    base = list(dict.fromkeys(base_hint))
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(next(i for i in range(n) if g[i] != i))
    levels = [_Level(b, n) for b in base]
    for i, L in enumerate(levels):
        fixed = base[:i]
        L.gens = [g for g in gens if all(g[b] == b for b in fixed)]
        L.extend()

    i = len(levels) - 1
    while i >= 0:
        L = levels[i]
        restart = False
        pos = 0
        while pos < len(L.orbit) and not restart:
            beta = L.orbit[pos]
            u = L.trans[beta]
            for j, s in enumerate(L.gens):
                if (beta, j) in L.checked:
                    continue
                L.checked.add((beta, j))
                h = mul(mul(u, s), L.tinv[s[beta]])
                if h == ident:
                    continue
                y, lv = _sift(levels, h, i + 1)
                if y == ident:
                    continue
                if lv == len(levels):
                    levels.append(_Level(next(p for p in range(n) if y[p] != p), n))
                for l2 in range(i + 1, lv + 1):
                    levels[l2].gens.append(y)
                    levels[l2].extend()
                i = lv
                restart = True
                break
            pos += 1
        if not restart:
            i -= 1
    return levels


class PermGroup:
    """A permutation group of degree n with a deterministic stabilizer chain."""

    def __init__(self, degree: int, gens: Iterable[Sequence[int]], base_hint: Sequence[int] = ()):
        if degree <= 0:
            raise ValueError("degree must be positive")
        glist = []
        for g in gens:
            g = tuple(int(x) for x in g)
            if len(g) != degree:
                raise ValueError(f"generator of degree {len(g)} in group of degree {degree}")
            if not is_perm(g):
                raise ValueError(f"not a permutation: {g}")
            glist.append(g)
        self.degree = degree
        ident = identity(degree)
        self.generators: tuple[Perm, ...] = tuple(dict.fromkeys(g for g in glist if g != ident))
        self._levels = _schreier_sims(degree, self.generators, base_hint)
        self.order = math.prod(len(L.orbit) for L in self._levels)
        self._cache: dict = {}

    # -- basic queries
    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self.order}, gens={len(self.generators)})"

    @property
    def base(self) -> list[int]:
        return [L.base for L in self._levels]

    @property
    def basic_orbit_sizes(self) -> list[int]:
        return [len(L.orbit) for L in self._levels]

    def strong_generators(self) -> list[Perm]:
        seen = dict.fromkeys(self.generators)
        for L in self._levels:
            for g in L.gens:
                seen.setdefault(g)
        return list(seen)

    def contains(self, g: Sequence[int]) -> bool:
        g = tuple(g)
        if len(g) != self.degree:
            return False
        y, _ = _sift(self._levels, g)
        return y == identity(self.degree)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self.generators)

    def equals(self, other: "PermGroup") -> bool:
        return self.order == other.order and self.is_subgroup_of(other)

    def orbits(self) -> list[list[int]]:
        return orbit_partition(self)

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        out = [point]
        for x in out:
            for g in self.generators:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    out.append(y)
        return sorted(out)

    def random_element(self, rng: random.Random) -> Perm:
        g = identity(self.degree)
        for L in reversed(self._levels):
            g = mul(g, L.trans[L.orbit[rng.randrange(len(L.orbit))]])
        return g

    def stabilizer_chain_subgroup(self, depth: int) -> "PermGroup":
        """The pointwise stabilizer of the first ``depth`` base points."""
        gens = []
        for L in self._levels[depth:depth + 1]:
            gens = L.gens
        return PermGroup(self.degree, gens, self.base[depth:])

    def point_stabilizer(self, point: int) -> "PermGroup":
        G = PermGroup(self.degree, self.generators, [point])
        gens = G._levels[1].gens if len(G._levels) > 1 else []
        return PermGroup(self.degree, gens)

    # -- numpy element machinery
    def _tables(self):
        t = self._cache.get("tables")
        if t is None:
            n = self.degree
            t = []
            for L in self._levels:
                pos = np.full(n, -1, dtype=np.int64)
                for i, p in enumerate(L.orbit):
                    pos[p] = i
                U = np.array([L.trans[p] for p in L.orbit], dtype=np.int16).reshape(len(L.orbit), n)
                Ui = np.array([L.tinv[p] for p in L.orbit], dtype=np.int16).reshape(len(L.orbit), n)
                t.append((L.base, pos, U, Ui))
            self._cache["tables"] = t
        return t

    def elements_array(self, budget: int = ELEMENT_BUDGET) -> np.ndarray:
        """All elements as an (order, n) array, in chain (rank) order."""
        E = self._cache.get("elements")
        if E is not None:
            return E
        if self.order > budget:
            raise BudgetExceeded("element enumeration", self.order, budget)
        E = np.arange(self.degree, dtype=np.int16)[None, :]
        for _, _, U, _ in reversed(self._tables()):
            E = U[:, E].reshape(-1, self.degree)
        self._cache["elements"] = E
        return E

    def rank(self, X: np.ndarray) -> np.ndarray:
        """Indices of the rows of X in ``elements_array``; -1 for non-members."""
        X = np.asarray(X, dtype=np.int16)
        if X.ndim == 1:
            X = X[None, :]
        idx = np.zeros(len(X), dtype=np.int64)
        ok = np.ones(len(X), dtype=bool)
        rows = np.arange(len(X))
        for b, pos, U, Ui in self._tables():
            a = pos[X[:, b]]
            ok &= a >= 0
            a = np.where(a >= 0, a, 0)
            idx = idx * len(U) + a
            X = Ui[a][rows[:, None], X]
        ok &= (X == np.arange(self.degree, dtype=np.int16)).all(axis=1)
        return np.where(ok, idx, -1)

    def element(self, index: int) -> Perm:
        return tuple(int(x) for x in self.elements_array()[index])

    def cycle_type_codes(self, budget: int = ELEMENT_BUDGET) -> np.ndarray:
        c = self._cache.get("ctcodes")
        if c is None:
            c = cycle_type_codes(self.elements_array(budget))
            self._cache["ctcodes"] = c
        return c

    def conjugation_maps(self, by: Sequence[Perm] | None = None, budget: int = ELEMENT_BUDGET):
        """For each g in ``by`` (default: generators) the index map x -> x^g on elements."""
        E = self.elements_array(budget)
        out = []
        for g in (self.generators if by is None else by):
            ga = np.array(g, dtype=np.int16)
            gi = np.array(inv(g), dtype=np.int16)
            C = ga[E[:, gi]]
            out.append(self.rank(C))
        return out

    def conjugacy_classes(self, budget: int = ELEMENT_BUDGET) -> np.ndarray:
        """Class label for every element (labels numbered by first occurrence)."""
        lab = self._cache.get("classes")
        if lab is None:
            N = self.order
            E = self.elements_array(budget)
            maps = self.conjugation_maps(budget=budget)
            if maps:
                src = np.concatenate([np.arange(N)] * len(maps))
                dst = np.concatenate(maps)
                A = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
                _, raw = connected_components(A, directed=True, connection="weak")
            else:
                raw = np.arange(N)
            _, first, inverse = np.unique(raw, return_index=True, return_inverse=True)
            order = np.argsort(first)
            relabel = np.empty_like(order)
            relabel[order] = np.arange(len(order))
            lab = relabel[inverse]
            del E
            self._cache["classes"] = lab
        return lab


def orbit_partition(G: PermGroup) -> list[list[int]]:
    n = G.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G.generators:
        for i in range(n):
            a, b = find(i), find(g[i])
            if a != b:
                parent[max(a, b)] = min(a, b)
    cells: dict[int, list[int]] = {}
    for i in range(n):
        cells.setdefault(find(i), []).append(i)
    return sorted(cells.values())


def build_group(degree: int, gens: Iterable[Sequence[int]]) -> PermGroup:
    return PermGroup(degree, gens)


def cycle_type_codes(E: np.ndarray) -> np.ndarray:
    """Encode the cycle type of every row of E as one integer."""
    N, n = E.shape
    if N == 0:
        return np.zeros(0, dtype=np.int64)
    length = np.zeros((N, n), dtype=np.int16)
    P = E.astype(np.int16)
    ar = np.arange(n, dtype=np.int16)
    for j in range(1, n + 1):
        hit = (P == ar) & (length == 0)
        length[hit] = j
        if j < n:
            P = np.take_along_axis(E, P.astype(np.int64), axis=1).astype(np.int16)
    code = np.zeros(N, dtype=np.int64)
    radix = n + 1
    for ell in range(1, n + 1):
        cnt = (length == ell).sum(axis=1) // ell
        code = code * radix + cnt
    return code


def decode_cycle_type(code: int, n: int) -> tuple[int, ...]:
    radix = n + 1
    counts = []
    for _ in range(n):
        counts.append(code % radix)
        code //= radix
    counts.reverse()  # counts[ell-1] = number of ell-cycles
    out = []
    for ell in range(n, 0, -1):
        out += [ell] * counts[ell - 1]
    return tuple(out)


def order_from_code(code: int, n: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), decode_cycle_type(code, n), 1)


def class_reps(G: PermGroup, budget: int = ELEMENT_BUDGET) -> list[tuple[Perm, int, int]]:
    """One (representative, element order, class size) per conjugacy class."""
    lab = G.conjugacy_classes(budget)
    codes = G.cycle_type_codes(budget)
    _, first, counts = np.unique(lab, return_index=True, return_counts=True)
    out = []
    for f, c in zip(first, counts):
        out.append((G.element(int(f)), order_from_code(int(codes[f]), G.degree), int(c)))
    return out


# ------------------------------------------------------------ subgroup helpers

def normal_closure(G: PermGroup, elements: Iterable[Perm]) -> PermGroup:
    n = G.degree
    ident = identity(n)
    gens = [g for g in elements if g != ident]
    N = PermGroup(n, gens)
    queue = list(gens)
    while queue:
        x = queue.pop()
        for s in G.generators:
            y = conj(x, s)
            if not N.contains(y):
                gens.append(y)
                N = PermGroup(n, gens)
                queue.append(y)
    return N


def commutator(a: Perm, b: Perm) -> Perm:
    return mul(mul(inv(a), inv(b)), mul(a, b))


def derived_subgroup(G: PermGroup) -> PermGroup:
    gs = G.generators
    return normal_closure(G, [commutator(a, b) for i, a in enumerate(gs) for b in gs[i + 1:]])


def kernel_of_action(G: PermGroup, images: Sequence[Perm]) -> PermGroup:
    """Kernel of the homomorphism sending G.generators[i] to images[i]."""
    n = G.degree
    if not images:
        return PermGroup(n, [])
    e = len(images[0])
    gens = [tuple(g) + tuple(n + x for x in h) for g, h in zip(G.generators, images)]
    big = PermGroup(n + e, gens, base_hint=list(range(n, n + e)))
    levels = big._levels
    depth = sum(1 for L in levels if L.base >= n)
    # base points n.. come first; the kernel is the stabilizer at that depth
    kgens = []
    if depth < len(levels):
        kgens = [g[:n] for g in levels[depth].gens]
    K = PermGroup(n, kgens)
    return K


def image_order(G: PermGroup, images: Sequence[Perm]) -> int:
    if not images:
        return 1
    return PermGroup(len(images[0]), images).order


def random_generators(G: PermGroup, rng: random.Random, tries: int = 64) -> list[Perm]:
    """A short random generating set for G (falls back to the given generators)."""
    if G.order == 1:
        return []
    for r in (1, 2, 3):
        for _ in range(tries):
            cand = [G.random_element(rng) for _ in range(r)]
            if PermGroup(G.degree, cand).order == G.order:
                return cand
    return list(G.generators)


def subgroup(G: PermGroup, gens: Iterable[Perm]) -> PermGroup:
    return PermGroup(G.degree, list(gens))


def symmetric_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [])
    gens = [tuple(list(range(1, n)) + [0])]
    if n > 2:
        gens.append(tuple([1, 0] + list(range(2, n))))
    return PermGroup(n, gens)


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup(n, [])
    gens = [from_cycles(n, [(i, i + 1, i + 2)]) for i in range(n - 2)]
    return PermGroup(n, gens)


def cyclic_group(n: int) -> PermGroup:
    return PermGroup(n, [tuple(list(range(1, n)) + [0])] if n > 1 else [])


def is_abelian(G: PermGroup) -> bool:
    gs = G.generators
    return all(mul(a, b) == mul(b, a) for i, a in enumerate(gs) for b in gs[i + 1:])


def sign(p: Perm) -> int:
    return -1 if sum(len(c) - 1 for c in cycles(p)) % 2 else 1
