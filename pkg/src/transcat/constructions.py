"""Concrete permutation groups: finite fields, projective and affine groups,
actions on subsets and on conjugates of a subgroup."""

from __future__ import annotations

import itertools
import random
from typing import Callable, Sequence

from .perm import Perm, PermGroup, from_cycles, mul, perm_order, power

# irreducible polynomials, low coefficient first, monic of degree e
_IRRED = {
    (2, 2): (1, 1),        # x^2 + x + 1
    (2, 3): (1, 1, 0),     # x^3 + x + 1
    (2, 4): (1, 1, 0, 0),  # x^4 + x + 1
    (3, 2): (1, 0),        # x^2 + 1
}


class GF:
    """The field with q = p^e elements; elements are ints 0..q-1 in base p."""

    def __init__(self, q: int):
        p = next(d for d in range(2, q + 1) if q % d == 0)
        e = 0
        t = q
        while t > 1:
            t //= p
            e += 1
        if p ** e != q:
            raise ValueError("q must be a prime power")
        self.p, self.e, self.q = p, e, q
        self._mul = [[0] * q for _ in range(q)]
        self._add = [[0] * q for _ in range(q)]
        for a in range(q):
            for b in range(q):
                self._add[a][b] = self._vec_to_int(
                    [(x + y) % p for x, y in zip(self._int_to_vec(a), self._int_to_vec(b))])
                self._mul[a][b] = self._polymul(a, b)
        self.inv = [0] * q
        for a in range(1, q):
            self.inv[a] = next(b for b in range(1, q) if self._mul[a][b] == 1)
        self.neg = [next(b for b in range(q) if self._add[a][b] == 0) for a in range(q)]
        self.primitive = next(g for g in range(2, q) if self._order(g) == q - 1) if q > 2 else 1

    def _int_to_vec(self, a):
        v = []
        for _ in range(self.e):
            v.append(a % self.p)
            a //= self.p
        return v

    def _vec_to_int(self, v):
        return sum(c * self.p ** i for i, c in enumerate(v))

    def _polymul(self, a, b):
        p, e = self.p, self.e
        x, y = self._int_to_vec(a), self._int_to_vec(b)
        prod = [0] * (2 * e - 1)
        for i, c in enumerate(x):
            for j, d in enumerate(y):
                prod[i + j] = (prod[i + j] + c * d) % p
        if e > 1:
            red = _IRRED[(p, e)]
            for k in range(len(prod) - 1, e - 1, -1):
                c = prod[k]
                if c:
                    prod[k] = 0
                    for i, r in enumerate(red):
                        prod[k - e + i] = (prod[k - e + i] - c * r) % p
        return self._vec_to_int(prod[:e])

    def _order(self, a):
        x, k = a, 1
        while x != 1:
            x = self._mul[x][a]
            k += 1
        return k

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self.neg[b]]

    def mul(self, a, b):
        return self._mul[a][b]

    def pow(self, a, k):
        r = 1
        for _ in range(k):
            r = self._mul[r][a]
        return r

    def frobenius(self, a):
        return self.pow(a, self.p)


# ------------------------------------------------------------- projective line

def _mobius(F: GF, a, b, c, d, frob: int = 0) -> Perm:
    """x -> (a x^s + b)/(c x^s + d) on P^1(F), s = p^frob; point q is infinity."""
    q = F.q
    inf = q
    img = []
    for x in range(q + 1):
        if x == inf:
            y = inf if c == 0 else F.mul(a, F.inv[c])
        else:
            xs = x
            for _ in range(frob):
                xs = F.frobenius(xs)
            num = F.add(F.mul(a, xs), b)
            den = F.add(F.mul(c, xs), d)
            y = inf if den == 0 else F.mul(num, F.inv[den])
        img.append(y)
    return tuple(img)


def psl2(q: int) -> PermGroup:
    F = GF(q)
    w = F.primitive
    gens = [_mobius(F, 1, 1, 0, 1), _mobius(F, F.mul(w, w), 0, 0, 1), _mobius(F, 0, F.neg[1], 1, 0)]
    return PermGroup(q + 1, gens)


def pgl2(q: int) -> PermGroup:
    F = GF(q)
    gens = [_mobius(F, 1, 1, 0, 1), _mobius(F, F.primitive, 0, 0, 1), _mobius(F, 0, 1, 1, 0)]
    return PermGroup(q + 1, gens)


def frobenius_map(q: int) -> Perm:
    F = GF(q)
    return _mobius(F, 1, 0, 0, 1, frob=1)


def diag_map(q: int) -> Perm:
    F = GF(q)
    return _mobius(F, F.primitive, 0, 0, 1)


def pgaml2(q: int) -> PermGroup:
    G = pgl2(q)
    return PermGroup(q + 1, list(G.generators) + [frobenius_map(q)])


# ------------------------------------------------------------ projective space

def _proj_points(F: GF, dim: int) -> list[tuple]:
    pts = []
    for v in itertools.product(range(F.q), repeat=dim):
        if any(v):
            lead = next(x for x in v if x)
            if lead == 1:
                pts.append(v)
    return pts


def _normalize(F: GF, v):
    lead = next(x for x in v if x)
    li = F.inv[lead]
    return tuple(F.mul(li, x) for x in v)


def _matrix_action(F: GF, pts, M) -> Perm:
    index = {p: i for i, p in enumerate(pts)}
    dim = len(M)
    img = []
    for v in pts:
        w = tuple(_dot(F, M[r], v) for r in range(dim))
        img.append(index[_normalize(F, w)])
    return tuple(img)


def _dot(F: GF, row, v):
    s = 0
    for a, b in zip(row, v):
        s = F.add(s, F.mul(a, b))
    return s


def _transvection(dim, i, j, a=1):
    M = [[1 if r == c else 0 for c in range(dim)] for r in range(dim)]
    M[i][j] = a
    return M


def psl_n(dim: int, q: int) -> PermGroup:
    F = GF(q)
    pts = _proj_points(F, dim)
    gens = [_matrix_action(F, pts, _transvection(dim, i, j)) for i in range(dim) for j in range(dim) if i != j]
    if F.e > 1:
        gens += [_matrix_action(F, pts, _transvection(dim, 0, 1, F.primitive))]
    return PermGroup(len(pts), gens)


# ------------------------------------------------------------------ affine groups

def _vectors(p: int, d: int) -> list[tuple]:
    return list(itertools.product(range(p), repeat=d))


def affine_group(p: int, d: int, matrices: Sequence[Sequence[Sequence[int]]],
                 translations: bool = True) -> PermGroup:
    """Translations of F_p^d together with the given linear maps."""
    vecs = _vectors(p, d)
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    if translations:
        for k in range(d):
            e = tuple(1 if i == k else 0 for i in range(d))
            gens.append(tuple(index[tuple((a + b) % p for a, b in zip(v, e))] for v in vecs))
    for M in matrices:
        gens.append(tuple(index[tuple(sum(M[r][c] * v[c] for c in range(d)) % p for r in range(d))]
                          for v in vecs))
    return PermGroup(len(vecs), gens)


def gl_generators(p: int, d: int) -> list:
    mats = [_transvection(d, i, j) for i in range(d) for j in range(d) if i != j]
    if p > 2:
        w = next(g for g in range(2, p) if all(pow(g, k, p) != 1 for k in range(1, p - 1)))
        D = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
        D[0][0] = w
        mats.append(D)
    return mats


def agl(p: int, d: int) -> PermGroup:
    return affine_group(p, d, gl_generators(p, d))


def affine_field_group(q: int, mult_order: int, frobenius: bool = False) -> PermGroup:
    """x -> a x^s + b on F_q with a in the subgroup of order mult_order."""
    F = GF(q)
    gens = [tuple(F.add(x, 1) for x in range(q))]
    if mult_order > 1:
        a = F.pow(F.primitive, (q - 1) // mult_order)
        gens.append(tuple(F.mul(a, x) for x in range(q)))
    if frobenius:
        gens.append(tuple(F.frobenius(x) for x in range(q)))
    return PermGroup(q, gens)


# ------------------------------------------------------------ derived actions

def action_on_subsets(G: PermGroup, k: int) -> PermGroup:
    subsets = list(itertools.combinations(range(G.degree), k))
    index = {s: i for i, s in enumerate(subsets)}
    gens = [tuple(index[tuple(sorted(g[x] for x in s))] for s in subsets) for g in G.generators]
    return PermGroup(len(subsets), gens)


def action_on_conjugates(G: PermGroup, H: PermGroup) -> PermGroup:
    """Action of G by conjugation on the conjugates of H (coset action when H = N_G(H))."""
    from .perm import conj
    elems = lambda K: frozenset(map(tuple, K.elements_array().tolist()))
    start = elems(H)
    reps = [H]
    keys = {start: 0}
    table = []
    i = 0
    while i < len(reps):
        K = reps[i]
        row = []
        for g in G.generators:
            Kg = PermGroup(G.degree, [conj(x, g) for x in K.generators])
            key = elems(Kg)
            if key not in keys:
                keys[key] = len(reps)
                reps.append(Kg)
            row.append(keys[key])
        table.append(row)
        i += 1
    gens = [tuple(table[c][j] for c in range(len(reps))) for j in range(len(G.generators))]
    return PermGroup(len(reps), gens)


def find_subgroup(G: PermGroup, order: int, rng: random.Random,
                  make: Callable[[random.Random], list] | None = None,
                  accept: Callable[[PermGroup], bool] = lambda H: True,
                  tries: int = 20000) -> PermGroup:
    """Random search for a subgroup of the given order generated by two random elements."""
    for _ in range(tries):
        gens = make(rng) if make else [G.random_element(rng), G.random_element(rng)]
        H = PermGroup(G.degree, gens)
        if H.order == order and accept(H):
            return H
    raise RuntimeError(f"no subgroup of order {order} found")


def element_of_order(G: PermGroup, k: int, rng: random.Random) -> Perm:
    while True:
        g = G.random_element(rng)
        o = perm_order(g)
        if o % k == 0:
            return power(g, o // k)


def mathieu11() -> PermGroup:
    a = from_cycles(11, [tuple(range(11))])
    b = from_cycles(11, [(2, 6, 10, 7), (3, 9, 4, 5)])
    return PermGroup(11, [a, b])


def mathieu12() -> PermGroup:
    a = from_cycles(12, [tuple(range(11))])
    b = from_cycles(12, [(2, 6, 10, 7), (3, 9, 4, 5)])
    c = from_cycles(12, [(0, 11), (1, 10), (2, 5), (3, 7), (4, 8), (6, 9)])
    return PermGroup(12, [a, b, c])


def direct_product(groups: Sequence[PermGroup]) -> PermGroup:
    """Intransitive direct product on the disjoint union of the point sets."""
    n = sum(G.degree for G in groups)
    gens = []
    off = 0
    for G in groups:
        for g in G.generators:
            img = list(range(n))
            for i, x in enumerate(g):
                img[off + i] = off + x
            gens.append(tuple(img))
        off += G.degree
    return PermGroup(n, gens)


def product_action(G: PermGroup, H: PermGroup) -> PermGroup:
    """G x H acting on the grid of points (i, j)."""
    m, k = G.degree, H.degree
    gens = [tuple(g[i] * k + j for i in range(m) for j in range(k)) for g in G.generators]
    gens += [tuple(i * k + h[j] for i in range(m) for j in range(k)) for h in H.generators]
    return PermGroup(m * k, gens)


def compose_all(ps: Sequence[Perm]) -> Perm:
    r = ps[0]
    for p in ps[1:]:
        r = mul(r, p)
    return r
