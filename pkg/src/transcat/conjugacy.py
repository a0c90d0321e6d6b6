"""Conjugacy of permutation groups and the invariant keys used to pre-filter it.

Two complete methods are used.  When an ambient group is given and small
enough, every element of it is tried at once with numpy.  Otherwise the search
fixes images of a short generating set of G1 inside G2 (class representatives
for the first generator, candidates filtered by cycle types of words) and
propagates the conjugating map point by point from the image of point 0.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .blocks import minimal_block_systems
from .perm import (
    BudgetExceeded,
    Perm,
    PermGroup,
    cycle_type,
    cycle_type_codes,
    derived_subgroup,
    identity,
    inv,
    mul,
    orbit_partition,
    perm_order,
    power,
)

KEY_BUDGET = 2 * 10**6
AMBIENT_BRUTE_BUDGET = 10**6


@dataclass(frozen=True)
class InvariantKey:
    order: int
    orbit_lengths: tuple
    cycle_types: Optional[tuple]  # ((code, count), ...) or None above KEY_BUDGET
    orbitals: tuple  # sorted (subdegree, self-paired) for transitive groups
    block_systems: tuple  # sorted minimal block sizes
    derived_order: int
    abelian_exponent: int

    def serialize(self) -> str:
        ct = "-" if self.cycle_types is None else ",".join(f"{c}:{k}" for c, k in self.cycle_types)
        orb = ",".join(f"{d}{'s' if s else 'p'}" for d, s in self.orbitals)
        return (f"{self.order:020d}|{','.join(map(str, self.orbit_lengths))}|{orb}|"
                f"{','.join(map(str, self.block_systems))}|{self.derived_order:020d}|"
                f"{self.abelian_exponent}|{ct}")


def orbital_structure(G: PermGroup) -> tuple:
    """Sorted (subdegree, self-paired) over the non-diagonal orbitals (transitive G)."""
    n = G.degree
    lab = [-1] * (n * n)
    sizes = []
    for a in range(n):
        for b in range(n):
            if a == b or lab[a * n + b] >= 0:
                continue
            idx = len(sizes)
            lab[a * n + b] = idx
            stack = [(a, b)]
            cnt = 1
            while stack:
                x, y = stack.pop()
                for g in G.generators:
                    u, v = g[x], g[y]
                    if lab[u * n + v] < 0:
                        lab[u * n + v] = idx
                        cnt += 1
                        stack.append((u, v))
            sizes.append(cnt)
    out = []
    for idx, cnt in enumerate(sizes):
        pos = lab.index(idx)
        a, b = divmod(pos, n)
        out.append((cnt // n, lab[b * n + a] == idx))
    return tuple(sorted(out))


def _abelian_exponent(G: PermGroup, D: PermGroup) -> int:
    e = 1
    for g in G.generators:
        o = perm_order(g)
        t = min(d for d in range(1, o + 1) if o % d == 0 and D.contains(power(g, d)))
        e = e * t // math.gcd(e, t)
    return e


def invariant_key(G: PermGroup, budget: int = KEY_BUDGET) -> InvariantKey:
    k = G._cache.get("invkey")
    if k is not None:
        return k
    orbits = orbit_partition(G)
    transitive = len(orbits) == 1
    ct = None
    if G.order <= budget:
        codes = G.cycle_type_codes()
        u, c = np.unique(codes, return_counts=True)
        ct = tuple((int(a), int(b)) for a, b in zip(u, c))
    orbitals = orbital_structure(G) if transitive else ()
    blocks = tuple(sorted(b.block_size for b in minimal_block_systems(G))) if transitive else ()
    D = derived_subgroup(G)
    k = InvariantKey(G.order, tuple(sorted(len(o) for o in orbits)), ct, orbitals, blocks,
                     D.order, _abelian_exponent(G, D))
    G._cache["invkey"] = k
    return k


# ------------------------------------------------------------------ brute force

def conjugates_of(g: Perm, C: np.ndarray) -> np.ndarray:
    """Rows c^-1 g c for every row c of C."""
    ga = np.asarray(g, dtype=np.int64)
    R = np.empty_like(C)
    np.put_along_axis(R, C.astype(np.int64), C[:, ga], axis=1)
    return R


def conjugating_elements(G1: PermGroup, G2: PermGroup, C: np.ndarray) -> np.ndarray:
    """Boolean mask over rows c of C with G1^c <= G2."""
    ok = np.ones(len(C), dtype=bool)
    for g in G1.generators:
        idx = np.nonzero(ok)[0]
        if len(idx) == 0:
            break
        r = G2.rank(conjugates_of(g, C[idx]))
        ok[idx[r < 0]] = False
    return ok


def _brute(G1: PermGroup, G2: PermGroup, ambient: PermGroup) -> Optional[Perm]:
    E = ambient.elements_array()
    ok = conjugating_elements(G1, G2, E)
    hit = np.nonzero(ok)[0]
    if len(hit) == 0:
        return None
    return tuple(int(x) for x in E[hit[0]])


# ------------------------------------------------------- generator image search

def _choose_generators(G1: PermGroup, freq: dict, rng: random.Random) -> list[Perm]:
    E = G1.elements_array()
    codes = G1.cycle_type_codes()
    n = G1.degree
    ident_code = int(cycle_type_codes(np.arange(n, dtype=np.int16)[None, :])[0])
    keyf = np.array([freq.get(int(c), 0) for c in codes])
    tiebreak = np.random.default_rng(rng.randrange(2**32)).random(len(E))
    order = np.lexsort((tiebreak, keyf))
    gens: list[Perm] = []
    cur = PermGroup(n, [])
    for i in order:
        if codes[i] == ident_code:
            continue
        x = tuple(int(v) for v in E[i])
        if cur.contains(x):
            continue
        gens.append(x)
        cur = PermGroup(n, gens)
        if cur.order == G1.order:
            break
    return gens


def _propagate(c: list, used: list, gens, ginv, himgs, hinv, start_points) -> bool:
    """Close the partial map c under c(g a) = h c(a); return False on conflict."""
    stack = list(start_points)
    while stack:
        a = stack.pop()
        ca = c[a]
        for g, h, hi, gi in zip(gens, himgs, hinv, ginv):
            b = g[a]
            cb = h[ca]
            if c[b] < 0:
                if used[cb]:
                    return False
                c[b] = cb
                used[cb] = True
                stack.append(b)
            elif c[b] != cb:
                return False
            b = gi[a]
            cb = hi[ca]
            if c[b] < 0:
                if used[cb]:
                    return False
                c[b] = cb
                used[cb] = True
                stack.append(b)
            elif c[b] != cb:
                return False
    return True


class _ImageSearch:
    def __init__(self, G1: PermGroup, G2: PermGroup, ambient: Optional[PermGroup], seed: int):
        self.G1, self.G2, self.ambient = G1, G2, ambient
        self.n = G1.degree
        self.E2 = G2.elements_array()
        self.ct2 = G2.cycle_type_codes()
        u, cnt = np.unique(self.ct2, return_counts=True)
        freq = {int(a): int(b) for a, b in zip(u, cnt)}
        rng = random.Random(seed)
        self.gens = _choose_generators(G1, freq, rng)
        self.ginv = [inv(g) for g in self.gens]
        self.reduce = ambient is None or G2.is_subgroup_of(ambient)
        self.orbits = orbit_partition(PermGroup(self.n, self.gens))

    def _codes_of(self, X: np.ndarray) -> np.ndarray:
        return cycle_type_codes(X)

    def candidates(self, j: int, hs: list[np.ndarray]) -> np.ndarray:
        g = self.gens[j]
        target = int(cycle_type_codes(np.asarray(g, dtype=np.int16)[None, :])[0])
        idx = np.nonzero(self.ct2 == target)[0]
        X = self.E2[idx]
        for i in range(j):
            gi = self.gens[i]
            want = int(cycle_type_codes(np.asarray(mul(gi, g), dtype=np.int16)[None, :])[0])
            prod = X[:, hs[i]]  # (h_i * x)[p] = x[h_i[p]]
            keep = self._codes_of(prod) == want
            idx, X = idx[keep], X[keep]
            if len(idx) == 0:
                break
        return idx

    def run(self) -> Optional[Perm]:
        if not self.gens:
            return identity(self.n)
        G2 = self.G2
        first = self.candidates(0, [])
        if self.reduce and len(first):
            lab = G2.conjugacy_classes()
            _, pos = np.unique(lab[first], return_index=True)
            first = first[np.sort(pos)]
        for i1 in first:
            h1 = self.E2[i1]
            if self.reduce:
                comm = (self.E2[:, h1] == h1[self.E2]).all(axis=1)
                cent = self.E2[comm]
                ys = _orbit_reps(cent, self.n)
            else:
                ys = list(range(self.n))
            for y in ys:
                res = self._extend([h1], y)
                if res is not None:
                    return res
        return None

    def _extend(self, hs: list, y: int) -> Optional[Perm]:
        n = self.n
        c = [-1] * n
        used = [False] * n
        a0 = self.orbits[0][0]
        c[a0] = y
        used[y] = True
        himgs = [tuple(int(v) for v in h) for h in hs]
        return self._descend(1, hs, himgs, c, used, [a0])

    def _descend(self, j, hs, himgs, c, used, fresh) -> Optional[Perm]:
        hinv = [inv(h) for h in himgs]
        if not _propagate(c, used, self.gens[:j], self.ginv[:j], himgs, hinv, fresh):
            return None
        if j == len(self.gens):
            return self._finish(himgs, c, used)
        cand = self.candidates(j, hs)
        if len(cand) == 0:
            return None
        g = self.gens[j]
        X = self.E2[cand]
        mask = np.ones(len(cand), dtype=bool)
        for a in range(self.n):
            if c[a] >= 0 and c[g[a]] >= 0:
                mask &= X[:, c[a]] == c[g[a]]
        for i in np.nonzero(mask)[0]:
            h = X[i]
            hh = tuple(int(v) for v in h)
            c2, u2 = list(c), list(used)
            res = self._descend(j + 1, hs + [h], himgs + [hh], c2, u2,
                                [a for a in range(self.n) if c2[a] >= 0])
            if res is not None:
                return res
        return None

    def _finish(self, himgs, c, used) -> Optional[Perm]:
        n = self.n
        if all(x >= 0 for x in c):
            cp = tuple(c)
            if self.ambient is not None and not self.ambient.contains(cp):
                return None
            return cp
        # intransitive G1: seed the next uncovered orbit
        a = next(i for i in range(n) if c[i] < 0)
        for y in range(n):
            if used[y]:
                continue
            c2, u2 = list(c), list(used)
            c2[a] = y
            u2[y] = True
            if _propagate(c2, u2, self.gens, self.ginv, himgs, [inv(h) for h in himgs], [a]):
                res = self._finish(himgs, c2, u2)
                if res is not None:
                    return res
        return None


def _orbit_reps(elements: np.ndarray, n: int) -> list[int]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in elements:
        for i in range(n):
            a, b = find(i), find(int(row[i]))
            if a != b:
                parent[max(a, b)] = min(a, b)
    return sorted({find(i) for i in range(n)})


# -------------------------------------------------------------------- interface

def are_conjugate(G1: PermGroup, G2: PermGroup, ambient: Optional[PermGroup] = None,
                  seed: int = 1) -> Optional[Perm]:
    """A permutation c with G1^c = G2 (inside ``ambient`` when given), or None."""
    if G1.degree != G2.degree:
        raise ValueError("groups of different degree")
    if ambient is not None and ambient.degree != G1.degree:
        raise ValueError("ambient group of wrong degree")
    if G1.order != G2.order:
        return None
    o1 = sorted(len(o) for o in orbit_partition(G1))
    o2 = sorted(len(o) for o in orbit_partition(G2))
    if o1 != o2:
        return None
    if len(o1) == 1 and invariant_key(G1) != invariant_key(G2):
        return None
    if ambient is not None and ambient.order <= AMBIENT_BRUTE_BUDGET:
        return _brute(G1, G2, ambient)
    if G2.order <= KEY_BUDGET:
        c = _ImageSearch(G1, G2, ambient, seed).run()
        if c is not None:
            assert all(G2.contains(_conj(g, c)) for g in G1.generators)
        return c
    from .bigconj import conjugate_large
    return conjugate_large(G1, G2, ambient)


def _conj(g: Perm, c: Perm) -> Perm:
    r = [0] * len(g)
    for i, x in enumerate(g):
        r[c[i]] = c[x]
    return tuple(r)


def conjugate_group(G: PermGroup, c: Perm) -> PermGroup:
    return PermGroup(G.degree, [_conj(g, c) for g in G.generators])


def exhaustive_conjugate(G1: PermGroup, G2: PermGroup) -> Optional[Perm]:
    """Oracle: try all n! permutations (small n only)."""
    from itertools import permutations
    if G1.order != G2.order:
        return None
    for c in permutations(range(G1.degree)):
        if all(G2.contains(_conj(g, c)) for g in G1.generators):
            return c
    return None


def unique_up_to_conjugacy(groups, ambient: Optional[PermGroup] = None) -> list[PermGroup]:
    """First representative of each conjugacy class, in input order."""
    buckets: dict = {}
    out = []
    for G in groups:
        key = (invariant_key(G), G.order)
        bucket = buckets.setdefault(key, [])
        if any(are_conjugate(G, H, ambient) is not None for H in bucket):
            continue
        bucket.append(G)
        out.append(G)
    return out
