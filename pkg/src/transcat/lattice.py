"""Subgroup classes of small permutation groups and minimal transitivity.

The lattice is built by cyclic extension: every subgroup V has a chain
P = V_0 < V_1 < ... < V = V_t in which each step is normal of prime index and
P is the perfect residuum of V.  Starting from the perfect subgroups, each
class representative U is extended by elements z of prime power order that
normalize U and have z^p in U.  Perfect subgroups are found among the groups
<x, y> with x a class representative; every perfect group of order below
2*10^5 is 2-generated, so this seeding misses nothing at the sizes allowed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .conjugacy import conjugates_of
from .perm import (
    BudgetExceeded,
    Perm,
    PermGroup,
    derived_subgroup,
    order_from_code,
)

LATTICE_BUDGET = 2 * 10**5


@dataclass
class SubgroupClass:
    representative: PermGroup
    class_size: int
    is_maximal: bool = False
    normalizer_order: int = 0
    mask: np.ndarray = field(default=None, repr=False)


class _Lattice:
    def __init__(self, G: PermGroup):
        self.G = G
        self.n = G.degree
        self.E = G.elements_array()
        self.N = len(self.E)
        codes = G.cycle_type_codes()
        uniq = {int(c): order_from_code(int(c), self.n) for c in np.unique(codes)}
        self.orders = np.array([uniq[int(c)] for c in codes])
        self.codes = codes
        self.classes: list[SubgroupClass] = []
        self.buckets: dict = {}

    def mask_of(self, H: PermGroup) -> np.ndarray:
        m = np.zeros(self.N, dtype=bool)
        m[self.G.rank(H.elements_array())] = True
        return m

    def fingerprint(self, mask: np.ndarray, H: PermGroup):
        u, c = np.unique(self.codes[mask], return_counts=True)
        return (H.order, tuple(sorted(len(o) for o in H.orbits())), tuple(zip(u.tolist(), c.tolist())))

    def conjugators(self, gens, mask) -> np.ndarray:
        """Boolean mask over elements g of G with <gens>^g inside ``mask``."""
        ok = np.ones(self.N, dtype=bool)
        for x in gens:
            idx = np.nonzero(ok)[0]
            r = self.G.rank(conjugates_of(x, self.E[idx]))
            ok[idx[~mask[r]]] = False
        return ok

    def find(self, H: PermGroup, mask: np.ndarray):
        key = self.fingerprint(mask, H)
        for ci in self.buckets.get(key, []):
            C = self.classes[ci]
            if self.conjugators(H.generators, C.mask).any():
                return ci, key
        return None, key

    def add(self, H: PermGroup, mask: np.ndarray | None = None) -> tuple[int, bool]:
        if mask is None:
            mask = self.mask_of(H)
        ci, key = self.find(H, mask)
        if ci is not None:
            return ci, False
        norm = self.conjugators(H.generators, mask)
        nord = int(norm.sum())
        C = SubgroupClass(H, self.N // nord, False, nord, mask)
        C._normalizer = norm
        self.classes.append(C)
        self.buckets.setdefault(key, []).append(len(self.classes) - 1)
        return len(self.classes) - 1, True


def _is_perfect(H: PermGroup) -> bool:
    return H.order > 1 and derived_subgroup(H).order == H.order


def _perfect_seeds(L: _Lattice, G: PermGroup) -> list[PermGroup]:
    """Nontrivial perfect subgroups <x, y>, x a class rep inside the perfect residuum."""
    D = G
    while True:
        D2 = derived_subgroup(D)
        if D2.order == D.order:
            break
        D = D2
    if D.order == 1:
        return []
    dmask = L.mask_of(D)
    lab = G.conjugacy_classes()
    reps = [i for i in np.unique(lab[dmask], return_index=True)[1]]
    didx = np.nonzero(dmask)[0]
    reps = [int(didx[i]) for i in reps]
    seen: set = set()
    out = []
    for xi in reps:
        x = G.element(xi)
        if L.orders[xi] == 1:
            continue
        for yi in didx:
            if L.orders[yi] == 1:
                continue
            H = PermGroup(G.degree, [x, tuple(int(v) for v in L.E[yi])])
            if H.order < 60 or H.order % 4:
                continue
            m = L.mask_of(H)
            key = m.tobytes()
            if key in seen:
                continue
            seen.add(key)
            if _is_perfect(H):
                out.append(H)
    return out


def all_subgroup_classes(G: PermGroup, budget: int = LATTICE_BUDGET) -> list[SubgroupClass]:
    if G.order > budget:
        raise BudgetExceeded("subgroup lattice", G.order, budget)
    L = _Lattice(G)
    n = G.degree
    L.add(PermGroup(n, []))
    for P in _perfect_seeds(L, G):
        L.add(P)
    prime_power = np.array([_prime_of(int(o)) for o in L.orders])
    done = 0
    while done < len(L.classes):
        C = L.classes[done]
        done += 1
        U, umask = C.representative, C.mask
        norm = C._normalizer
        covered = umask.copy()
        cand = np.nonzero(norm & ~umask & (prime_power > 0))[0]
        for zi in cand:
            if covered[zi]:
                continue
            p = int(prime_power[zi])
            z = tuple(int(v) for v in L.E[zi])
            zp = L.E[zi]
            for _ in range(p - 1):
                zp = L.E[zi][zp]
            if not umask[G.rank(zp)[0]]:
                continue
            V = PermGroup(n, list(U.generators) + [z])
            vmask = L.mask_of(V)
            covered |= vmask
            L.add(V, vmask)
    classes = sorted(L.classes, key=lambda c: (c.representative.order, L.fingerprint(c.mask, c.representative)))
    _mark_maximal(L, classes)
    for c in classes:
        del c._normalizer
    return classes


def _prime_of(order: int) -> int:
    """The prime p if order is a positive power of p, else 0."""
    if order < 2:
        return 0
    p = 2
    while order % p:
        p += 1
    while order % p == 0:
        order //= p
    return p if order == 1 else 0


def _mark_maximal(L: _Lattice, classes: list[SubgroupClass]):
    N = L.N
    for i, C in enumerate(classes):
        o = C.representative.order
        if o == N:
            C.is_maximal = False
            continue
        C.is_maximal = True
        for D in classes:
            od = D.representative.order
            if od == N or od <= o or od % o:
                continue
            if L.conjugators(C.representative.generators, D.mask).any():
                C.is_maximal = False
                break


def maximal_subgroups(G: PermGroup, budget: int = LATTICE_BUDGET) -> list[PermGroup]:
    return [c.representative for c in all_subgroup_classes(G, budget) if c.is_maximal]


def transitive_maximal_subgroups(G: PermGroup, budget: int = LATTICE_BUDGET) -> list[PermGroup]:
    if not G.is_transitive():
        raise ValueError("group must be transitive")
    return [H for H in maximal_subgroups(G, budget) if H.is_transitive()]


# ------------------------------------------------------------ minimal transitivity

def transitive_proper_subgroup_witness(G: PermGroup, rng: random.Random,
                                       tries: int = 200) -> list[Perm] | None:
    """Cheap randomized search for generators of a proper transitive subgroup."""
    n = G.degree
    if G.order == n:
        return None
    D = derived_subgroup(G)
    if 1 < D.order < G.order and D.is_transitive():
        return list(D.generators)
    for t in range(tries):
        r = 1 if t % 3 == 0 else 2
        gens = [G.random_element(rng) for _ in range(r)]
        H = PermGroup(n, gens)
        if H.order < G.order and H.is_transitive():
            return gens
        if H.order == G.order and r == 2:
            # shrink: replace a generator by a power
            from .perm import perm_order, power
            for i in range(2):
                o = perm_order(gens[i])
                for p in (2, 3, 5, 7):
                    if o % p == 0:
                        g2 = list(gens)
                        g2[i] = power(gens[i], p)
                        H2 = PermGroup(n, g2)
                        if H2.order < G.order and H2.is_transitive():
                            return g2
    return None


def is_minimal_transitive(G: PermGroup, seed: int = 1, use_random: bool = True,
                          budget: int = LATTICE_BUDGET, witness_gens=None) -> bool:
    if not G.is_transitive():
        raise ValueError("group must be transitive")
    if G.order == G.degree:
        return True  # regular groups have no proper transitive subgroup
    if witness_gens is not None:
        H = PermGroup(G.degree, witness_gens)
        if H.order < G.order and H.is_transitive() and H.is_subgroup_of(G):
            return False
    if use_random:
        if transitive_proper_subgroup_witness(G, random.Random(seed)) is not None:
            return False
    classes = all_subgroup_classes(G, budget)
    return not any(c.representative.order < G.order and c.representative.is_transitive()
                   for c in classes)
