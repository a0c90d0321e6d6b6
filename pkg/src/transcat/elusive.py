"""Derangements of prime order, elusive groups and 2-closures.

A transitive group is elusive when it has no fixed-point-free element of
prime order.  An element of prime order p is a derangement exactly when its
cycle type is p^(n/p), so only primes dividing n matter.  Random sampling
usually finds a witness at once; the exact stage scans the cycle types of all
elements, or decides the full symmetric and alternating groups by cycle type
and parity alone.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graphs import orbital_labels
from .perm import (BudgetExceeded, Perm, PermGroup, cycle_type, cycle_type_codes, format_cycles,
                   from_cycles, perm_order, power)

RANDOM_TRIES = 200
SCAN_BUDGET = 5 * 10**6


def _prime_divisors(n: int) -> list[int]:
    return [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, int(p ** 0.5) + 1))]


def is_prime_derangement(g: Perm) -> bool:
    ct = cycle_type(g)
    return len(set(ct)) == 1 and ct[0] > 1 and all(ct[0] % q for q in range(2, ct[0]))


def _standard_derangement(n: int, p: int) -> Perm:
    return from_cycles(n, [tuple(range(i, i + p)) for i in range(0, n, p)])


def random_derangement(G: PermGroup, rng: random.Random, tries: int = RANDOM_TRIES) -> Optional[Perm]:
    """Powers of random elements, cut down to prime order p | n."""
    primes = [p for p in _prime_divisors(G.degree) if G.order % p == 0]
    for _ in range(tries):
        g = G.random_element(rng)
        o = perm_order(g)
        for p in primes:
            if o % p == 0:
                h = power(g, o // p)
                if is_prime_derangement(h):
                    return h
    return None


def exact_derangement(G: PermGroup, budget: int = SCAN_BUDGET) -> Optional[Perm]:
    """A prime-order derangement of G, or None when there is none."""
    n = G.degree
    primes = [p for p in _prime_divisors(n) if G.order % p == 0]
    full = math.factorial(n)
    if G.order in (full, full // 2) and n > 2:
        # Sym(n) holds every permutation, Alt(n) the even ones
        for p in primes:
            g = _standard_derangement(n, p)
            if G.order == full or (p - 1) * (n // p) % 2 == 0:
                return g
        return None
    if G.order > budget:
        raise BudgetExceeded("derangement scan", G.order, budget)
    E = G.elements_array(budget)
    codes = cycle_type_codes(E)
    for p in primes:
        target = cycle_type_codes(np.array([_standard_derangement(n, p)]))[0]
        hit = np.nonzero(codes == target)[0]
        if len(hit):
            return tuple(int(x) for x in E[hit[0]])
    return None


def prime_order_derangement(G: PermGroup, seed: int = 1, use_random: bool = True) -> Optional[Perm]:
    if use_random:
        g = random_derangement(G, random.Random(seed))
        if g is not None:
            return g
    return exact_derangement(G)


# ----------------------------------------------------------------- 2-closure

def _extend_automorphism(lab: np.ndarray, prefix: list[int]) -> Optional[Perm]:
    """A colour-preserving permutation whose images of 0, 1, ... start with ``prefix``."""
    n = len(lab)
    img = list(prefix)
    used = set(img)

    def ok(j: int, x: int) -> bool:
        for a in range(j):
            if lab[a, j] != lab[img[a], x] or lab[j, a] != lab[x, img[a]]:
                return False
        return True

    def dfs(j: int) -> bool:
        if j == n:
            return True
        for x in range(n):
            if x in used or not ok(j, x):
                continue
            img.append(x)
            used.add(x)
            if dfs(j + 1):
                return True
            img.pop()
            used.discard(x)
        return False

    for j, x in enumerate(prefix):
        if not ok(j, x):
            return None
    return tuple(img) if dfs(len(prefix)) else None


def two_closure(G: PermGroup) -> PermGroup:
    """The largest permutation group with the same orbitals as G."""
    n = G.degree
    lab = orbital_labels(G)
    base = list(range(n))
    gens = list(G.generators)
    K = PermGroup(n, gens, base)
    # level i: with the stabilizer of 0..i already complete, fill in the orbit of i
    for i in range(n - 2, -1, -1):
        level = K._levels[i] if i < len(K._levels) and K._levels[i].base == i else None
        orbit = set(level.orbit) if level is not None else {i}
        for x in range(n):
            if x in orbit or x < i:
                continue
            g = _extend_automorphism(lab, list(range(i)) + [x])
            if g is None:
                continue
            gens.append(g)
            K = PermGroup(n, gens, base)
            orbit = set(K._levels[i].orbit)
    return K


def is_two_closed(G: PermGroup) -> bool:
    return two_closure(G).order == G.order


# -------------------------------------------------------------------- census

@dataclass
class ElusiveReport:
    degree: int
    index: int
    witness: Optional[Perm]
    two_closed: bool

    @property
    def elusive(self) -> bool:
        return self.witness is None

    def line(self) -> str:
        w = "ELUSIVE" if self.witness is None else format_cycles(self.witness)
        return "\t".join([str(self.degree), str(self.index), w, "2CLOSED" if self.two_closed else "NOT2CLOSED"])


def elusive_census(n: int, catalogue, seed: int = 1, use_random: bool = True) -> list[ElusiveReport]:
    out = []
    for e in catalogue:
        w = prime_order_derangement(e.group, seed, use_random)
        out.append(ElusiveReport(n, e.index, w, is_two_closed(e.group)))
    return out


def report_text(reports: list[ElusiveReport], seed: int = 1) -> str:
    head = [f"# prime-order derangements of degree {reports[0].degree}" if reports else "# empty",
            f"# seed {seed}", "# degree\tindex\tELUSIVE|witness\t2CLOSED|NOT2CLOSED"]
    return "\n".join(head + [r.line() for r in reports]) + "\n"
