"""Small abstract groups held as regular permutation groups.

Point x stands for the unique element mapping 0 to x, so elements are the
integers 0..n-1 with 0 the identity, and ``table[x, y]`` is the product
"x then y".
"""

from __future__ import annotations

from collections import Counter
from functools import cached_property
from typing import Sequence

import numpy as np

from .perm import PermGroup


class RegularGroup:
    def __init__(self, G: PermGroup):
        n = G.degree
        if G.order != n or not G.is_transitive():
            raise ValueError("group is not regular")
        self.group = G
        self.n = n
        E = G.elements_array().astype(np.int64)
        by_point = np.empty_like(E)
        by_point[E[:, 0]] = E
        self.table = by_point.T.copy()  # table[x, y] = e_y[x]
        self.inverse = np.argmax(self.table == 0, axis=1)

    @staticmethod
    def from_table(table: np.ndarray, gens: Sequence[int] | None = None) -> "RegularGroup":
        table = np.asarray(table, dtype=np.int64)
        n = len(table)
        gens = range(1, n) if gens is None else gens
        perms = [tuple(int(v) for v in table[:, g]) for g in gens]
        return RegularGroup(PermGroup(n, perms))

    # -- elements
    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    @cached_property
    def element_orders(self) -> np.ndarray:
        out = np.ones(self.n, dtype=np.int64)
        for x in range(1, self.n):
            y, k = x, 1
            while y != 0:
                y = self.table[y, x]
                k += 1
            out[x] = k
        return out

    def order_statistics(self) -> tuple:
        return tuple(sorted(Counter(self.element_orders.tolist()).items()))

    def closure(self, gens: Sequence[int]) -> frozenset:
        """Elements of the subgroup generated by ``gens``."""
        seen = {0}
        queue = [0]
        while queue:
            x = queue.pop()
            for g in gens:
                y = int(self.table[x, g])
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A short generating set chosen greedily by element order."""
        order = sorted(range(1, self.n), key=lambda x: (-self.element_orders[x], x))
        gens: list[int] = []
        cur = frozenset({0})
        for x in order:
            if len(cur) == self.n:
                break
            if x not in cur:
                gens.append(x)
                cur = self.closure(gens)
        return tuple(gens)

    # -- automorphisms
    def _extend(self, gens: Sequence[int], imgs: Sequence[int]) -> np.ndarray | None:
        """The homomorphism on <gens> with gens -> imgs, or None if there is none."""
        phi = np.full(self.n, -1, dtype=np.int64)
        phi[0] = 0
        queue = [0]
        while queue:
            x = queue.pop()
            y = phi[x]
            for g, h in zip(gens, imgs):
                x2 = self.table[x, g]
                y2 = self.table[y, h]
                if phi[x2] < 0:
                    phi[x2] = y2
                    queue.append(x2)
                elif phi[x2] != y2:
                    return None
        return phi

    @cached_property
    def automorphisms(self) -> np.ndarray:
        """Every automorphism as a row mapping element labels to element labels."""
        gens = self.generators
        if not gens:
            return np.zeros((1, self.n), dtype=np.int64)
        orders = self.element_orders
        out = []

        def dfs(imgs):
            j = len(imgs)
            if j == len(gens):
                phi = self._extend(gens, imgs)
                if phi is not None and len(set(phi.tolist())) == self.n:
                    out.append(phi)
                return
            for y in range(1, self.n):
                if orders[y] != orders[gens[j]]:
                    continue
                trial = imgs + [y]
                phi = self._extend(gens[:j + 1], trial)
                if phi is None:
                    continue
                # an automorphism is injective on every subgroup
                vals = phi[phi >= 0]
                if len(set(vals.tolist())) != len(vals):
                    continue
                dfs(trial)
        dfs([])
        return np.array(out, dtype=np.int64)

    # -- subgroups and quotients
    @cached_property
    def subgroups(self) -> list[frozenset]:
        """All subgroups, by increasing order and then by sorted elements."""
        found = {frozenset({0})}
        frontier = [frozenset({0})]
        while frontier:
            nxt = []
            for H in frontier:
                for x in range(1, self.n):
                    if x in H:
                        continue
                    K = self.closure(sorted(H) + [x])
                    if K not in found:
                        found.add(K)
                        nxt.append(K)
            frontier = nxt
        return sorted(found, key=lambda H: (len(H), sorted(H)))

    def is_normal(self, H: frozenset) -> bool:
        for g in self.generators:
            gi = self.inverse[g]
            if any(int(self.table[self.table[gi, h], g]) not in H for h in H):
                return False
        return True

    def subgroup_group(self, H: frozenset) -> "RegularGroup":
        els = sorted(H)
        pos = {x: i for i, x in enumerate(els)}
        table = np.array([[pos[int(self.table[x, y])] for y in els] for x in els], dtype=np.int64)
        return RegularGroup.from_table(table)

    def quotient_group(self, N: frozenset) -> "RegularGroup":
        label = np.full(self.n, -1, dtype=np.int64)
        reps = []
        for x in range(self.n):
            if label[x] < 0:
                for h in N:
                    label[self.table[h, x]] = len(reps)
                reps.append(x)
        table = np.array([[label[self.table[a, b]] for b in reps] for a in reps], dtype=np.int64)
        return RegularGroup.from_table(table)

    # -- identification
    def identify(self):
        """The seed entry (a SmallGroup) isomorphic to this group."""
        from .conjugacy import are_conjugate
        from .seeds import small_groups
        stats = self.order_statistics()
        for cand in small_groups(self.n):
            R = RegularGroup(cand.group)
            if R.order_statistics() != stats:
                continue
            if self.n == 1 or are_conjugate(self.group, cand.group) is not None:
                return cand
        raise LookupError(f"group of order {self.n} not found in the small-group seeds")
