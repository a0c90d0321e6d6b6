"""Cayley sets, cycle-index counts and CI verdicts for small groups.

A Cayley set is an Aut(G)-orbit of inverse-closed identity-free subsets of G,
i.e. of subsets of S = {{g, g^-1} : g != 1}.  Orbit representatives are the
maximal members of their orbits when a subset of S is read as a bit string
(pair 0 most significant); removing the last pair of such a set leaves
another one, so representatives are grown one pair at a time.

G is CI when isomorphic Cayley graphs always come from Aut(G)-equivalent
connection sets, i.e. when Cayley sets and Cayley graphs are equinumerous.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .canon import canonical_form, to_graph6
from .regular import RegularGroup
from .seeds import SmallGroup, small_group_orders, small_groups

ORDERLY_BOUND = 100
CYCLE_INDEX_BOUND = 200
CI_BOUND = 47


@dataclass
class ConnectionClass:
    group_id: tuple[int, int]
    pairs: tuple[int, ...]  # indices into the pair list S
    orbit_size: int


@dataclass
class CiReport:
    group_id: tuple[int, int]
    ci: bool
    sets: int
    graphs: int
    witness: Optional[tuple[tuple[int, ...], tuple[int, ...]]] = None
    witness_graph6: tuple[str, ...] = field(default_factory=tuple)

    def line(self) -> str:
        return "\t".join([str(self.group_id[0]), str(self.group_id[1]),
                          "CI" if self.ci else "NONCI", str(self.sets), str(self.graphs)])


def connection_pairs(R: RegularGroup, directed: bool = False) -> list[tuple[int, ...]]:
    """S as tuples of element labels, sorted by least element."""
    out = []
    for g in range(1, R.n):
        gi = int(R.inverse[g])
        if directed:
            out.append((g,))
        elif g <= gi:
            out.append((g,) if g == gi else (g, gi))
    return out


def pair_action(R: RegularGroup, S: list[tuple[int, ...]]) -> np.ndarray:
    """Row a: the permutation of S induced by automorphism a."""
    where = {}
    for i, s in enumerate(S):
        for x in s:
            where[x] = i
    A = R.automorphisms
    return np.array([[where[int(phi[s[0]])] for s in S] for phi in A], dtype=np.int64)


def _cycle_count(p: np.ndarray) -> int:
    seen = np.zeros(len(p), dtype=bool)
    c = 0
    for i in range(len(p)):
        if not seen[i]:
            c += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
    return c


def cycle_index_value(P: np.ndarray, x: int = 2) -> Fraction:
    """Z(A; x, x, ...) for the permutation group whose elements are the rows of P."""
    if P.shape[1] == 0:
        return Fraction(1)
    return Fraction(sum(x ** _cycle_count(p) for p in P), len(P))


def count_cayley_sets(R: RegularGroup, directed: bool = False) -> int:
    if R.n > CYCLE_INDEX_BOUND:
        raise ValueError(f"cycle index limited to order {CYCLE_INDEX_BOUND}")
    S = connection_pairs(R, directed)
    z = cycle_index_value(pair_action(R, S))
    if z.denominator != 1:
        raise ArithmeticError("cycle index did not evaluate to an integer")
    return int(z)


def orderly_connection_classes(R: RegularGroup, group_id=(0, 0), directed: bool = False) -> list[ConnectionClass]:
    """One representative per Aut(G)-orbit on subsets of S."""
    if R.n > ORDERLY_BOUND:
        raise ValueError(f"orderly generation limited to order {ORDERLY_BOUND}")
    S = connection_pairs(R, directed)
    s = len(S)
    P = pair_action(R, S)
    W = np.array([1 << (s - 1 - i) for i in range(s)], dtype=object if s > 62 else np.int64)
    out = []
    stack: list[tuple[int, ...]] = [()]
    while stack:
        X = stack.pop()
        val = int(W[list(X)].sum()) if X else 0
        imgs = W[P[:, list(X)]].sum(axis=1) if X else np.zeros(len(P), dtype=np.int64)
        if X and imgs.max() > val:
            continue
        stab = int((imgs == val).sum())
        out.append(ConnectionClass(group_id, X, len(P) // stab))
        last = X[-1] if X else -1
        for j in range(s - 1, last, -1):
            stack.append(X + (j,))
    out.sort(key=lambda c: (len(c.pairs), c.pairs))
    return out


def cayley_graph(R: RegularGroup, elements) -> np.ndarray:
    """Adjacency of Cay(G, C): arcs x -> x c."""
    A = np.zeros((R.n, R.n), dtype=np.uint8)
    for c in elements:
        A[np.arange(R.n), R.table[:, c]] = 1
    return A


def class_elements(S: list[tuple[int, ...]], cls: ConnectionClass) -> list[int]:
    return [x for i in cls.pairs for x in S[i]]


def is_ci_group(R: RegularGroup, group_id=(0, 0), directed: bool = False) -> CiReport:
    if R.n > CI_BOUND:
        raise ValueError(f"CI test limited to order {CI_BOUND}")
    S = connection_pairs(R, directed)
    classes = orderly_connection_classes(R, group_id, directed)
    seen: dict[bytes, ConnectionClass] = {}
    witness = None
    for cls in classes:
        A = cayley_graph(R, class_elements(S, cls))
        key = canonical_form(A)
        if key in seen:
            if witness is None:
                witness = (seen[key], cls)
            continue
        seen[key] = cls
    report = CiReport(group_id, witness is None, len(classes), len(seen))
    if witness is not None:
        a, b = witness
        report.witness = (a.pairs, b.pairs)
        report.witness_graph6 = tuple(to_graph6(cayley_graph(R, class_elements(S, c))) for c in (a, b))
    return report


# ------------------------------------------------------------------ census

def ci_census(max_order: int, directed: bool = False) -> dict[tuple[int, int], CiReport]:
    out = {}
    for n in small_group_orders():
        if n > max_order:
            break
        for sg in small_groups(n):
            out[sg.id] = is_ci_group(RegularGroup(sg.group), sg.id, directed)
    return out


def sections(sg: SmallGroup) -> set[tuple[int, int]]:
    """Ids of the proper subgroups and proper quotients of a seed group."""
    R = RegularGroup(sg.group)
    out = set()
    for H in R.subgroups:
        if 1 < len(H) < R.n:
            out.add(R.subgroup_group(H).identify().id)
            if R.is_normal(H):
                out.add(R.quotient_group(H).identify().id)
    return out


def minimal_non_ci(reports: dict[tuple[int, int], CiReport], bound: int) -> list[tuple[int, int]]:
    """Non-CI groups of order <= bound with no non-CI proper subgroup or quotient."""
    out = []
    for gid in sorted(reports):
        if gid[0] > bound or reports[gid].ci:
            continue
        sg = next(s for s in small_groups(gid[0]) if s.id == gid)
        below = sections(sg)
        missing = [b for b in below if b not in reports]
        if missing:
            raise KeyError(f"missing verdicts for {missing}")
        if all(reports[b].ci for b in below):
            out.append(gid)
    return out


def report_text(reports: dict[tuple[int, int], CiReport], seed: int = 1) -> str:
    head = ["# CI verdicts of small groups", f"# seed {seed}", "# order\tidx\tCI|NONCI\tsets\tgraphs"]
    return "\n".join(head + [reports[g].line() for g in sorted(reports)]) + "\n"
