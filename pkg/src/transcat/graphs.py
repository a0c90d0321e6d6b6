"""Vertex-transitive graphs from orbitals of transitive groups.

Every vertex-transitive graph on n vertices is invariant under some minimal
transitive group of degree n (any transitive subgroup of its automorphism
group contains one), so the census takes the union of the invariant graphs of
the minimal transitive groups only.  Graphs invariant under a regular group
are exactly the Cayley graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .canon import canonical_form, to_digraph6, to_graph6
from .perm import PermGroup

MAX_ORBITALS = 30
ESTIMATE_BOUND = 100


@dataclass
class Orbital:
    index: int
    rep: tuple[int, int]
    arcs: np.ndarray = field(repr=False)  # n x n 0/1 matrix
    paired_with: int = -1

    @property
    def self_paired(self) -> bool:
        return self.paired_with == self.index

    @property
    def bits(self) -> bytes:
        return np.packbits(self.arcs).tobytes()


@dataclass
class Digraph:
    n: int
    adjacency: np.ndarray = field(repr=False)
    canonical: bytes = field(default=b"", repr=False)
    cayley: Optional[bool] = None

    def __post_init__(self):
        if not self.canonical:
            self.canonical = canonical_form(self.adjacency)

    @property
    def directed(self) -> bool:
        return not np.array_equal(self.adjacency, self.adjacency.T)

    @property
    def arcs(self) -> int:
        return int(self.adjacency.sum())

    def text(self) -> str:
        return to_digraph6(self.adjacency) if self.directed else to_graph6(self.adjacency)


def orbital_labels(G: PermGroup) -> np.ndarray:
    """n x n matrix: entry (a, b) is the index of the orbital containing (a, b), -1 on the diagonal."""
    n = G.degree
    lab = np.full((n, n), -1, dtype=np.int64)
    nxt = 0
    gens = [np.asarray(g, dtype=np.int64) for g in G.generators]
    for a in range(n):
        for b in range(n):
            if a == b or lab[a, b] >= 0:
                continue
            lab[a, b] = nxt
            stack = [(a, b)]
            while stack:
                x, y = stack.pop()
                for g in gens:
                    u, v = int(g[x]), int(g[y])
                    if lab[u, v] < 0:
                        lab[u, v] = nxt
                        stack.append((u, v))
            nxt += 1
    return lab


def orbitals(G: PermGroup) -> list[Orbital]:
    """The non-diagonal orbitals, numbered by their least pair."""
    if not G.is_transitive():
        raise ValueError("orbitals are taken for transitive groups")
    lab = orbital_labels(G)
    k = int(lab.max()) + 1
    out = []
    for i in range(k):
        pairs = np.argwhere(lab == i)
        a, b = (int(v) for v in pairs[0])
        out.append(Orbital(i, (a, b), (lab == i).astype(np.uint8), int(lab[b, a])))
    return out


def _units(orbs: Sequence[Orbital], directed: bool) -> list[np.ndarray]:
    """Arc sets that may be chosen independently."""
    if directed:
        return [o.arcs for o in orbs]
    out = []
    for o in orbs:
        if o.self_paired:
            out.append(o.arcs)
        elif o.index < o.paired_with:
            out.append(o.arcs | orbs[o.paired_with].arcs)
    return out


def invariant_graphs(G: PermGroup, directed: bool = False) -> list[Digraph]:
    """All G-invariant loopless graphs (or digraphs), one per isomorphism class."""
    orbs = orbitals(G)
    if len(orbs) > MAX_ORBITALS:
        raise ValueError(f"{len(orbs)} orbitals exceed the limit of {MAX_ORBITALS}")
    units = _units(orbs, directed)
    n = G.degree
    seen: dict[bytes, Digraph] = {}
    for mask in range(1 << len(units)):
        A = np.zeros((n, n), dtype=np.uint8)
        for i, U in enumerate(units):
            if mask >> i & 1:
                A |= U
        D = Digraph(n, A)
        seen.setdefault(D.canonical, D)
    return sorted(seen.values(), key=lambda D: (D.arcs, D.canonical))


def is_invariant(G: PermGroup, A: np.ndarray) -> bool:
    for g in G.generators:
        p = np.asarray(g, dtype=np.int64)
        B = np.zeros_like(A)
        B[np.ix_(p, p)] = A
        if not np.array_equal(A, B):
            return False
    return True


@dataclass
class GraphCensus:
    n: int
    graphs: list[Digraph]

    @property
    def t(self) -> int:
        return len(self.graphs)

    @property
    def c(self) -> int:
        return sum(1 for D in self.graphs if D.cayley)

    def text(self, seed: int = 1) -> str:
        head = [f"# vertex-transitive graphs of order {self.n}", f"# seed {seed}",
                f"{self.n} {self.t} {self.c}"]
        return "\n".join(head + [D.text() for D in self.graphs]) + "\n"


def transitive_graph_census(n: int, catalogue, directed: bool = False) -> GraphCensus:
    """Vertex-transitive (di)graphs of order n from the minimal entries of a catalogue."""
    found: dict[bytes, Digraph] = {}
    cayley: set[bytes] = set()
    for e in catalogue:
        if not e.minimal:
            continue
        regular = e.group.order == n
        for D in invariant_graphs(e.group, directed):
            found.setdefault(D.canonical, D)
            if regular:
                cayley.add(D.canonical)
    graphs = sorted(found.values(), key=lambda D: (D.arcs, D.canonical))
    for D in graphs:
        D.cayley = D.canonical in cayley
    return GraphCensus(n, graphs)


def cayley_count_estimate(G: PermGroup) -> Fraction:
    """2^(a + b/2) / |Aut(G)| for a regular G with a involutions and b other non-identity elements."""
    from .regular import RegularGroup
    if G.degree > ESTIMATE_BOUND:
        raise ValueError(f"automorphism search limited to order {ESTIMATE_BOUND}")
    R = RegularGroup(G)
    orders = R.element_orders
    a = int((orders == 2).sum())
    b = int((orders > 2).sum())
    return Fraction(2 ** (a + b // 2), len(R.automorphisms))
