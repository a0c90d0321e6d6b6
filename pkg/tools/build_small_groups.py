"""Regenerate src/transcat/data/small_groups.txt: groups of order <= 31 as regular
permutation groups, numbered as in the standard small-groups library.

Run from the repository root:  python3 tools/build_small_groups.py
"""

import itertools
import sys
from pathlib import Path

from transcat.perm import PermGroup, alternating_group, symmetric_group
from transcat.seeds import write_small_file


class Abstract:
    """A finite group given by an element list and a multiplication function."""

    def __init__(self, elements, mul, gens):
        self.elements = list(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.mul = mul
        self.gens = gens

    def closure(self):
        # put the identity first and order the rest by breadth-first words
        e = self.elements[0]
        seen = [e]
        known = {e}
        i = 0
        while i < len(seen):
            for g in self.gens:
                y = self.mul(seen[i], g)
                if y not in known:
                    known.add(y)
                    seen.append(y)
            i += 1
        assert len(seen) == len(self.elements), "generators do not generate"
        self.elements = seen
        self.index = {x: i for i, x in enumerate(seen)}
        return self

    def regular(self) -> list:
        """Right regular representation of the generators: x -> x g."""
        return [tuple(self.index[self.mul(x, g)] for x in self.elements) for g in self.gens]


def metacyclic(m, n, r, t=0):
    """<x, y | x^m, y^n = x^t, y x y^-1 = x^r> with elements (i, j) = x^i y^j."""
    assert pow(r, n, m) == 1 % m and (r * t - t) % m == 0

    def mul(a, b):
        i, j = a
        k, l = b
        s = i + k * pow(r, j, m)
        if j + l >= n:
            s += t
        return (s % m, (j + l) % n)
    els = [(i, j) for j in range(n) for i in range(m)]
    els.remove((0, 0))
    gens = [g for g in [(1 % m, 0), (0, 1 % n)] if g != (0, 0)]
    return Abstract([(0, 0)] + els, mul, gens).closure()


def cyclic(m):
    return metacyclic(m, 1, 1)


def dihedral(order):
    return metacyclic(order // 2, 2, order // 2 - 1)


def dicyclic(order):
    m = order // 2
    return metacyclic(m, 2, m - 1, m // 2)


def from_perm_group(G: PermGroup):
    E = [tuple(int(v) for v in row) for row in G.elements_array()]
    ident = tuple(range(G.degree))
    E.remove(ident)
    return Abstract([ident] + E, lambda a, b: tuple(b[a[i]] for i in range(len(a))),
                    list(G.generators)).closure()


def direct(*gs):
    elements = list(itertools.product(*[g.elements for g in gs]))

    def mul(a, b):
        return tuple(g.mul(x, y) for g, x, y in zip(gs, a, b))
    ident = tuple(g.elements[0] for g in gs)
    gens = []
    for i, g in enumerate(gs):
        for h in g.gens:
            v = list(ident)
            v[i] = h
            gens.append(tuple(v))
    elements.remove(ident)
    return Abstract([ident] + elements, mul, gens).closure()


def abelian(*ms):
    return direct(*[cyclic(m) for m in ms])


def generalized_dihedral(A: Abstract):
    """A : C2 with the involution acting by inversion (A abelian)."""
    e = A.elements[0]
    inv = {x: next(y for y in A.elements if A.mul(x, y) == e) for x in A.elements}
    inverse = inv.__getitem__
    def mul(a, b):
        x, s = a
        y, t = b
        y2 = inverse(y) if s else y
        return (A.mul(x, y2), s ^ t)
    ident = (A.elements[0], 0)
    els = [(x, s) for s in (0, 1) for x in A.elements]
    els.remove(ident)
    gens = [(g, 0) for g in A.gens] + [(A.elements[0], 1)]
    return Abstract([ident] + els, mul, gens).closure()


def c4c2_c2():
    """(C4 x C2) : C2 with c a c = a b, numbered 16/3: elements a^i b^j c^k."""
    def mul(u, v):
        i, j, k = u
        i2, j2, k2 = v
        # c^k a^i2 = a^i2 b^(k i2) c^k
        return ((i + i2) % 4, (j + j2 + k * i2) % 2, (k + k2) % 2)
    els = [(i, j, k) for k in range(2) for j in range(2) for i in range(4)]
    return Abstract(els, mul, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]).closure()


def matrix_group(p, gens):
    def mul(a, b):
        return tuple(tuple(sum(a[r][s] * b[s][c] for s in range(2)) % p for c in range(2)) for r in range(2))
    I = ((1, 0), (0, 1))
    seen = [I]
    known = {I}
    i = 0
    while i < len(seen):
        for g in gens:
            y = mul(seen[i], g)
            if y not in known:
                known.add(y)
                seen.append(y)
        i += 1
    return Abstract(seen, mul, gens).closure()


def pauli():
    """Central product C4 o D8 = <i I, X, Z> over the Gaussian integers mod 4 phases."""
    # element (phase, x, z) = i^phase X^x Z^z ; Z X = -X Z
    def mul(u, v):
        p, x, z = u
        q, x2, z2 = v
        sign = 2 if (z and x2) else 0
        return ((p + q + sign) % 4, x ^ x2, z ^ z2)
    els = [(p, x, z) for z in range(2) for x in range(2) for p in range(4)]
    return Abstract(els, mul, [(1, 0, 0), (0, 1, 0), (0, 0, 1)]).closure()


def heisenberg(p=3):
    def mul(u, v):
        a, b, c = u
        d, e, f = v
        return ((a + d) % p, (b + e) % p, (c + f + a * e) % p)
    els = [(a, b, c) for c in range(p) for b in range(p) for a in range(p)]
    return Abstract(els, mul, [(1, 0, 0), (0, 1, 0)]).closure()


def c3_d8_v4kernel():
    """C3 : D8 where D8 acts on C3 through a quotient of order 2 with kernel V4 (24/8)."""
    D8 = dihedral(8)
    # D8 = <x, y> with x of order 4; kernel V4 = <x^2, y>, so x inverts C3 and y centralizes it
    def acts(d):
        return d[0] % 2 == 1  # odd power of x

    def mul(u, v):
        a, d = u
        b, e = v
        b2 = (-b) % 3 if acts(d) else b
        return ((a + b2) % 3, D8.mul(d, e))
    ident = (0, D8.elements[0])
    els = [(a, d) for d in D8.elements for a in range(3)]
    els.remove(ident)
    return Abstract([ident] + els, mul, [(1, ident[1])] + [(0, g) for g in D8.gens]).closure()


def groups():
    S3 = dihedral(6)
    D8 = dihedral(8)
    Q8 = dicyclic(8)
    A4 = from_perm_group(alternating_group(4))
    Dic3 = dicyclic(12)
    SL23 = matrix_group(3, [((1, 1), (0, 1)), ((0, 2), (1, 0))])
    out = {
        1: [("1", cyclic(1))],
        2: [("C2", cyclic(2))],
        3: [("C3", cyclic(3))],
        4: [("C4", cyclic(4)), ("C2^2", abelian(2, 2))],
        5: [("C5", cyclic(5))],
        6: [("S3", S3), ("C6", cyclic(6))],
        7: [("C7", cyclic(7))],
        8: [("C8", cyclic(8)), ("C4xC2", abelian(4, 2)), ("D8", D8), ("Q8", Q8),
            ("C2^3", abelian(2, 2, 2))],
        9: [("C9", cyclic(9)), ("C3^2", abelian(3, 3))],
        10: [("D10", dihedral(10)), ("C10", cyclic(10))],
        11: [("C11", cyclic(11))],
        12: [("C3:C4", Dic3), ("C12", cyclic(12)), ("A4", A4), ("D12", dihedral(12)),
             ("C6xC2", abelian(6, 2))],
        13: [("C13", cyclic(13))],
        14: [("D14", dihedral(14)), ("C14", cyclic(14))],
        15: [("C15", cyclic(15))],
        16: [("C16", cyclic(16)), ("C4^2", abelian(4, 4)), ("(C4xC2):C2", c4c2_c2()),
             ("C4:C4", metacyclic(4, 4, 3)), ("C8xC2", abelian(8, 2)), ("M16", metacyclic(8, 2, 5)),
             ("D16", dihedral(16)), ("QD16", metacyclic(8, 2, 3)), ("Q16", dicyclic(16)),
             ("C4xC2^2", abelian(4, 2, 2)), ("C2xD8", direct(cyclic(2), D8)),
             ("C2xQ8", direct(cyclic(2), Q8)), ("C4oD8", pauli()), ("C2^4", abelian(2, 2, 2, 2))],
        17: [("C17", cyclic(17))],
        18: [("D18", dihedral(18)), ("C18", cyclic(18)), ("C3xS3", direct(cyclic(3), S3)),
             ("(C3xC3):C2", generalized_dihedral(abelian(3, 3))),
             ("C6xC3", abelian(6, 3))],
        19: [("C19", cyclic(19))],
        20: [("C5:C4", dicyclic(20)), ("C20", cyclic(20)), ("F20", metacyclic(5, 4, 2)),
             ("D20", dihedral(20)), ("C10xC2", abelian(10, 2))],
        21: [("C7:C3", metacyclic(7, 3, 2)), ("C21", cyclic(21))],
        22: [("D22", dihedral(22)), ("C22", cyclic(22))],
        23: [("C23", cyclic(23))],
        24: [("C3:C8", metacyclic(3, 8, 2)), ("C24", cyclic(24)), ("SL(2,3)", SL23),
             ("C3:Q8", dicyclic(24)), ("C4xS3", direct(cyclic(4), S3)), ("D24", dihedral(24)),
             ("C2x(C3:C4)", direct(cyclic(2), Dic3)), ("(C6xC2):C2", c3_d8_v4kernel()),
             ("C12xC2", abelian(12, 2)), ("C3xD8", direct(cyclic(3), D8)),
             ("C3xQ8", direct(cyclic(3), Q8)), ("S4", from_perm_group(symmetric_group(4))),
             ("C2xA4", direct(cyclic(2), A4)), ("C2^2xS3", direct(abelian(2, 2), S3)),
             ("C6xC2^2", abelian(6, 2, 2))],
        25: [("C25", cyclic(25)), ("C5^2", abelian(5, 5))],
        26: [("D26", dihedral(26)), ("C26", cyclic(26))],
        27: [("C27", cyclic(27)), ("C9xC3", abelian(9, 3)), ("He3", heisenberg(3)),
             ("C9:C3", metacyclic(9, 3, 4)), ("C3^3", abelian(3, 3, 3))],
        28: [("C7:C4", dicyclic(28)), ("C28", cyclic(28)), ("D28", dihedral(28)),
             ("C14xC2", abelian(14, 2))],
        29: [("C29", cyclic(29))],
        30: [("C5xS3", direct(cyclic(5), S3)), ("C3xD10", direct(cyclic(3), dihedral(10))),
             ("D30", dihedral(30)), ("C30", cyclic(30))],
        31: [("C31", cyclic(31))],
    }
    return out


def main():
    data = {}
    for order, lst in groups().items():
        rows = []
        for idx, (name, A) in enumerate(lst, start=1):
            assert len(A.elements) == order, (order, name, len(A.elements))
            rows.append((idx, name, A.regular()))
        data[order] = rows
    path = Path(__file__).resolve().parents[1] / "src" / "transcat" / "data" / "small_groups.txt"
    write_small_file(path, data)
    print("wrote", path, sum(len(v) for v in data.values()), "groups")


if __name__ == "__main__":
    sys.exit(main())
