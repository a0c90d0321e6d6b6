"""Regenerate src/transcat/data/primitive_groups.txt from explicit constructions.

Run from the repository root:  python tools/build_primitive_seeds.py
"""

import random
import sys
from pathlib import Path

from transcat import constructions as C
from transcat.blocks import is_primitive
from transcat.lattice import all_subgroup_classes
from transcat.perm import (PermGroup, alternating_group, cyclic_group, symmetric_group,
                           mul)
from transcat.seeds import write_primitive_file

rng = random.Random(1)


def named(name, G):
    return (name, G)


def prime_degree(p):
    out = []
    for d in range(1, p):
        if (p - 1) % d == 0 and d < p - 1:
            out.append(named(f"{p}:{d}" if d > 1 else f"C{p}", C.affine_field_group(p, d)))
    out.append(named(f"AGL(1,{p})", C.affine_field_group(p, p - 1)))
    return out


def affine_nine():
    A = C.agl(3, 2)
    out = []
    for cls in all_subgroup_classes(A):
        H = cls.representative
        if H.is_transitive() and is_primitive(H):
            out.append(H)
    out.sort(key=lambda H: H.order)
    names = {36: "3^2:4", 144: "AGammaL(1,9)", 216: "ASL(2,3)", 432: "AGL(2,3)"}
    res = []
    seventy_two = iter(["3^2:Q8", "3^2:8", "3^2:D8"])
    for H in out:
        nm = names.get(H.order) or next(seventy_two)
        res.append(named(nm, H))
    assert len(res) == 7, len(res)
    return res


def l2_11_on_11(M11):
    """PSL(2,11) inside M11: generated by an 11-cycle and a suitable involution."""
    a = C.from_cycles(11, [tuple(range(11))])
    while True:
        y = C.element_of_order(M11, 2, rng)
        H = PermGroup(11, [a, y])
        if H.order == 660:
            return H


def m11_on_12():
    M11 = C.mathieu11()
    L = l2_11_on_11(M11)
    return C.action_on_conjugates(M11, L)


def seeds():
    out = {}
    out[2] = [named("S2", symmetric_group(2))]
    out[3] = [named("A3", alternating_group(3)), named("S3", symmetric_group(3))]
    out[4] = [named("A4", alternating_group(4)), named("S4", symmetric_group(4))]
    out[5] = prime_degree(5) + [named("A5", alternating_group(5)), named("S5", symmetric_group(5))]
    out[6] = [named("PSL(2,5)", C.psl2(5)), named("PGL(2,5)", C.pgl2(5)),
              named("A6", alternating_group(6)), named("S6", symmetric_group(6))]
    out[7] = prime_degree(7) + [named("L(3,2)", C.psl_n(3, 2)),
                                named("A7", alternating_group(7)), named("S7", symmetric_group(7))]
    out[8] = [named("AGL(1,8)", C.affine_field_group(8, 7)),
              named("AGammaL(1,8)", C.affine_field_group(8, 7, frobenius=True)),
              named("AGL(3,2)", C.agl(2, 3)), named("PSL(2,7)", C.psl2(7)), named("PGL(2,7)", C.pgl2(7)),
              named("A8", alternating_group(8)), named("S8", symmetric_group(8))]
    out[9] = affine_nine() + [named("PSL(2,8)", C.psl2(8)), named("PGammaL(2,8)", C.pgaml2(8)),
                              named("A9", alternating_group(9)), named("S9", symmetric_group(9))]
    psl9 = C.psl2(9)
    frob, diag = C.frobenius_map(9), C.diag_map(9)
    out[10] = [named("A5(10)", C.action_on_subsets(alternating_group(5), 2)),
               named("S5(10)", C.action_on_subsets(symmetric_group(5), 2)),
               named("PSL(2,9)", psl9),
               named("PGL(2,9)", C.pgl2(9)),
               named("S6(10)", PermGroup(10, list(psl9.generators) + [frob])),
               named("M10", PermGroup(10, list(psl9.generators) + [mul(diag, frob)])),
               named("PGammaL(2,9)", C.pgaml2(9)),
               named("A10", alternating_group(10)), named("S10", symmetric_group(10))]
    M11 = C.mathieu11()
    out[11] = prime_degree(11) + [named("L(2,11)", l2_11_on_11(M11)), named("M11", M11),
                                  named("A11", alternating_group(11)), named("S11", symmetric_group(11))]
    out[12] = [named("M11(12)", m11_on_12()), named("M12", C.mathieu12()),
               named("PSL(2,11)", C.psl2(11)), named("PGL(2,11)", C.pgl2(11)),
               named("A12", alternating_group(12)), named("S12", symmetric_group(12))]
    out[13] = prime_degree(13) + [named("L(3,3)", C.psl_n(3, 3)),
                                  named("A13", alternating_group(13)), named("S13", symmetric_group(13))]
    out[14] = [named("PSL(2,13)", C.psl2(13)), named("PGL(2,13)", C.pgl2(13)),
               named("A14", alternating_group(14)), named("S14", symmetric_group(14))]
    return out


def main():
    data = seeds()
    for n, lst in data.items():
        for name, G in lst:
            assert G.degree == n and G.is_transitive() and is_primitive(G), (n, name)
        print(n, len(lst), [G.order for _, G in lst])
    path = Path(__file__).resolve().parents[1] / "src" / "transcat" / "data" / "primitive_groups.txt"
    write_primitive_file(path, data)
    print("wrote", path)


if __name__ == "__main__":
    sys.exit(main())
