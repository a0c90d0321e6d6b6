"""Acceptance criteria, one test each; results are summarised at the end of the run."""

import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

import conftest
from transcat.ci import ci_census, count_cayley_sets, minimal_non_ci, orderly_connection_classes
from transcat.classify import block2_slice, same_classes
from transcat.conjugacy import are_conjugate
from transcat.elusive import elusive_census
from transcat.graphs import transitive_graph_census
from transcat.lattice import all_subgroup_classes
from transcat.perm import PermGroup, class_reps, cycle_type_codes, mul, symmetric_group
from transcat.regular import RegularGroup
from transcat.seeds import small_group_orders, small_groups

# published values, n = 2, 3, ...
G_COUNTS = [1, 2, 5, 5, 16, 7, 50, 34, 45, 8, 301, 9, 63]
M_COUNTS = [1, 1, 2, 1, 4, 1, 5, 2, 6, 1, 17, 1, 6]
T_COUNTS = [2, 2, 4, 3, 8, 4, 14, 9, 22, 8, 74, 14]
C_COUNTS = [2, 2, 4, 3, 8, 4, 14, 9, 20, 8, 74, 14]
MINIMAL_NON_CI_16 = {(16, 1), (12, 4), (8, 2), (16, 8), (16, 9), (16, 7)}
SUITE_LIMIT = 20 * 60


def record(k, ok, detail):
    conftest.ACCEPTANCE[k] = (ok, detail)
    assert ok, detail


def diff(name, want, got, start=2):
    bad = [f"{name}({n})={g} expected {w}" for n, (w, g) in enumerate(zip(want, got), start) if w != g]
    return "; ".join(bad) or f"{name}({start}..{start + len(want) - 1}) all match"


@pytest.mark.slow
def test_criterion_1_transitive_counts(store):
    got = [len(store.get(n)) for n in range(2, 15)]
    record(1, got == G_COUNTS, diff("g", G_COUNTS, got))


@pytest.mark.slow
@pytest.mark.xfail(strict=True, reason="m(8) is 6 here: a sixth minimal transitive group of order 32 is found "
                                       "and independently confirmed, so the published 5 is not reproduced")
def test_criterion_2_minimal_counts(store):
    got = [store.get(n).minimal_count for n in range(2, 15)]
    record(2, got == M_COUNTS, diff("m", M_COUNTS, got))


def test_criterion_3_engines_agree(store):
    bad = []
    sizes = []
    for n in range(4, 13, 2):
        a = block2_slice(n, store, "descent")
        b = block2_slice(n, store, "layered")
        sizes.append(f"{n}:{len(a)}")
        if not same_classes(a, b):
            bad.append(n)
    record(3, not bad, f"block-2 slices {' '.join(sizes)}" + (f"; differ at {bad}" if bad else " agree"))


def test_criterion_4_lattice_oracle(store):
    bad = []
    for n in range(2, 8):
        trans = [c.representative for c in all_subgroup_classes(symmetric_group(n))
                 if c.representative.is_transitive()]
        if not same_classes(trans, store.get(n).groups):
            bad.append(n)
    record(4, not bad, "catalogues equal the transitive lattice slices for n <= 7" if not bad else f"differ at {bad}")


@pytest.mark.slow
def test_criterion_5_graph_census(store):
    t, c = [], []
    for n in range(2, 14):
        census = transitive_graph_census(n, store.get(n))
        t.append(census.t)
        c.append(census.c)
    ok = t == T_COUNTS and c == C_COUNTS
    record(5, ok, diff("t", T_COUNTS, t) + "; " + diff("c", C_COUNTS, c))


def embeds(G, M):
    """Whether a Sym(n)-conjugate of G lies in M: search generator images in M by cycle type."""
    E = M.elements_array()
    codes = M.cycle_type_codes()
    gens = list(G.generators)

    def code(g):
        return int(cycle_type_codes(np.array([g]))[0])

    want = [code(g) for g in gens]

    def dfs(imgs):
        i = len(imgs)
        if i == len(gens):
            H = PermGroup(G.degree, imgs)
            return H.order == G.order and are_conjugate(G, H) is not None
        for row in np.nonzero(codes == want[i])[0]:
            h = tuple(int(x) for x in E[row])
            if all(code(mul(imgs[j], h)) == code(mul(gens[j], gens[i])) for j in range(i)):
                if dfs(imgs + [h]):
                    return True
        return False

    # the first image may be taken up to conjugacy in M
    return any(dfs([g]) for g, _, _ in class_reps(M) if code(g) == want[0])


@pytest.mark.slow
def test_criterion_6_elusive_groups(store):
    elusive = []
    for n in range(2, 15):
        for r in elusive_census(n, store.get(n)):
            if r.elusive:
                elusive.append((n, r.index, r.two_closed))
    cat = store.get(12)
    ok = len(elusive) == 5 and all(n == 12 for n, _, _ in elusive) and not any(tc for _, _, tc in elusive)
    detail = f"elusive {[(n, i) for n, i, _ in elusive]}, 2-closed: {[i for _, i, tc in elusive if tc]}"
    if ok:
        orders = sorted(cat[i].order for _, i, _ in elusive)
        top = max(elusive, key=lambda t: cat[t[1]].order)[1]
        M = cat[top].group
        # the four smaller ones are exactly the proper transitive subgroups of M11
        inside = [e.index for e in cat if e.order < M.order and M.order % e.order == 0 and embeds(e.group, M)]
        ok = orders[-1] == 7920 and sorted(inside) == sorted(i for _, i, _ in elusive if i != top)
        detail += f"; M11 = 12/{top}, its proper transitive subgroups {inside}"
    record(6, ok, detail)


@pytest.mark.xfail(strict=True, reason="D8 = (8,3) is not CI under the counting definition (Cay(D8,{r^2}) and "
                                       "Cay(D8,{s}) are both 4K2), which also rules out D16 and QD16 as minimal")
def test_criterion_7_minimal_non_ci():
    reports = ci_census(16)
    got = set(minimal_non_ci(reports, 16))
    record(7, got == MINIMAL_NON_CI_16,
           f"minimal non-CI {sorted(got)}; expected {sorted(MINIMAL_NON_CI_16)}")


def test_criterion_8_counting_consistency():
    bad, checked = [], 0
    for n in small_group_orders():
        if n > 24:
            break
        for sg in small_groups(n):
            R = RegularGroup(sg.group)
            checked += 1
            if count_cayley_sets(R) != len(orderly_connection_classes(R, sg.id)):
                bad.append(sg.id)
    record(8, not bad, f"{checked} groups of order <= 24 consistent" if not bad else f"mismatch {bad}")


def test_criterion_9_property_suites():
    if conftest.SUITE["tests"]:
        seconds, failed, count = conftest.SUITE["seconds"], conftest.SUITE["failed"], conftest.SUITE["tests"]
    else:
        # run standalone: time the other suites in a fresh process
        here = Path(__file__).parent
        t0 = time.time()
        r = subprocess.run([sys.executable, "-m", "pytest", "-q", "-m", "not slow", "-p", "no:cacheprovider",
                            str(here), "--ignore", str(here / "test_acceptance.py")],
                           capture_output=True, text=True)
        seconds, failed, count = time.time() - t0, int(r.returncode != 0), -1
    ok = failed == 0 and seconds <= SUITE_LIMIT
    record(9, ok, f"property suites {'green' if not failed else 'FAILED'} in {seconds:.0f} s"
                  f" (limit {SUITE_LIMIT} s)" + (f", {count} tests" if count >= 0 else ""))
