"""Command-line front end: ``transcat <command> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .classify import (CatalogueStore, UnsupportedPart, classify_degree, default_out_dir, plan_parts,
                       run_single_part, verify_tables)
from .descent import DESCENT_BUDGET
from .perm import BudgetExceeded
from .seeds import SeedDataError


def _parse_range(text: str) -> list[int]:
    if "-" in text:
        a, b = text.split("-")
        return list(range(int(a), int(b) + 1))
    return [int(text)]


def _emit(text: str, out_dir: Optional[Path], name: str):
    sys.stdout.write(text)
    if out_dir is not None:
        out_dir.mkdir(parents=True, exist_ok=True)
        (out_dir / name).write_text(text)


def _store(args) -> CatalogueStore:
    return CatalogueStore(args.out, seed=args.seed, workers=args.workers, budget=args.budget)


def cmd_classify(args) -> int:
    store = _store(args)
    cat = classify_degree(args.degree, store, resume=args.resume)
    if args.out is None:
        sys.stdout.write(cat.text())
    print(f"degree {cat.degree}: {len(cat)} transitive, {cat.minimal_count} minimal transitive",
          file=sys.stderr)
    return 0


def cmd_graphs(args) -> int:
    from .graphs import transitive_graph_census
    store = _store(args)
    census = transitive_graph_census(args.order, store.get(args.order), directed=args.directed)
    kind = "digraphs" if args.directed else "graphs"
    _emit(census.text(args.seed), args.out, f"{kind}_{args.order:02d}.txt")
    return 0


def cmd_ci(args) -> int:
    from .ci import ci_census, minimal_non_ci, report_text
    reports = ci_census(args.max_order, directed=args.directed)
    text = report_text(reports, args.seed)
    mins = minimal_non_ci(reports, args.max_order)
    text += "# minimal non-CI: " + " ".join(f"{o},{i}" for o, i in mins) + "\n"
    for gid in mins:
        r = reports[gid]
        if r.witness_graph6:
            text += f"# witness {gid[0]},{gid[1]}: " + " ".join(r.witness_graph6) + "\n"
    _emit(text, args.out, f"ci_{args.max_order:02d}.txt")
    return 0


def cmd_elusive(args) -> int:
    from .elusive import elusive_census, report_text
    store = _store(args)
    reports = elusive_census(args.degree, store.get(args.degree), seed=args.seed)
    _emit(report_text(reports, args.seed), args.out, f"elusive_{args.degree:02d}.txt")
    return 0


def cmd_verify(args) -> int:
    store = _store(args)
    rows = verify_tables(_parse_range(args.degrees), store, args.tables, graphs=args.graphs)
    bad = 0
    for n, col, want, got in rows:
        ok = want == got
        bad += not ok
        print(f"{n}\t{col}\t{want}\t{got}\t{'ok' if ok else 'MISMATCH'}")
    print(f"{len(rows) - bad}/{len(rows)} table entries agree", file=sys.stderr)
    return 1 if bad else 0


def cmd_parts(args) -> int:
    store = _store(args)
    if args.list:
        for s in plan_parts(args.degree, store):
            print(f"{s.part_id}\t{s.engine}")
        return 0
    if args.out is None:
        print("parts --run needs an output directory (--out or TRANSCAT_OUT)", file=sys.stderr)
        return 2
    res = run_single_part(args.degree, args.run, store)
    print(f"{res.spec.part_id}\t{res.spec.engine}\t{res.status}\t{len(res.groups)} groups")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=1, help="PRNG seed (default 1)")
    common.add_argument("--workers", type=int, default=1, help="worker processes for parts")
    common.add_argument("--budget", type=int, default=DESCENT_BUDGET,
                        help="largest wreath product searched by descent")
    common.add_argument("--out", type=Path, default=default_out_dir(),
                        help="output directory (default: $TRANSCAT_OUT)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="transcat", description="Transitive permutation groups of small degree.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", parents=[common], help="catalogue the transitive groups of one degree")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--resume", action="store_true", help="reuse finished parts from the manifest")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("graphs", parents=[common], help="vertex-transitive graphs of one order")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--directed", action="store_true")
    s.set_defaults(func=cmd_graphs)

    s = sub.add_parser("ci", parents=[common], help="CI verdicts of all small groups up to an order")
    s.add_argument("--max-order", type=int, required=True)
    s.add_argument("--directed", action="store_true", help="DCI verdicts (digraphs)")
    s.set_defaults(func=cmd_ci)

    s = sub.add_parser("elusive", parents=[common], help="prime-order derangements and 2-closure")
    s.add_argument("--degree", type=int, required=True)
    s.set_defaults(func=cmd_elusive)

    s = sub.add_parser("verify", parents=[common], help="compare computed counts with a table file")
    s.add_argument("--tables", type=Path, default=None, help="table file (default: shipped reference tables)")
    s.add_argument("--degrees", default="2-12", help="degree or range a-b (default 2-12)")
    s.add_argument("--graphs", action="store_true", help="also compare graph counts t and c")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("parts", parents=[common], help="list or run the parts of one degree")
    s.add_argument("--degree", type=int, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--list", action="store_true")
    g.add_argument("--run", metavar="ID")
    s.set_defaults(func=cmd_parts)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.budget < 10**4:
        print("--budget must be at least 10000", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (UnsupportedPart, BudgetExceeded, SeedDataError, KeyError, ValueError) as exc:
        print(f"transcat: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
