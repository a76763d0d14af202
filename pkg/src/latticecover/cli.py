"""Command line interface.

Exit codes: 0 success, 1 usage or input error, 2 verification failure,
3 search exhausted without reaching the requested size.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from collections import defaultdict
from pathlib import Path

from . import __version__
from .bounds import bounds_report, bounds_sweep, default_known, summary_check, summary_limit
from .errors import LatticeError
from .exact import DEFAULT_CAP, KNOWN_CLASS_COUNTS, default_jobs, solve_exact, t_min
from .geometry import Solution
from .heuristic import DEFAULT_SEED, SearchConfig, best_upper_bound_search
from .io import (
    SolutionRecord,
    format_solution_line,
    load_records,
    record_to_json,
    corpus_path,
    verify_corpus,
)
from .render import plot_bounds, plot_verification, write_svg, write_table
from .symmetry import classify

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_NOT_FOUND = 0, 1, 2, 3
STRATEGY_NAMES = {"uniform": "uniform-random", "symmetric": "symmetric-pairs"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _records(path: str):
    p = Path(path)
    if not p.exists() and p.name in ("table1", "table1.txt"):
        p = corpus_path()
    return load_records(p)


def _known_from(path):
    known = dict(default_known())
    if path:
        for rec in _records(path):
            S = rec.solution()
            if rec.n not in known or len(S) < len(known[rec.n]):
                known[rec.n] = S
    return known


def cmd_solve_exact(args, out):
    jobs = args.jobs or default_jobs()
    if args.t is not None:
        if args.n > args.cap:
            raise LatticeError(f"n={args.n} exceeds the exact-search cap of {args.cap}")
        classes = solve_exact(args.n, args.t, jobs)
        print(f"n={args.n} t={args.t}: {len(classes)} classes", file=out)
        t = args.t
    else:
        res = t_min(args.n, cap=args.cap, jobs=jobs)
        classes = res.classes
        t = res.t_min
        status = "proven" if res.proven else "not proven"
        print(f"t({args.n}) = {t}, {len(classes)} classes ({status}, {res.subsets_examined} subsets examined)", file=out)
        expected = KNOWN_CLASS_COUNTS.get(args.n)
        if expected is not None and expected != len(classes):
            print(f"warning: expected {expected} classes", file=sys.stderr)
    lines = [
        format_solution_line(SolutionRecord.from_solution(c.representative, f"orbit {c.orbit_size}"))
        for c in classes
    ]
    if args.out:
        Path(args.out).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    else:
        for line in lines:
            print(line, file=out)
    return EXIT_OK


def cmd_solve_heuristic(args, out):
    config = SearchConfig(
        strategy=STRATEGY_NAMES[args.strategy],
        target_t=args.t,
        budget=args.budget,
        seed=args.seed,
        restarts=args.restarts,
        improve_rounds=args.improve_rounds,
    )
    t_ub, witness = best_upper_bound_search(args.n, config, jobs=args.jobs or default_jobs())
    if t_ub > args.t:
        print(f"not found: best cover for n={args.n} has {t_ub} vertices", file=out)
        print(format_solution_line(SolutionRecord.from_solution(witness, "heuristic")), file=out)
        return EXIT_NOT_FOUND
    print(f"t({args.n}) <= {t_ub}", file=out)
    print(format_solution_line(SolutionRecord.from_solution(witness, f"heuristic seed={args.seed}")), file=out)
    return EXIT_OK


def _report_json(rep):
    return {
        "n": rep.n,
        "best": rep.best.value,
        "best_method": rep.best.method,
        "summary_limit": summary_limit(rep.n),
        "summary_check": summary_check(rep.n, rep.best.value),
        "log_base": "natural (assumed)",
        "entries": [
            {
                "method": e.method,
                "bound": e.value,
                "formula": e.formula,
                "witness": None if e.witness is None else record_to_json(SolutionRecord.from_solution(e.witness, e.method)),
            }
            for e in rep.entries
        ],
    }


def cmd_bounds(args, out):
    known = _known_from(args.known)
    if args.out:
        reports = bounds_sweep(args.n, known)
        rep = reports[args.n]
    else:
        rep = bounds_report(args.n, known)
    if args.json:
        json.dump(_report_json(rep), out, indent=2)
        out.write("\n")
    else:
        width = max(len(e.method) for e in rep.entries)
        print(f"bounds for n={rep.n}", file=out)
        print(f"{'method':<{width}}  {'bound':>5}  {'formula':>7}", file=out)
        for e in rep.entries:
            formula = "" if e.formula is None else str(e.formula)
            print(f"{e.method:<{width}}  {e.value:>5}  {formula:>7}", file=out)
        best = rep.best
        print(f"best: {best.value} ({best.method})", file=out)
        lim = summary_limit(rep.n)
        print(
            f"summary: {best.value} < (n+1)^(2/3) ln(n+1) = {lim:.3f} is {summary_check(rep.n, best.value)}"
            " [natural log assumed]",
            file=out,
        )
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        rows = [
            (n, e.method, e.value, "" if e.formula is None else e.formula)
            for n, r in reports.items()
            for e in r.entries
        ]
        write_table(d / "bounds.tsv", ["n", "method", "bound", "formula"], rows)
        small = {n: len(S) for n, S in known.items() if 2 <= n <= args.n}
        plot_bounds(reports, d / "bounds.png", small)
    return EXIT_OK


def cmd_verify(args, out):
    records = _records(args.file)
    report = verify_corpus(records, jobs=args.jobs or default_jobs())
    print(f"{'n':>4} {'claimed':>7} {'actual':>6} {'cover':>5} {'lines':>6} {'orbit':>5}  status", file=out)
    for c in report.checks:
        print(
            f"{c.n:>4} {c.claimed:>7} {c.actual:>6} {str(c.is_cover):>5} {c.line_count:>6} {c.orbit_size:>5}  {c.reason}",
            file=out,
        )
    print(report.summary(), file=out)
    if args.out:
        d = Path(args.out)
        d.mkdir(parents=True, exist_ok=True)
        rows = [
            (c.n, c.claimed, c.actual, int(c.is_cover), c.line_count, c.orbit_size, int(c.passed),
             int(summary_check(c.n, c.actual)) if c.n >= 2 else "")
            for c in report.checks
        ]
        header = ["n", "claimed", "actual", "is_cover", "lines", "orbit", "pass", "summary_check"]
        write_table(d / "verify.tsv", header, rows)
        plot_verification(report, d / "verify.png")
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_render(args, out):
    d = Path(args.out)
    d.mkdir(parents=True, exist_ok=True)
    counts = defaultdict(int)
    for rec in _records(args.file):
        counts[rec.n] += 1
        name = d / f"n{rec.n}_t{len(rec.vertices)}_{counts[rec.n]}.svg"
        write_svg(rec.solution(), name, show_all_lines=args.all_lines, scale=args.scale)
        print(name, file=out)
    return EXIT_OK


def cmd_classify(args, out):
    groups = defaultdict(list)
    for rec in _records(args.file):
        groups[rec.n].append(rec.solution())
    for n in sorted(groups):
        classes = classify(groups[n])
        print(f"n={n}: {len(groups[n])} solutions, {len(classes)} classes", file=out)
        for c in classes:
            print(format_solution_line(SolutionRecord.from_solution(c.representative, f"orbit {c.orbit_size}")), file=out)
    return EXIT_OK


def build_parser():
    p = _Parser(prog="latticecover", description="Minimum line-spanning covers of square lattices.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve-exact", help="exhaustive search for t(n) and its congruence classes")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int)
    s.add_argument("--jobs", type=int, default=0)
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve_exact)

    s = sub.add_parser("solve-heuristic", help="Monte Carlo search for a cover of at most T vertices")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--budget", type=int, default=1_000_000)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--strategy", choices=sorted(STRATEGY_NAMES), default="symmetric")
    s.add_argument("--restarts", type=int, default=16)
    s.add_argument("--improve-rounds", type=int, default=10_000)
    s.add_argument("--jobs", type=int, default=0)
    s.set_defaults(func=cmd_solve_heuristic)

    s = sub.add_parser("bounds", help="constructive upper bounds for one n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--known", help="solution file with extra witnesses for the recursions")
    s.add_argument("--json", action="store_true")
    s.add_argument("--out", help="directory for bounds.tsv and bounds.png over 2..n")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("verify", help="verify a corpus of solution records")
    s.add_argument("file")
    s.add_argument("--jobs", type=int, default=0)
    s.add_argument("--out", help="directory for verify.tsv and verify.png")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("render", help="draw each record as an SVG file")
    s.add_argument("file")
    s.add_argument("--out", required=True)
    s.add_argument("--all-lines", action="store_true")
    s.add_argument("--scale", type=float, default=24.0)
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("classify", help="group records into congruence classes")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args, out)
    except (LatticeError, OSError, json.JSONDecodeError) as exc:
        print(f"latticecover: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main_exit():
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
