"""Command-line driver.

Exit codes: 0 ok, 1 usage, 2 I/O or parse error, 3 verification failure,
4 oracle/detector guard exceeded.
"""

from __future__ import annotations

import argparse
import csv
import sys
import time

from . import bench
from .cnf import DimacsError, read_dimacs, split_mutexes, write_dimacs, emit_dimacs
from .detect import DETECTORS, TIE_BREAKS, DetectorGuardError, run_detector
from .encode import ENCODINGS
from .gen import MutexNetParams, gen_mutex_net, gen_pigeonhole
from .mutex import ORDERINGS
from .oracle import OracleGuardError, projected_equivalent
from .substitute import SubstitutionPlan, filter_subsumed, substitute_amos

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VERIFY, EXIT_GUARD = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _encoding_list(text: str) -> list[str]:
    if text == "all":
        return list(ENCODINGS)
    names = [t.strip() for t in text.split(",") if t.strip()]
    for n in names:
        if n not in ENCODINGS:
            raise argparse.ArgumentTypeError(f"unknown encoding {n!r}")
    return names


def _add_detection_flags(p, seed_default=0):
    p.add_argument("--detector", choices=DETECTORS, default="relaxed")
    p.add_argument("--order", choices=ORDERINGS, default="original")
    p.add_argument("--seed", type=int, default=seed_default)
    p.add_argument("--tie-break", choices=TIE_BREAKS, default="latest",
                   help="which of several equally large clusters the relaxed detector grows")
    p.add_argument("--allow-large", action="store_true",
                   help="lift the 20-variable limit of the exact detector")


def _plan(args, encoding) -> SubstitutionPlan:
    return SubstitutionPlan(
        detector=args.detector,
        encoding=encoding,
        ordering=args.order,
        seed=args.seed,
        allow_large=args.allow_large,
        tie_break=args.tie_break,
    )


def cmd_preprocess(args) -> int:
    f = read_dimacs(args.input)
    g, report = substitute_amos(f, _plan(args, args.encoding))
    comments = [
        f"mutexamo preprocess encoding={args.encoding} detector={args.detector} "
        f"order={args.order} seed={args.seed}"
    ]
    if args.output == "-":
        sys.stdout.write(emit_dimacs(g, comments))
    else:
        write_dimacs(args.output, g, comments)
    out = sys.stderr if args.output == "-" else sys.stdout
    out.write(report.to_text())
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.kind == "pigeonhole":
        if args.K is None:
            raise UsageError("pigeonhole needs -K")
        f = gen_pigeonhole(args.K)
        comments = [f"pigeonhole K={args.K}"]
    else:
        if args.N is None or args.D is None or args.p is None:
            raise UsageError("mutex-net needs -N, -D and -p")
        try:
            params = MutexNetParams(args.N, args.D, args.p, args.seed, args.hidden)
        except ValueError as e:
            raise UsageError(str(e)) from None
        inst = gen_mutex_net(params)
        f, comments = inst.formula, inst.comments
    if args.output == "-":
        sys.stdout.write(emit_dimacs(f, comments))
    else:
        write_dimacs(args.output, f, comments)
    return EXIT_OK


def cmd_cliques(args) -> int:
    f = read_dimacs(args.input)
    net, _, _ = split_mutexes(f)
    net = net.reorder(args.order, args.seed)
    t0 = time.perf_counter()
    clustering = run_detector(net, args.detector, args.allow_large, args.tie_break)
    kept = filter_subsumed(clustering)
    elapsed = (time.perf_counter() - t0) * 1000.0
    hist: dict[int, int] = {}
    for c in kept:
        hist[len(c)] = hist.get(len(c), 0) + 1
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(("size", "count"))
    for size in sorted(hist, reverse=True):
        w.writerow((size, hist[size]))
    if args.dump:
        with open(args.dump, "w") as fh:
            for c in kept:
                fh.write(" ".join(map(str, sorted(c))) + "\n")
    print(f"detected in {elapsed:.3f} ms", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    f = read_dimacs(args.input)
    if args.candidate:
        candidates = [("file " + args.candidate, read_dimacs(args.candidate))]
    else:
        candidates = [(enc, substitute_amos(f, _plan(args, enc))[0]) for enc in args.encoding]
    status = EXIT_OK
    for label, g in candidates:
        ok = projected_equivalent(f, g, f.num_vars)
        print(f"{label}: {'equivalent' if ok else 'NOT equivalent'}")
        if not ok:
            status = EXIT_VERIFY
    return status


def cmd_bench(args) -> int:
    if args.solver is None and not args.fallback_internal:
        raise UsageError("bench needs --solver or --fallback-internal")
    solver = None if args.solver is None else bench.SolverSpec(args.solver, args.timeout)
    records = bench.run_bench(
        args.instances,
        args.encoding,
        detector=args.detector,
        orderings=args.order,
        seeds=args.seed,
        solver=solver,
        jobs=args.jobs,
        output=args.output,
        tie_break=args.tie_break,
    )
    if args.output is None:
        w = csv.DictWriter(sys.stdout, fieldnames=bench.CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow(r.as_row())
    return EXIT_OK


def cmd_report(args) -> int:
    rows = bench.relative_improvements(bench.read_csv(args.csv), args.baseline)
    fields = ["encoding", "instance", "detector", "ordering", "seed", "baseline_ms",
              "solve_ms", "abs_improvement_ms", "rel_improvement"]
    fh = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        w = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    finally:
        if fh is not sys.stdout:
            fh.close()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mutexamo", description="Detect mutex cliques in CNF and rewrite them as at-most-one constraints.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("preprocess", help="rewrite a DIMACS file")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True, help="output DIMACS path, '-' for stdout")
    p.add_argument("--encoding", choices=ENCODINGS, default="binary")
    _add_detection_flags(p)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("gen", help="generate an instance")
    p.add_argument("kind", choices=("mutex-net", "pigeonhole"))
    p.add_argument("-N", type=int, help="variables (mutex-net)")
    p.add_argument("-D", type=int, help="disjunction / hidden clique size (mutex-net)")
    p.add_argument("-p", type=float, help="mutex probability (mutex-net)")
    p.add_argument("-K", type=int, help="holes (pigeonhole)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--hidden", action="store_true", help="plant cliques instead of disjunctions")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("cliques", help="print the detected clique-size histogram")
    p.add_argument("input")
    p.add_argument("--dump", help="write the non-subsumed clusters, one per line")
    _add_detection_flags(p)
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser("verify", help="check that substitution keeps the model set")
    p.add_argument("input")
    p.add_argument("--encoding", type=_encoding_list, default=list(ENCODINGS),
                   help="comma-separated encodings or 'all' (default)")
    p.add_argument("--candidate", help="compare against this DIMACS file instead of substituting")
    _add_detection_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a solver over preprocessed instances")
    p.add_argument("instances", nargs="+")
    p.add_argument("--solver", help="solver command; '{cnf}' is replaced by the file path")
    p.add_argument("--timeout", type=float, default=60.0)
    p.add_argument("--encoding", type=_encoding_list, default=list(ENCODINGS))
    p.add_argument("--detector", choices=DETECTORS, default="relaxed")
    p.add_argument("--order", choices=ORDERINGS, nargs="+", default=["original"])
    p.add_argument("--seed", type=int, nargs="+", default=[0])
    p.add_argument("--tie-break", choices=TIE_BREAKS, default="latest")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--output", help="CSV path (stdout if omitted)")
    p.add_argument("--fallback-internal", action="store_true",
                   help="solve with the built-in procedure when no --solver is given")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("report", help="per-instance improvement over the pairwise baseline")
    p.add_argument("csv")
    p.add_argument("--baseline", default="pairwise", choices=ENCODINGS)
    p.add_argument("--output")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"mutexamo: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, DimacsError) as e:
        print(f"mutexamo: {e}", file=sys.stderr)
        return EXIT_IO
    except bench.VerdictMismatch as e:
        print(f"mutexamo: {e}", file=sys.stderr)
        return EXIT_VERIFY
    except (OracleGuardError, DetectorGuardError) as e:
        print(f"mutexamo: {e}", file=sys.stderr)
        return EXIT_GUARD


if __name__ == "__main__":
    sys.exit(main())
