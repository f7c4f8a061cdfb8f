"""Benchmark harness: preprocess, hand the result to a SAT solver, record times."""

from __future__ import annotations

import csv
import os
import shlex
import subprocess
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, asdict
from typing import Optional, Sequence

from .cnf import CnfFormula, read_dimacs, write_dimacs
from .oracle import OracleGuardError, solve
from .substitute import SubstitutionPlan, substitute_amos

CSV_COLUMNS = (
    "instance", "detector", "ordering", "seed", "encoding", "vars_in",
    "clauses_in", "vars_out", "clauses_out", "max_clique", "num_encoded",
    "preprocess_ms", "solve_ms", "verdict",
)

VERDICTS = ("SAT", "UNSAT", "UNKNOWN", "TIMEOUT")

# node budget for --fallback-internal
INTERNAL_MAX_NODES = 1 << 22


class VerdictMismatch(RuntimeError):
    pass


@dataclass
class SolverSpec:
    command: str
    timeout: float = 60.0

    def __post_init__(self):
        if self.timeout <= 0:
            raise ValueError("timeout must be positive")

    def argv(self, cnf_path) -> list[str]:
        args = shlex.split(self.command)
        if not any("{cnf}" in a for a in args):
            return args + [str(cnf_path)]
        return [a.replace("{cnf}", str(cnf_path)) for a in args]


@dataclass
class BenchRecord:
    instance: str
    detector: str
    ordering: str
    seed: Optional[int]
    encoding: str
    vars_in: int
    clauses_in: int
    vars_out: int
    clauses_out: int
    max_clique: int
    num_encoded: int
    preprocess_ms: float
    solve_ms: float
    verdict: str

    def as_row(self) -> dict:
        row = asdict(self)
        row["seed"] = "" if self.seed is None else self.seed
        row["preprocess_ms"] = f"{self.preprocess_ms:.3f}"
        row["solve_ms"] = f"{self.solve_ms:.3f}"
        return row


def run_solver(spec: SolverSpec, cnf_path) -> tuple[str, float]:
    """Run an external solver; exit 10 is SAT, 20 UNSAT, anything else UNKNOWN."""
    t0 = time.perf_counter()
    try:
        proc = subprocess.run(
            spec.argv(cnf_path),
            stdout=subprocess.DEVNULL,
            stderr=subprocess.DEVNULL,
            timeout=spec.timeout,
        )
    except subprocess.TimeoutExpired:
        return "TIMEOUT", max((time.perf_counter() - t0) * 1000.0, spec.timeout * 1000.0)
    ms = (time.perf_counter() - t0) * 1000.0
    return {10: "SAT", 20: "UNSAT"}.get(proc.returncode, "UNKNOWN"), ms


def run_internal(f: CnfFormula) -> tuple[str, float]:
    t0 = time.perf_counter()
    try:
        verdict = "UNSAT" if solve(f, INTERNAL_MAX_NODES) is None else "SAT"
    except OracleGuardError:
        verdict = "UNKNOWN"
    return verdict, (time.perf_counter() - t0) * 1000.0


def bench_cells(instances, encodings, orderings, seeds):
    """(instance, ordering, seed, encoding); original ordering ignores seeds."""
    for inst in instances:
        for order in orderings:
            for seed in (seeds if order == "random" else [None]):
                for enc in encodings:
                    yield inst, order, seed, enc


def check_verdicts(records: Sequence[BenchRecord]) -> None:
    decided: dict[str, set[str]] = {}
    for r in records:
        if r.verdict in ("SAT", "UNSAT"):
            decided.setdefault(r.instance, set()).add(r.verdict)
    bad = sorted(i for i, v in decided.items() if len(v) > 1)
    if bad:
        raise VerdictMismatch("SAT/UNSAT disagreement on: " + ", ".join(bad))


def run_bench(
    instances: Sequence[str],
    encodings: Sequence[str],
    detector: str = "relaxed",
    orderings: Sequence[str] = ("original",),
    seeds: Sequence[int] = (0,),
    solver: Optional[SolverSpec] = None,
    jobs: int = 1,
    output=None,
    tie_break: str = "latest",
) -> list[BenchRecord]:
    """Run every cell and write one CSV row per cell to ``output``.

    Without a ``solver`` the internal decision procedure is used.  Raises
    :class:`VerdictMismatch` (after the CSV is written) if two cells of the
    same instance disagree on SAT vs UNSAT.
    """
    formulas = {p: read_dimacs(p) for p in instances}
    cells = list(bench_cells(instances, encodings, orderings, seeds))

    with tempfile.TemporaryDirectory(prefix="mutexamo-bench-") as tmp:
        def run_cell(i, cell):
            inst, order, seed, enc = cell
            f = formulas[inst]
            plan = SubstitutionPlan(detector, enc, order, seed, tie_break=tie_break)
            t0 = time.perf_counter()
            g, rep = substitute_amos(f, plan)
            pre_ms = (time.perf_counter() - t0) * 1000.0
            if solver is None:
                verdict, solve_ms = run_internal(g)
            else:
                path = os.path.join(tmp, f"cell{i}.cnf")
                write_dimacs(path, g)
                verdict, solve_ms = run_solver(solver, path)
                os.unlink(path)
            return BenchRecord(
                str(inst), detector, order, seed, enc, rep.vars_in,
                rep.clauses_in, rep.vars_out, rep.clauses_out, rep.max_clique,
                rep.num_encoded, pre_ms, solve_ms, verdict,
            )

        with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
            records = list(pool.map(run_cell, range(len(cells)), cells))

    if output is not None:
        write_csv(output, records)
    check_verdicts(records)
    return records


def write_csv(path, records: Sequence[BenchRecord]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
        w.writeheader()
        for r in records:
            w.writerow(r.as_row())


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def relative_improvements(rows: Sequence[dict], baseline: str = "pairwise") -> list[dict]:
    """Per-cell improvement of each encoding over the baseline's solve time.

    Rows are grouped by (instance, detector, ordering, seed); the result is
    sorted by encoding, then by relative improvement (best first).
    """
    groups: dict[tuple, dict[str, dict]] = {}
    for r in rows:
        key = (r["instance"], r["detector"], r["ordering"], r["seed"])
        groups.setdefault(key, {})[r["encoding"]] = r
    out = []
    for (inst, det, order, seed), by_enc in groups.items():
        base = by_enc.get(baseline)
        if base is None:
            continue
        base_ms = float(base["solve_ms"])
        for enc, r in by_enc.items():
            if enc == baseline:
                continue
            ms = float(r["solve_ms"])
            delta = base_ms - ms
            out.append({
                "encoding": enc, "instance": inst, "detector": det,
                "ordering": order, "seed": seed,
                "baseline_ms": f"{base_ms:.3f}", "solve_ms": f"{ms:.3f}",
                "abs_improvement_ms": f"{delta:.3f}",
                "rel_improvement": f"{delta / base_ms:.6f}" if base_ms > 0 else "",
            })
    out.sort(key=lambda d: (d["encoding"], -float(d["rel_improvement"] or 0.0)))
    return out
