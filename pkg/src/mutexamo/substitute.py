"""Rewrite the mutex network of a formula as at-most-one constraints.

The pipeline splits mutex clauses from the rest, runs a clique detector over
them, drops cliques contained in larger ones and encodes what remains.
Residual clauses pass through untouched and come first in the output.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .cnf import Clause, CnfFormula, split_mutexes
from .detect import CliqueClustering, Cluster, run_detector
from .encode import AmoKind, AuxAllocator, encode_amo


@dataclass
class SubstitutionPlan:
    detector: str = "relaxed"
    encoding: str = "binary"
    ordering: str = "original"
    seed: Optional[int] = None
    min_encoded_size: int = 3
    allow_large: bool = False
    tie_break: str = "latest"

    def __post_init__(self):
        self.encoding = AmoKind(self.encoding).value
        if self.min_encoded_size < 3:
            raise ValueError("min_encoded_size must be at least 3")
        if self.ordering == "random" and self.seed is None:
            raise ValueError("random ordering requires a seed")


@dataclass
class SubstitutionReport:
    histogram: dict[int, int] = field(default_factory=dict)
    num_encoded: int = 0
    num_subsumed: int = 0
    num_retained: int = 0
    num_mutexes: int = 0
    num_duplicates: int = 0
    aux_added: int = 0
    vars_in: int = 0
    vars_out: int = 0
    clauses_in: int = 0
    clauses_out: int = 0
    max_clique: int = 0
    elapsed_ms: float = 0.0

    FIELDS = (
        "vars_in", "clauses_in", "vars_out", "clauses_out", "num_mutexes",
        "num_duplicates", "num_encoded", "num_subsumed", "num_retained",
        "aux_added", "max_clique",
    )

    def to_text(self) -> str:
        lines = [f"{k}={getattr(self, k)}" for k in self.FIELDS]
        hist = " ".join(f"{s}:{c}" for s, c in sorted(self.histogram.items()))
        lines.append(f"histogram={hist}")
        lines.append(f"elapsed_ms={self.elapsed_ms:.3f}")
        return "\n".join(lines) + "\n"

    def as_row(self) -> dict:
        return {k: getattr(self, k) for k in self.FIELDS}


def filter_subsumed(clustering, min_size: int = 2) -> list[Cluster]:
    """Clusters of at least ``min_size`` members not contained in a retained one.

    Candidates are visited largest first (ties by creation order), so only a
    larger, already retained cluster can subsume a later one.
    """
    if isinstance(clustering, CliqueClustering):
        ordered = list(clustering)
    else:
        ordered = [Cluster(c) for c in clustering]
    candidates = sorted(
        (c for c in ordered if len(c) >= min_size),
        key=lambda c: -len(c),
    )
    kept: list[Cluster] = []
    by_member: dict[int, list[Cluster]] = {}
    for c in candidates:
        # a superset of c must contain any one of its members
        if any(c <= k for k in by_member.get(min(c), ())):
            continue
        kept.append(c)
        for x in c:
            by_member.setdefault(x, []).append(c)
    return kept


def substitute_amos(f: CnfFormula, plan: Optional[SubstitutionPlan] = None):
    """Return ``(new_formula, report)``.

    Output layout: residual clauses in input order, then one AMO block per
    retained clique of at least ``plan.min_encoded_size`` members (largest
    first), then the remaining retained cliques as pairwise mutexes.

    With the pairwise encoding a mutex shared by two overlapping cliques is
    emitted once, so the result has exactly the input's (deduplicated) mutex
    clauses.
    """
    plan = plan or SubstitutionPlan()
    t0 = time.perf_counter()
    net, residual, duplicates = split_mutexes(f)
    net = net.reorder(plan.ordering, plan.seed)
    clustering = run_detector(net, plan.detector, plan.allow_large, plan.tie_break)

    multi = [c for c in clustering if len(c) >= 2]
    kept = filter_subsumed(clustering)
    alloc = AuxAllocator(f.num_vars)
    out: list[Clause] = list(residual)
    pairwise = plan.encoding == AmoKind.PAIRWISE.value
    emitted: set[Clause] = set()

    def emit_mutexes(members):
        for a, b in _pairs(members):
            cl = (-a, -b)
            if cl not in emitted:
                emitted.add(cl)
                out.append(cl)

    small = []
    report = SubstitutionReport()
    for c in kept:
        if len(c) < plan.min_encoded_size:
            small.append(c)
            continue
        report.num_encoded += 1
        if pairwise:
            emit_mutexes(c)
        else:
            out.extend(encode_amo(sorted(c), plan.encoding, alloc).clauses)
    for c in small:
        emit_mutexes(c)

    report.num_retained = len(small)
    report.num_subsumed = len(multi) - len(kept)
    report.histogram = _histogram(kept)
    report.max_clique = max((len(c) for c in kept), default=0)
    report.num_mutexes = len(net)
    report.num_duplicates = len(duplicates)
    report.aux_added = alloc.num_vars - f.num_vars
    report.vars_in, report.clauses_in = f.num_vars, len(f.clauses)
    report.vars_out, report.clauses_out = alloc.num_vars, len(out)
    report.elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return CnfFormula(alloc.num_vars, out), report


def _pairs(members):
    s = sorted(members)
    return [(a, b) for i, a in enumerate(s) for b in s[i + 1:]]


def _histogram(clusters) -> dict[int, int]:
    hist: dict[int, int] = {}
    for c in clusters:
        hist[len(c)] = hist.get(len(c), 0) + 1
    return dict(sorted(hist.items()))
