"""DIMACS CNF reading/writing and mutex clause classification.

Literals are signed ints in the usual DIMACS convention and a clause is a
tuple of literals.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .mutex import MutexNetwork

Clause = tuple[int, ...]


class DimacsError(ValueError):
    pass


class DimacsWarning(UserWarning):
    pass


def normalize_clause(lits: Iterable[int]) -> Clause:
    """Drop repeated literals, keeping first-occurrence order."""
    return tuple(dict.fromkeys(lits))


@dataclass
class CnfFormula:
    num_vars: int
    clauses: list[Clause] = field(default_factory=list)

    def __post_init__(self):
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        self.clauses = [normalize_clause(c) for c in self.clauses]
        for c in self.clauses:
            if not c:
                raise ValueError("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} out of range 1..{self.num_vars}")

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    num_vars = num_clauses = None
    clauses: list[Clause] = []
    current: list[int] = []

    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            # SATLIB files end with "%\n0\n"
            break
        if line.startswith("p"):
            if num_vars is not None:
                raise DimacsError(f"line {lineno}: duplicate header")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise DimacsError(f"line {lineno}: malformed header {line!r}")
            try:
                num_vars, num_clauses = int(parts[2]), int(parts[3])
            except ValueError:
                raise DimacsError(f"line {lineno}: malformed header {line!r}") from None
            if num_vars < 0 or num_clauses < 0:
                raise DimacsError(f"line {lineno}: negative header count")
            continue
        if num_vars is None:
            raise DimacsError(f"line {lineno}: clause before header")
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"line {lineno}: non-integer token {tok!r}") from None
            if lit == 0:
                if not current:
                    raise DimacsError(f"line {lineno}: zero-length clause")
                clauses.append(normalize_clause(current))
                current = []
            elif abs(lit) > num_vars:
                raise DimacsError(f"line {lineno}: literal {lit} exceeds {num_vars} variables")
            else:
                current.append(lit)

    if num_vars is None:
        raise DimacsError("missing 'p cnf' header")
    if current:
        warnings.warn("last clause not terminated by 0", DimacsWarning, stacklevel=2)
        clauses.append(normalize_clause(current))
    if len(clauses) != num_clauses:
        warnings.warn(
            f"header declares {num_clauses} clauses, found {len(clauses)}",
            DimacsWarning,
            stacklevel=2,
        )
    return CnfFormula(num_vars, clauses)


def emit_dimacs(f: CnfFormula, comments: Sequence[str] = ()) -> str:
    out = [f"c {c}\n" for c in comments]
    out.append(f"p cnf {f.num_vars} {len(f.clauses)}\n")
    out.extend(" ".join(map(str, c)) + " 0\n" for c in f.clauses)
    return "".join(out)


def read_dimacs(path) -> CnfFormula:
    with open(path) as fh:
        return parse_dimacs(fh.read())


def write_dimacs(path, f: CnfFormula, comments: Sequence[str] = ()) -> None:
    with open(path, "w") as fh:
        fh.write(emit_dimacs(f, comments))


def classify_mutex(clause: Sequence[int]) -> Optional[tuple[int, int]]:
    """Return ``(u, v)`` with ``u < v`` if the clause is ``-u -v``, else None."""
    if len(clause) != 2:
        return None
    a, b = clause
    if a >= 0 or b >= 0 or a == b:
        return None
    u, v = -a, -b
    return (u, v) if u < v else (v, u)


def split_mutexes(f: CnfFormula):
    """Partition ``f`` into its mutex network and the residual clauses.

    Returns ``(network, residual, duplicates)`` where ``duplicates`` lists the
    mutex clauses dropped because their pair was already seen.
    """
    net = MutexNetwork(f.num_vars)
    residual: list[Clause] = []
    duplicates: list[Clause] = []
    for c in f.clauses:
        pair = classify_mutex(c)
        if pair is None:
            residual.append(c)
        elif not net.add(*pair):
            duplicates.append(c)
    return net, residual, duplicates
