"""Exhaustive ground truth for small instances.

Model enumeration projected onto a set of variables (everything else is
existentially quantified), a plain decision procedure used as a fallback
solver, and brute-force clique enumeration.  All guards raise
:class:`OracleGuardError` instead of truncating.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .cnf import CnfFormula
from .mutex import MutexNetwork

MAX_PROJECTED_VARS = 20
MAX_NODES = 1 << 24
MAX_CLIQUE_VARS = 12
MAX_TABLE_VARS = 20


class OracleGuardError(RuntimeError):
    pass


class ModelSet:
    """Assignments over ``variables``; bit ``i`` of a model is ``variables[i]``."""

    def __init__(self, variables: Sequence[int], models: Iterable[int] = ()):
        self.variables = tuple(variables)
        self.models = frozenset(models)

    def __eq__(self, other):
        if not isinstance(other, ModelSet):
            return NotImplemented
        return self.variables == other.variables and self.models == other.models

    def __hash__(self):
        return hash((self.variables, self.models))

    def __len__(self):
        return len(self.models)

    def __contains__(self, assignment) -> bool:
        if isinstance(assignment, int):
            return assignment in self.models
        return self._mask(assignment) in self.models

    def _mask(self, values) -> int:
        if isinstance(values, str):
            values = [ch == "1" for ch in values]
        return sum(1 << i for i, b in enumerate(values) if b)

    def as_strings(self) -> set[str]:
        """Models as '0'/'1' strings, first variable leftmost."""
        n = len(self.variables)
        return {"".join("1" if m >> i & 1 else "0" for i in range(n)) for m in self.models}

    def assignments(self) -> Iterator[dict[int, bool]]:
        for m in sorted(self.models):
            yield {v: bool(m >> i & 1) for i, v in enumerate(self.variables)}

    def __repr__(self):
        return f"ModelSet(vars={len(self.variables)}, models={len(self.models)})"


class _Search:
    """DPLL state: assignment array, trail and occurrence lists."""

    def __init__(self, f: CnfFormula, max_nodes: int):
        self.n = f.num_vars
        self.clauses = f.clauses
        self.val = [0] * (self.n + 1)
        self.trail: list[int] = []
        # occ[lit] -> clauses containing -lit, i.e. those that may become unit
        # once lit is set true
        self.watch: dict[int, list[tuple[int, ...]]] = {}
        for c in self.clauses:
            for lit in c:
                self.watch.setdefault(-lit, []).append(c)
        self.nodes = 0
        self.max_nodes = max_nodes

    def value(self, lit: int) -> int:
        v = self.val[abs(lit)]
        return v if lit > 0 else -v

    def assign(self, lit: int) -> bool:
        """Set ``lit`` true and propagate; False on conflict."""
        val = self.val
        head = len(self.trail)
        val[abs(lit)] = 1 if lit > 0 else -1
        self.trail.append(lit)
        while head < len(self.trail):
            t = self.trail[head]
            head += 1
            for c in self.watch.get(t, ()):
                unit = 0
                free = 0
                for l in c:
                    x = val[abs(l)]
                    if x == 0:
                        free += 1
                        unit = l
                        if free > 1:
                            break
                    elif (x > 0) == (l > 0):
                        free = -1
                        break
                if free == 0:
                    return False
                if free == 1:
                    val[abs(unit)] = 1 if unit > 0 else -1
                    self.trail.append(unit)
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.val[abs(self.trail.pop())] = 0

    def initial(self) -> bool:
        for c in self.clauses:
            if len(c) == 1 and self.value(c[0]) == 0:
                if not self.assign(c[0]):
                    return False
            elif len(c) == 1 and self.value(c[0]) < 0:
                return False
        return True

    def open_var(self) -> int:
        """An unassigned variable of some unsatisfied clause, 0 if none."""
        val = self.val
        for c in self.clauses:
            pick = 0
            for l in c:
                x = val[abs(l)]
                if x == 0:
                    pick = pick or abs(l)
                elif (x > 0) == (l > 0):
                    break
            else:
                if pick:
                    return pick
        return 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise OracleGuardError(f"search exceeded {self.max_nodes} branch nodes")

    def satisfiable(self) -> bool:
        var = self.open_var()
        if var == 0:
            return True
        self.tick()
        for lit in (-var, var):
            mark = len(self.trail)
            ok = self.assign(lit) and self.satisfiable()
            if ok:
                return True
            self.undo(mark)
        return False


def _project_free(free: list[int], base: int) -> Iterator[int]:
    for bits in product((0, 1), repeat=len(free)):
        m = base
        for b, pos in zip(bits, free):
            if b:
                m |= 1 << pos
        yield m


def enumerate_models(f: CnfFormula, project_to: Optional[Sequence[int]] = None,
                     max_nodes: int = MAX_NODES) -> ModelSet:
    """All projections of satisfying assignments of ``f`` onto ``project_to``.

    Defaults to projecting onto every variable of ``f``.
    """
    proj = list(range(1, f.num_vars + 1)) if project_to is None else list(project_to)
    if len(proj) > MAX_PROJECTED_VARS:
        raise OracleGuardError(f"projection onto {len(proj)} variables exceeds {MAX_PROJECTED_VARS}")
    for v in proj:
        if not 1 <= v <= f.num_vars:
            raise ValueError(f"projected variable {v} not in formula")
    s = _Search(f, max_nodes)
    models: set[int] = set()
    if not s.initial():
        return ModelSet(proj)

    def rec(i: int) -> None:
        while i < len(proj) and s.val[proj[i]] != 0:
            i += 1
        if i == len(proj):
            mark = len(s.trail)
            if s.satisfiable():
                models.add(sum(1 << k for k, v in enumerate(proj) if s.val[v] > 0))
            s.undo(mark)
            return
        if s.open_var() == 0:
            # every clause is satisfied: remaining projected vars are free
            base = sum(1 << k for k, v in enumerate(proj) if s.val[v] > 0)
            free = [k for k in range(i, len(proj)) if s.val[proj[k]] == 0]
            models.update(_project_free(free, base))
            return
        s.tick()
        for lit in (-proj[i], proj[i]):
            mark = len(s.trail)
            if s.assign(lit):
                rec(i + 1)
            s.undo(mark)

    rec(0)
    return ModelSet(proj, models)


def enumerate_models_table(f: CnfFormula, project_to: Optional[Sequence[int]] = None) -> ModelSet:
    """Same as :func:`enumerate_models`, by walking the full truth table."""
    n = f.num_vars
    if n > MAX_TABLE_VARS:
        raise OracleGuardError(f"truth table over {n} variables exceeds {MAX_TABLE_VARS}")
    proj = list(range(1, n + 1)) if project_to is None else list(project_to)
    masks = [
        (sum(1 << (l - 1) for l in c if l > 0), sum(1 << (-l - 1) for l in c if l < 0))
        for c in f.clauses
    ]
    full = (1 << n) - 1
    models = set()
    for a in range(1 << n):
        na = full & ~a
        if all(pos & a or neg & na for pos, neg in masks):
            models.add(sum(1 << k for k, v in enumerate(proj) if a >> (v - 1) & 1))
    return ModelSet(proj, models)


def projected_equivalent(f1: CnfFormula, f2: CnfFormula, original_n: int,
                         max_nodes: int = MAX_NODES) -> bool:
    proj = range(1, original_n + 1)
    return enumerate_models(f1, proj, max_nodes) == enumerate_models(f2, proj, max_nodes)


def solve(f: CnfFormula, max_nodes: int = MAX_NODES) -> Optional[dict[int, bool]]:
    """A satisfying assignment of ``f`` or None if unsatisfiable."""
    s = _Search(f, max_nodes)
    if not s.initial() or not s.satisfiable():
        return None
    return {v: s.val[v] > 0 for v in range(1, f.num_vars + 1)}


def all_cliques_bruteforce(net: MutexNetwork) -> set[frozenset]:
    """Every nonempty vertex subset that is a clique, by checking all 2**n subsets."""
    n = net.num_vars
    if n > MAX_CLIQUE_VARS:
        raise OracleGuardError(f"clique enumeration over {n} variables exceeds {MAX_CLIQUE_VARS}")
    adj = [sum(1 << (y - 1) for y in net.adj[x]) for x in range(1, n + 1)]
    found = set()
    for s in range(1, 1 << n):
        members = [i for i in range(n) if s >> i & 1]
        if all((s & ~(1 << i)) & ~adj[i] == 0 for i in members):
            found.add(frozenset(i + 1 for i in members))
    return found
