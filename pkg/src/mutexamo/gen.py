"""Instance generators: random mutex formulas and pigeonhole problems."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .cnf import Clause, CnfFormula
from .rng import SplitMix64

# Published (N, D, p) settings for random mutex formulas.
PRESETS = {
    "mutex-net-8": (256, 8, 0.121),
    "mutex-net-12": (256, 12, 0.205),
}


@dataclass(frozen=True)
class MutexNetParams:
    N: int
    D: int
    p: float
    seed: int = 0
    hidden: bool = False

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("N must be at least 1")
        if not 1 <= self.D <= self.N:
            raise ValueError("D must lie in 1..N")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")

    def comment(self) -> str:
        return (f"mutex-net N={self.N} D={self.D} p={self.p} "
                f"seed={self.seed} hidden={int(self.hidden)}")


@dataclass
class GeneratedInstance:
    formula: CnfFormula
    hidden_cliques: list[frozenset] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)


def blocks(n: int, size: int) -> list[list[int]]:
    """Contiguous blocks of 1..n; the last may be shorter."""
    return [list(range(s, min(s + size, n + 1))) for s in range(1, n + 1, size)]


def gen_mutex_net(params: MutexNetParams) -> GeneratedInstance:
    """Random mutex formula, or its hidden-clique variant.

    One PRNG draw per pair in lexicographic order decides whether that mutex
    is present.  Plain instances list the block disjunctions first and the
    random mutexes after them; hidden-clique instances list the random
    mutexes first, then each block's clique (pairs already emitted skipped).
    """
    rng = SplitMix64(params.seed)
    p = params.p
    rand = [(u, v) for u, v in combinations(range(1, params.N + 1), 2) if rng.random() < p]
    groups = blocks(params.N, params.D)
    clauses: list[Clause] = []
    hidden: list[frozenset] = []
    if not params.hidden:
        clauses += [tuple(g) for g in groups]
        clauses += [(-u, -v) for u, v in rand]
    else:
        seen = set(rand)
        clauses += [(-u, -v) for u, v in rand]
        for g in groups:
            hidden.append(frozenset(g))
            for pair in combinations(g, 2):
                if pair not in seen:
                    seen.add(pair)
                    clauses.append((-pair[0], -pair[1]))
    comments = [params.comment()]
    comments += ["hidden-clique " + " ".join(map(str, sorted(h))) for h in hidden]
    return GeneratedInstance(CnfFormula(params.N, clauses), hidden, comments)


def pigeon_var(i: int, j: int, holes: int) -> int:
    """Variable for pigeon ``i`` (1..holes+1) sitting in hole ``j`` (1..holes)."""
    return (i - 1) * holes + j


def gen_pigeonhole(holes: int) -> CnfFormula:
    """holes+1 pigeons into ``holes`` holes; always unsatisfiable."""
    if holes < 1:
        raise ValueError("need at least one hole")
    k = holes
    clauses: list[Clause] = [
        tuple(pigeon_var(i, j, k) for j in range(1, k + 1)) for i in range(1, k + 2)
    ]
    for j in range(1, k + 1):
        for i, i2 in combinations(range(1, k + 2), 2):
            clauses.append((-pigeon_var(i, j, k), -pigeon_var(i2, j, k)))
    return CnfFormula((k + 1) * k, clauses)


def hole_cliques(holes: int) -> list[frozenset]:
    return [
        frozenset(pigeon_var(i, j, holes) for i in range(1, holes + 2))
        for j in range(1, holes + 1)
    ]


def recovery_score(clustering, hidden) -> float:
    """Fraction of hidden cliques contained in some detected cluster."""
    hidden = [frozenset(h) for h in hidden]
    if not hidden:
        return 1.0
    clusters = [frozenset(c) for c in clustering]
    found = sum(1 for h in hidden if any(h <= c for c in clusters))
    return found / len(hidden)
