"""CNF encodings of the at-most-one constraint.

Every encoder takes an ordered list of distinct input variables and, when it
needs them, draws fresh auxiliary variables from an :class:`AuxAllocator`.
Sizes for ``m`` inputs (``m >= 3``):

==========  =======================  ==========================
kind        clauses                  auxiliaries
==========  =======================  ==========================
pairwise    m(m-1)/2                 0
binary      m * ceil(log2 m)         ceil(log2 m)
sequential  3m - 4                   m - 1
product     2m + AMO(d1) + AMO(d2)   d1 + d2 + aux of the AMOs
commander   sum over groups + AMO(d) d + aux of the AMO
==========  =======================  ==========================

with ``d1 = ceil(sqrt m)``, ``d2 = ceil(m / d1)`` for product and
``d = ceil(sqrt m)`` groups for commander.  Inputs of size 1 or 2 always get
the pairwise form, whatever the requested kind.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from math import isqrt
from typing import Sequence

from .cnf import Clause


class AmoKind(str, enum.Enum):
    PAIRWISE = "pairwise"
    BINARY = "binary"
    SEQUENTIAL = "sequential"
    PRODUCT = "product"
    COMMANDER = "commander"

    def __str__(self):
        return self.value


ENCODINGS = tuple(k.value for k in AmoKind)

# Projections/commander sets of at most this size are encoded pairwise.
RECURSION_THRESHOLD = 4


class AuxAllocator:
    """Hands out fresh variable indices above the original formula's range."""

    def __init__(self, num_vars: int):
        self.next_var = num_vars + 1

    def fresh(self) -> int:
        v = self.next_var
        self.next_var += 1
        return v

    def take(self, count: int) -> list[int]:
        return [self.fresh() for _ in range(count)]

    @property
    def num_vars(self) -> int:
        """Highest index issued so far (or the original count)."""
        return self.next_var - 1


@dataclass
class EncodedAmo:
    kind: AmoKind
    clauses: list[Clause] = field(default_factory=list)
    aux_vars: list[int] = field(default_factory=list)

    def extend(self, other: "EncodedAmo") -> None:
        self.clauses.extend(other.clauses)
        self.aux_vars.extend(other.aux_vars)


def ceil_log2(m: int) -> int:
    return (m - 1).bit_length()


def ceil_sqrt(m: int) -> int:
    r = isqrt(m)
    return r if r * r == m else r + 1


def amo_over_literals(lits: Sequence[int]) -> list[Clause]:
    """Pairwise AMO over arbitrary literals: ``(-a | -b)`` for every pair."""
    seen = set()
    for lit in lits:
        if abs(lit) in seen:
            raise ValueError(f"variable {abs(lit)} occurs twice")
        seen.add(abs(lit))
    return [(-a, -b) for a, b in combinations(lits, 2)]


def pairwise_amo(xs: Sequence[int]) -> EncodedAmo:
    return EncodedAmo(AmoKind.PAIRWISE, amo_over_literals(xs))


def binary_amo(xs: Sequence[int], alloc: AuxAllocator) -> EncodedAmo:
    # position j (0-based) gets code j; bit l of the code drives aux bits[l]
    bits = alloc.take(ceil_log2(len(xs)))
    clauses = [
        (-x, b if (j >> l) & 1 else -b)
        for j, x in enumerate(xs)
        for l, b in enumerate(bits)
    ]
    return EncodedAmo(AmoKind.BINARY, clauses, bits)


def sequential_amo(xs: Sequence[int], alloc: AuxAllocator) -> EncodedAmo:
    """Sequential counter bounded at 1; ``s[i]`` means some of ``xs[:i+1]`` is true."""
    m = len(xs)
    s = alloc.take(m - 1)
    clauses = [(-xs[0], s[0])]
    for i in range(1, m - 1):
        clauses += [(-xs[i], s[i]), (-s[i - 1], s[i]), (-xs[i], -s[i - 1])]
    clauses.append((-xs[m - 1], -s[m - 2]))
    return EncodedAmo(AmoKind.SEQUENTIAL, clauses, s)


def product_dims(m: int) -> tuple[int, int]:
    d1 = ceil_sqrt(m)
    return d1, -(-m // d1)


def product_amo(xs: Sequence[int], alloc: AuxAllocator) -> EncodedAmo:
    m = len(xs)
    d1, d2 = product_dims(m)
    rows, cols = alloc.take(d1), alloc.take(d2)
    clauses: list[Clause] = []
    for j, x in enumerate(xs):
        r, c = divmod(j, d2)
        clauses += [(-x, rows[r]), (-x, cols[c])]
    out = EncodedAmo(AmoKind.PRODUCT, clauses, rows + cols)
    for proj in (rows, cols):
        sub = AmoKind.PRODUCT if len(proj) > RECURSION_THRESHOLD else AmoKind.PAIRWISE
        out.extend(encode_amo(proj, sub, alloc))
    return out


def commander_groups(xs: Sequence[int]) -> list[list[int]]:
    """Contiguous groups, ceil(sqrt m) of them, sizes differing by at most one."""
    m = len(xs)
    d = ceil_sqrt(m)
    small, extra = divmod(m, d)
    groups, start = [], 0
    for i in range(d):
        size = small + (i < extra)
        groups.append(list(xs[start:start + size]))
        start += size
    return groups


def commander_amo(xs: Sequence[int], alloc: AuxAllocator) -> EncodedAmo:
    groups = commander_groups(xs)
    cmds = alloc.take(len(groups))
    clauses: list[Clause] = []
    for c, ys in zip(cmds, groups):
        clauses.append((-c, *ys))
        clauses += amo_over_literals([-c, *ys])
    out = EncodedAmo(AmoKind.COMMANDER, clauses, cmds)
    sub = AmoKind.COMMANDER if len(cmds) > RECURSION_THRESHOLD else AmoKind.PAIRWISE
    out.extend(encode_amo(cmds, sub, alloc))
    return out


_ENCODERS = {
    AmoKind.BINARY: binary_amo,
    AmoKind.SEQUENTIAL: sequential_amo,
    AmoKind.PRODUCT: product_amo,
    AmoKind.COMMANDER: commander_amo,
}


def encode_amo(xs: Sequence[int], kind, alloc: AuxAllocator) -> EncodedAmo:
    """Encode "at most one of ``xs`` is true" with the requested encoding."""
    kind = AmoKind(kind)
    if not xs:
        raise ValueError("AMO over an empty variable list")
    if len(set(xs)) != len(xs):
        raise ValueError("AMO variables must be distinct")
    if len(xs) <= 2 or kind is AmoKind.PAIRWISE:
        out = pairwise_amo(xs)
    else:
        out = _ENCODERS[kind](xs, alloc)
    out.kind = kind
    return out
