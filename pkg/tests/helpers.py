from collections import Counter
from itertools import combinations
from math import ceil, log2, sqrt

from hypothesis import strategies as st

from mutexamo.cnf import CnfFormula
from mutexamo.rng import SplitMix64

TRIANGLE_PLUS = CnfFormula(3, [(-1, -2), (-2, -3), (-1, -3), (1, 2, 3)])


def clause_multiset(clauses):
    return Counter(tuple(sorted(c)) for c in clauses)


def random_formula(seed, max_vars=10):
    """A small formula with a mutex-heavy body and a few ordinary clauses."""
    rng = SplitMix64(seed)
    n = 2 + rng.below(max_vars - 1)
    p = rng.random()
    clauses = []
    for u, v in combinations(range(1, n + 1), 2):
        if rng.random() < p:
            clauses.append((-u, -v) if rng.below(2) else (-v, -u))
    for _ in range(rng.below(4)):
        width = 1 + rng.below(min(n, 4))
        vs = list(range(1, n + 1))
        rng.shuffle(vs)
        clauses.append(tuple(v if rng.below(3) else -v for v in vs[:width]))
    order = list(range(len(clauses)))
    rng.shuffle(order)
    return CnfFormula(n, [clauses[i] for i in order])


@st.composite
def mutex_formulas(draw, max_vars=9):
    n = draw(st.integers(1, max_vars))
    pairs = list(combinations(range(1, n + 1), 2))
    mutexes = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    lit = st.integers(1, n).flatmap(lambda v: st.sampled_from([v, -v]))
    other = draw(st.lists(st.lists(lit, min_size=1, max_size=3), max_size=3))
    clauses = [(-u, -v) for u, v in mutexes] + [tuple(c) for c in other]
    perm = draw(st.permutations(range(len(clauses))))
    return CnfFormula(n, [clauses[i] for i in perm])


# Size recurrences written out independently of the encoder code.

def pairwise_size(m):
    return m * (m - 1) // 2, 0


def small_or(rec, m):
    return pairwise_size(m) if m <= 4 else rec(m)


def product_size(m):
    d1 = ceil(sqrt(m))
    while (d1 - 1) ** 2 >= m:
        d1 -= 1
    d2 = -(-m // d1)
    c1, a1 = small_or(product_size, d1)
    c2, a2 = small_or(product_size, d2)
    return 2 * m + c1 + c2, d1 + d2 + a1 + a2


def commander_size(m):
    d = ceil(sqrt(m))
    while (d - 1) ** 2 >= m:
        d -= 1
    sizes = [m // d + (1 if i < m % d else 0) for i in range(d)]
    clauses = sum(1 + g + g * (g - 1) // 2 for g in sizes)
    c, a = small_or(commander_size, d)
    return clauses + c, d + a


EXPECTED_SIZE = {
    "pairwise": pairwise_size,
    "binary": lambda m: (m * ceil(log2(m)), ceil(log2(m))),
    "sequential": lambda m: (3 * m - 4, m - 1),
    "product": product_size,
    "commander": commander_size,
}
