from math import sqrt
from statistics import mean, stdev

import pytest

from mutexamo.cnf import emit_dimacs, parse_dimacs, split_mutexes
from mutexamo.detect import CliqueClustering, run_detector
from mutexamo.gen import (
    MutexNetParams,
    blocks,
    gen_mutex_net,
    gen_pigeonhole,
    hole_cliques,
    pigeon_var,
    recovery_score,
)
from mutexamo.oracle import enumerate_models, solve


def test_full_mutexes_unsat():
    inst = gen_mutex_net(MutexNetParams(4, 2, 1.0, seed=3))
    f = inst.formula
    assert f.clauses[:2] == [(1, 2), (3, 4)]
    assert sorted(f.clauses[2:]) == sorted((-u, -v) for u in range(1, 5) for v in range(u + 1, 5))
    assert len(enumerate_models(f)) == 0
    assert inst.hidden_cliques == []


def test_no_mutexes_sat():
    f = gen_mutex_net(MutexNetParams(4, 2, 0.0)).formula
    assert f.clauses == [(1, 2), (3, 4)]
    assert solve(f) is not None


def test_deterministic():
    p = MutexNetParams(40, 8, 0.3, seed=11)
    assert gen_mutex_net(p).formula == gen_mutex_net(p).formula
    assert gen_mutex_net(p).formula != gen_mutex_net(MutexNetParams(40, 8, 0.3, seed=12)).formula


def test_random_mutexes_in_lexicographic_order():
    f = gen_mutex_net(MutexNetParams(30, 5, 0.4, seed=2)).formula
    pairs = [(-c[0], -c[1]) for c in f.clauses if c[0] < 0]
    assert pairs == sorted(pairs)


def test_mutex_count_expectation():
    N, p = 40, 0.2
    counts = [len(split_mutexes(gen_mutex_net(MutexNetParams(N, 8, p, seed=s)).formula)[0])
              for s in range(100)]
    expected = p * N * (N - 1) / 2
    se = stdev(counts) / sqrt(len(counts))
    assert abs(mean(counts) - expected) <= 5 * se


def test_last_block_shorter():
    assert blocks(10, 4) == [[1, 2, 3, 4], [5, 6, 7, 8], [9, 10]]


def test_hidden_layout():
    inst = gen_mutex_net(MutexNetParams(9, 3, 0.5, seed=4, hidden=True))
    assert inst.hidden_cliques == [frozenset({1, 2, 3}), frozenset({4, 5, 6}), frozenset({7, 8, 9})]
    assert all(len(c) == 2 and c[0] < 0 and c[1] < 0 for c in inst.formula.clauses)
    net, _, dups = split_mutexes(inst.formula)
    assert dups == []
    for h in inst.hidden_cliques:
        assert net.is_clique(h)
    assert inst.comments[0] == "mutex-net N=9 D=3 p=0.5 seed=4 hidden=1"
    assert inst.comments[1:] == ["hidden-clique 1 2 3", "hidden-clique 4 5 6", "hidden-clique 7 8 9"]


def test_hidden_random_mutexes_come_first():
    inst = gen_mutex_net(MutexNetParams(12, 4, 0.3, seed=8, hidden=True))
    plain = gen_mutex_net(MutexNetParams(12, 4, 0.3, seed=8))
    rand = [c for c in plain.formula.clauses if c[0] < 0]
    assert inst.formula.clauses[:len(rand)] == rand


@pytest.mark.parametrize("seed", range(5))
def test_hidden_exact_recovers_all(seed):
    inst = gen_mutex_net(MutexNetParams(20, 5, 0.0, seed=seed, hidden=True))
    net, _, _ = split_mutexes(inst.formula)
    assert recovery_score(run_detector(net, "exact"), inst.hidden_cliques) == 1.0


def test_comment_round_trip():
    inst = gen_mutex_net(MutexNetParams(6, 3, 0.5, seed=1))
    text = emit_dimacs(inst.formula, inst.comments)
    assert text.startswith("c mutex-net N=6 D=3 p=0.5 seed=1 hidden=0\n")
    assert parse_dimacs(text) == inst.formula


@pytest.mark.parametrize("args", [(0, 1, 0.1), (4, 5, 0.1), (4, 0, 0.1), (4, 2, 1.5), (4, 2, -0.1)])
def test_invalid_params(args):
    with pytest.raises(ValueError):
        MutexNetParams(*args)


def test_pigeonhole_one_hole():
    f = gen_pigeonhole(1)
    assert f.num_vars == 2
    assert f.clauses == [(1,), (2,), (-1, -2)]
    assert solve(f) is None


def test_pigeonhole_two_holes():
    f = gen_pigeonhole(2)
    assert f.num_vars == 6
    assert len(f.clauses) == 3 + 2 * 3


@pytest.mark.parametrize("k", [1, 2, 3])
def test_pigeonhole_unsat(k):
    assert len(enumerate_models(gen_pigeonhole(k))) == 0


def test_pigeonhole_hole_cliques():
    k = 4
    net, residual, _ = split_mutexes(gen_pigeonhole(k))
    assert len(residual) == k + 1
    for h in hole_cliques(k):
        assert len(h) == k + 1 and net.is_clique(h)
    assert len(net) == k * (k + 1) * k // 2
    assert pigeon_var(5, 4, 4) == 20


def test_pigeonhole_rejects_zero():
    with pytest.raises(ValueError):
        gen_pigeonhole(0)


def test_recovery_score():
    hidden = [{1, 2, 3}, {4, 5, 6}]
    assert recovery_score([{1, 2, 3}, {4, 5, 6}], hidden) == 1.0
    assert recovery_score(CliqueClustering([{x} for x in range(1, 7)]), hidden) == 0.0
    assert recovery_score([{1, 2, 3, 4}], [{1, 2, 3}]) == 1.0
    assert recovery_score([{1, 2, 3}], hidden) == 0.5
    assert recovery_score([{1}], []) == 1.0
