from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from mutexamo.detect import (
    CliqueClustering,
    CliqueDetector,
    DetectorGuardError,
    run_detector,
)
from mutexamo.mutex import MutexNetwork
from mutexamo.oracle import all_cliques_bruteforce

FOUR_CLIQUE_ORDER = [(1, 2), (2, 3), (3, 4), (1, 3), (2, 4), (1, 4)]


def fs(*xs):
    return frozenset(xs)


@st.composite
def networks(draw, min_vars=1, max_vars=8):
    n = draw(st.integers(min_vars, max_vars))
    pairs = list(combinations(range(1, n + 1), 2))
    perm = draw(st.permutations(pairs))
    return MutexNetwork(n, perm[:draw(st.integers(0, len(perm)))])


def stream(net, kind, **kw):
    """Yield the detector after each observed edge."""
    det = CliqueDetector(MutexNetwork(net.num_vars), kind, **kw)
    for u, v in net.edges:
        det.add_mutex(u, v)
        yield det, (u, v)


def test_clustering_set_semantics():
    c = CliqueClustering([{1}, {1, 2}])
    assert c.add({2, 1}) is None
    assert c.add({3}) == 2
    assert list(c) == [fs(1), fs(1, 2), fs(3)]
    assert c.size_histogram() == {1: 2, 2: 1}
    with pytest.raises(ValueError):
        c.add(set())


@pytest.mark.parametrize("kind", ["exact", "relaxed"])
def test_empty_network_gives_singletons(kind):
    c = run_detector(MutexNetwork(3), kind)
    assert c.as_set() == {fs(1), fs(2), fs(3)}


@pytest.mark.parametrize("kind", ["exact", "relaxed"])
def test_single_edge(kind):
    c = run_detector(MutexNetwork(2, [(1, 2)]), kind)
    assert c.as_set() == {fs(1), fs(2), fs(1, 2)}


def test_exact_triangle():
    net = MutexNetwork(3, [(1, 2), (2, 3), (1, 3)])
    c = run_detector(net, "exact")
    expected = all_cliques_bruteforce(net)
    assert len(expected) == 7
    assert c.as_set() == expected


@pytest.mark.parametrize("kind", ["exact", "relaxed"])
def test_star_has_no_triangle(kind):
    c = run_detector(MutexNetwork(3, [(1, 2), (1, 3)]), kind)
    assert max(len(k) for k in c) == 2


def test_relaxed_triangle_step_by_step():
    net = MutexNetwork(3, [(1, 2), (2, 3), (1, 3)])
    steps = [(edge, set(det.clustering)) for det, edge in stream(net, "relaxed")]
    # {1,2} from the singletons, {2,3} only as a pair, then {1,2} + {2,3}
    assert steps[0][1] == {fs(1), fs(2), fs(3), fs(1, 2)}
    assert steps[1][1] == steps[0][1] | {fs(2, 3)}
    assert steps[2][1] == steps[1][1] | {fs(1, 2, 3), fs(1, 3)}


@pytest.mark.parametrize("tie_break", ["latest", "earliest"])
def test_relaxed_four_clique_order(tie_break):
    seen = []
    for det, _ in stream(MutexNetwork(4, FOUR_CLIQUE_ORDER), "relaxed", tie_break=tie_break):
        seen.append(fs(1, 2, 3, 4) in det.clustering)
    assert seen == [False] * 5 + [True]


def test_relaxed_tie_break_picks_newest_cluster():
    det = CliqueDetector(MutexNetwork(4), "relaxed")
    for e in [(1, 2), (1, 3)]:
        det.add_mutex(*e)
    assert det.largest[1] == fs(1, 3)
    det = CliqueDetector(MutexNetwork(4), "relaxed", tie_break="earliest")
    for e in [(1, 2), (1, 3)]:
        det.add_mutex(*e)
    assert det.largest[1] == fs(1, 2)


def test_try_merge_disjoint():
    det = CliqueDetector(MutexNetwork(3, [(1, 3), (2, 3), (1, 2)]), "relaxed")
    det.clustering.add({1, 2})
    assert det.try_merge({1, 2}, {3}) == fs(1, 2, 3)
    assert fs(1, 2, 3) in det.clustering
    assert fs(1, 2) in det.clustering


def test_try_merge_missing_edge():
    det = CliqueDetector(MutexNetwork(3, [(1, 3), (1, 2)]), "relaxed")
    assert det.try_merge({1, 2}, {3}) is None


def test_try_merge_overlapping():
    net = MutexNetwork(3, [(1, 2), (2, 3), (1, 3)])
    det = CliqueDetector(net, "relaxed")
    merged = det.try_merge({1, 2}, {2, 3})
    assert merged == fs(1, 2, 3)
    assert net.is_clique(merged)


def test_try_merge_nested_is_noop():
    det = CliqueDetector(MutexNetwork(3, [(1, 2)]), "relaxed")
    assert det.try_merge({1, 2}, {1}) is None


def test_observe_rejects_out_of_range():
    det = CliqueDetector(MutexNetwork(3), "exact")
    with pytest.raises(ValueError):
        det.observe(1, 4)


def test_exact_guard():
    with pytest.raises(DetectorGuardError):
        run_detector(MutexNetwork(21), "exact")
    assert len(run_detector(MutexNetwork(21), "exact", allow_large=True)) == 21


def test_unknown_kind():
    with pytest.raises(ValueError):
        CliqueDetector(MutexNetwork(2), "greedy")


def test_add_mutex_duplicate_is_ignored():
    det = CliqueDetector(MutexNetwork(2), "exact")
    assert det.add_mutex(1, 2) == [fs(1, 2)]
    assert det.add_mutex(2, 1) == []


@pytest.mark.parametrize("kind", ["exact", "relaxed"])
@settings(max_examples=60, deadline=None)
@given(net=networks())
def test_sound_and_covering_after_every_step(kind, net):
    for det, _ in stream(net, kind):
        g = det.net
        for c in det.clustering:
            assert g.is_clique(c)
        for u, v in g.edges:
            assert any(u in c and v in c for c in det.members_of[u])
        for x in range(1, g.num_vars + 1):
            assert fs(x) in det.clustering


@settings(max_examples=80, deadline=None)
@given(net=networks(max_vars=9))
def test_exact_is_complete(net):
    assert run_detector(net, "exact").as_set() == all_cliques_bruteforce(net)


@settings(max_examples=40, deadline=None)
@given(net=networks(max_vars=8), seed=st.integers(0, 2**32))
def test_exact_order_independent(net, seed):
    a = run_detector(net, "exact").as_set()
    b = run_detector(net.reorder("random", seed), "exact").as_set()
    assert a == b


@settings(max_examples=80, deadline=None)
@given(net=networks(max_vars=10))
def test_relaxed_cluster_bound(net):
    # at most one merge and one new pair per edge
    c = run_detector(net, "relaxed")
    assert len(c) <= net.num_vars + 2 * len(net)


def test_relaxed_bound_is_not_n_plus_k():
    c = run_detector(MutexNetwork(3, [(1, 2), (2, 3), (1, 3)]), "relaxed")
    assert len(c) == 7


def test_relaxed_recovers_contiguous_cliques():
    for size in range(3, 13):
        net = MutexNetwork(size, combinations(range(1, size + 1), 2))
        assert frozenset(range(1, size + 1)) in run_detector(net, "relaxed")
