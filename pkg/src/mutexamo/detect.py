"""On-line clique clustering of mutex networks.

Two detectors grow a collection of variable clusters, each of which is a
clique of the mutex network, as mutexes arrive one at a time:

``exact``
    For every pair of clusters ``(K_u, K_v)`` with ``u in K_u`` and
    ``v in K_v`` a merge is attempted.  The clustering ends up holding every
    clique of the network, at exponential cost.
``relaxed``
    Only the largest cluster containing ``u`` and the largest containing
    ``v`` are tried, after which the pair ``{u, v}`` is added as a cluster.
    Among equally large clusters the most recently created one is taken by
    default, so clusters keep growing around the mutexes that just arrived.

Two clusters merge when every edge between their exclusive parts is present;
originals are always kept.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterable, Iterator, Optional

from .mutex import MutexNetwork

Cluster = frozenset

DETECTORS = ("exact", "relaxed")
TIE_BREAKS = ("latest", "earliest")

# Exact clustering holds up to 2**n clusters.
EXACT_MAX_VARS = 20


class DetectorGuardError(ValueError):
    pass


class CliqueClustering:
    """Distinct clusters kept in creation order."""

    def __init__(self, clusters: Iterable[Iterable[int]] = ()):
        self._order: list[Cluster] = []
        self._ids: dict[Cluster, int] = {}
        for c in clusters:
            self.add(c)

    def add(self, members: Iterable[int]) -> Optional[int]:
        """Insert a cluster; return its creation index, or None if known."""
        c = Cluster(members)
        if not c:
            raise ValueError("clusters must be nonempty")
        if c in self._ids:
            return None
        self._ids[c] = len(self._order)
        self._order.append(c)
        return self._ids[c]

    def index(self, c: Iterable[int]) -> int:
        return self._ids[Cluster(c)]

    def __contains__(self, c) -> bool:
        return Cluster(c) in self._ids

    def __iter__(self) -> Iterator[Cluster]:
        return iter(self._order)

    def __len__(self):
        return len(self._order)

    def __getitem__(self, i) -> Cluster:
        return self._order[i]

    def as_set(self) -> set[Cluster]:
        return set(self._order)

    def size_histogram(self, min_size: int = 1) -> dict[int, int]:
        hist = Counter(len(c) for c in self._order if len(c) >= min_size)
        return dict(sorted(hist.items()))

    def __repr__(self):
        return f"CliqueClustering({len(self._order)} clusters)"


class CliqueDetector:
    """Incremental detector state over a (possibly growing) mutex network.

    The clustering starts with a singleton per variable.  Feed fresh edges
    through :meth:`observe`, or use :meth:`add_mutex` to grow the network and
    observe in one step.
    """

    def __init__(self, net: MutexNetwork, kind: str = "relaxed", allow_large: bool = False,
                 tie_break: str = "latest"):
        if kind not in DETECTORS:
            raise ValueError(f"unknown detector {kind!r}")
        if tie_break not in TIE_BREAKS:
            raise ValueError(f"unknown tie-break rule {tie_break!r}")
        if kind == "exact" and net.num_vars > EXACT_MAX_VARS and not allow_large:
            raise DetectorGuardError(
                f"exact detection on {net.num_vars} variables exceeds the "
                f"{EXACT_MAX_VARS}-variable guard (pass allow_large=True to override)"
            )
        self.net = net
        self.kind = kind
        self.tie_break = tie_break
        self.clustering = CliqueClustering()
        self.mask: dict[Cluster, int] = {}
        self.members_of: list[list[Cluster]] = [[] for _ in range(net.num_vars + 1)]
        # largest[x]: a maximum-size cluster containing x, the most recently
        # created one under "latest", the oldest under "earliest"
        self.largest: list[Optional[Cluster]] = [None] * (net.num_vars + 1)
        for i in range(1, net.num_vars + 1):
            self._insert(Cluster((i,)))

    def _insert(self, c: Cluster) -> bool:
        if self.clustering.add(c) is None:
            return False
        self.mask[c] = sum(1 << x for x in c)
        for x in c:
            self.members_of[x].append(c)
            best = self.largest[x]
            if best is None or len(c) > len(best) or (
                len(c) == len(best) and self.tie_break == "latest"
            ):
                self.largest[x] = c
        return True

    def try_merge(self, ku: Iterable[int], kv: Iterable[int]) -> Optional[Cluster]:
        """Add ``ku | kv`` if all cross edges between the exclusive parts exist.

        Returns the union when the test passes (whether or not it was already
        present), otherwise None.
        """
        ku, kv = Cluster(ku), Cluster(kv)
        only_u, only_v = ku - kv, kv - ku
        need = len(only_u) * len(only_v)
        if need == 0 or self.net.cross_edge_count(only_u, only_v) != need:
            return None
        merged = ku | kv
        self._insert(merged)
        return merged

    def observe(self, u: int, v: int) -> list[Cluster]:
        """Process the fresh mutex {u, v}; return the clusters it created."""
        if not (1 <= u <= self.net.num_vars and 1 <= v <= self.net.num_vars):
            raise ValueError(f"mutex ({u}, {v}) out of range 1..{self.net.num_vars}")
        if self.kind == "exact":
            return self._observe_exact(u, v)
        return self._observe_relaxed(u, v)

    def add_mutex(self, u: int, v: int) -> list[Cluster]:
        if not self.net.add(u, v):
            return []
        return self.observe(u, v)

    def _observe_exact(self, u: int, v: int) -> list[Cluster]:
        # Every cluster is a clique, so ku | kv is one exactly when kv lies in
        # the common closed neighbourhood of ku.  That is the cross-edge test
        # of try_merge done as one mask comparison.  Unions made here contain
        # both u and v and are skipped below, so one sweep reaches the fixpoint.
        closed, mask = self.net.closed, self.mask
        bit_v = 1 << v
        side_v = [(kv, mask[kv]) for kv in self.members_of[v] if u not in kv]
        created: list[Cluster] = []
        for ku in [k for k in self.members_of[u] if v not in k]:
            common = -1
            for x in ku:
                common &= closed[x]
            if not common & bit_v:
                continue
            for kv, mv in side_v:
                if mv & ~common == 0:
                    merged = ku | kv
                    if self._insert(merged):
                        created.append(merged)
        return created

    def _observe_relaxed(self, u: int, v: int) -> list[Cluster]:
        created: list[Cluster] = []
        ku, kv = self.largest[u], self.largest[v]
        if ku != kv:
            n_before = len(self.clustering)
            merged = self.try_merge(ku, kv)
            if merged is not None and len(self.clustering) > n_before:
                created.append(merged)
        pair = Cluster((u, v))
        if self._insert(pair):
            created.append(pair)
        return created


def run_detector(net: MutexNetwork, kind: str = "relaxed", allow_large: bool = False,
                 tie_break: str = "latest") -> CliqueClustering:
    """Run a detector over the edges of ``net`` in stored order."""
    det = CliqueDetector(MutexNetwork(net.num_vars), kind, allow_large, tie_break)
    for u, v in net.edges:
        det.add_mutex(u, v)
    return det.clustering
