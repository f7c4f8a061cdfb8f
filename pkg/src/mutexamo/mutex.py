"""Mutex networks: ordered edge sequences over variables 1..n."""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Optional

from .rng import SplitMix64

Mutex = tuple[int, int]

ORDERINGS = ("original", "random")


class MutexNetwork:
    """Undirected graph of mutexes, remembering the order edges arrived in.

    ``edges[i]`` is always stored as ``(u, v)`` with ``u < v``; ``adj[x]`` is
    the neighbour set of variable ``x`` (index 0 unused) and ``closed[x]`` the
    same neighbourhood plus ``x`` itself as a bitmask over variable indices.
    """

    def __init__(self, num_vars: int, edges: Iterable[Mutex] = ()):
        if num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        self.num_vars = num_vars
        self.edges: list[Mutex] = []
        self.adj: list[set[int]] = [set() for _ in range(num_vars + 1)]
        self.closed: list[int] = [1 << x for x in range(num_vars + 1)]
        for u, v in edges:
            self.add(u, v)

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, pair) -> bool:
        u, v = pair
        return 1 <= u <= self.num_vars and v in self.adj[u]

    def __eq__(self, other):
        if not isinstance(other, MutexNetwork):
            return NotImplemented
        return self.num_vars == other.num_vars and self.edges == other.edges

    def __repr__(self):
        return f"MutexNetwork(n={self.num_vars}, k={len(self.edges)})"

    def add(self, u: int, v: int) -> bool:
        """Append mutex {u, v}; return False if it was already present."""
        if u == v:
            raise ValueError(f"self-loop mutex on variable {u}")
        for x in (u, v):
            if not 1 <= x <= self.num_vars:
                raise ValueError(f"variable {x} out of range 1..{self.num_vars}")
        if v in self.adj[u]:
            return False
        if u > v:
            u, v = v, u
        self.edges.append((u, v))
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.closed[u] |= 1 << v
        self.closed[v] |= 1 << u
        return True

    def degree(self, x: int) -> int:
        return len(self.adj[x])

    def cross_edge_count(self, a: Iterable[int], b: Iterable[int]) -> int:
        """Number of edges between ``a - b`` and ``b - a``.

        Shared vertices are excluded on purpose: two cliques whose exclusive
        parts are fully connected always unite into a clique.
        """
        a, b = set(a), set(b)
        only_a, only_b = a - b, b - a
        if len(only_a) > len(only_b):
            only_a, only_b = only_b, only_a
        adj = self.adj
        return sum(len(adj[x] & only_b) for x in only_a)

    def is_clique(self, s: Iterable[int]) -> bool:
        s = list(s)
        adj = self.adj
        return all(y in adj[x] for x, y in combinations(s, 2))

    def reorder(self, mode: str = "original", seed: Optional[int] = None) -> "MutexNetwork":
        """Copy of the network with edges in ``original`` or seeded ``random`` order."""
        if mode == "original":
            edges = list(self.edges)
        elif mode == "random":
            if seed is None:
                raise ValueError("random ordering requires a seed")
            edges = list(self.edges)
            SplitMix64(seed).shuffle(edges)
        else:
            raise ValueError(f"unknown ordering {mode!r}")
        return MutexNetwork(self.num_vars, edges)
