"""Seeded samplers for random regular graphs, hypergraphs, and the regular SBM.

All samplers are pure functions of (parameters, seed): stub matching with
rejection of self-loops, multi-edges, degenerate hyperedges, and duplicate
hyperedges. Every returned object passes a full degree audit.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .errors import (
    DivisibilityError,
    InfeasibleError,
    InvariantError,
    ParityError,
    RetryExhausted,
)
from .seeds import Seed, as_seed

MAX_RESTARTS = 10_000
# within-attempt repair budget for the hypergraph grouper before a full restart
_MAX_DISSOLVES = 1_000


@dataclass(frozen=True)
class RegularGraph:
    """Simple d-regular graph on vertices 0..n-1.

    ``edges`` holds unordered pairs (u, v) with u < v, sorted
    lexicographically, so equal graphs serialize to identical bytes.
    """

    n: int
    d: int
    edges: tuple

    def validate(self) -> None:
        if self.n < 1 or self.d < 0:
            raise InvariantError(f"bad sizes n={self.n} d={self.d}")
        if len(self.edges) != self.n * self.d // 2 or (self.n * self.d) % 2:
            raise InvariantError("edge count does not match n*d/2")
        deg = [0] * self.n
        seen = set()
        prev = None
        for e in self.edges:
            u, v = e
            if not (0 <= u < v < self.n):
                raise InvariantError(f"bad edge {e}")
            if e in seen:
                raise InvariantError(f"repeated edge {e}")
            if prev is not None and not prev < tuple(e):
                raise InvariantError("edges not sorted")
            seen.add(tuple(e))
            prev = tuple(e)
            deg[u] += 1
            deg[v] += 1
        if any(x != self.d for x in deg):
            raise InvariantError("degree audit failed")


@dataclass(frozen=True)
class RegularHypergraph:
    """(d, k)-regular hypergraph: every vertex in d hyperedges, each of size k.

    Hyperedges are k-tuples of distinct vertices sorted ascending; the list
    is sorted lexicographically. Two hyperedges may share more than one
    vertex (adjacency then counts multiplicity); duplicates are forbidden.
    """

    n: int
    d: int
    k: int
    hyperedges: tuple

    def validate(self) -> None:
        if self.d < 2 or self.k < 2:
            raise InvariantError("require d >= 2 and k >= 2")
        if (self.n * self.d) % self.k:
            raise InvariantError("k must divide n*d")
        if len(self.hyperedges) != self.n * self.d // self.k:
            raise InvariantError("hyperedge count does not match n*d/k")
        deg = [0] * self.n
        seen = set()
        prev = None
        for e in self.hyperedges:
            t = tuple(e)
            if len(t) != self.k or len(set(t)) != self.k:
                raise InvariantError(f"hyperedge {t} is not {self.k} distinct vertices")
            if list(t) != sorted(t) or not (0 <= t[0] and t[-1] < self.n):
                raise InvariantError(f"hyperedge {t} not sorted in range")
            if t in seen:
                raise InvariantError(f"duplicate hyperedge {t}")
            if prev is not None and not prev < t:
                raise InvariantError("hyperedges not sorted")
            seen.add(t)
            prev = t
            for v in t:
                deg[v] += 1
        if any(x != self.d for x in deg):
            raise InvariantError("degree audit failed")


@dataclass(frozen=True)
class RsbmGraph:
    """Regular stochastic block model sample.

    Two d1-regular halves joined by a d2-regular bipartite graph; ``sigma``
    in {-1,+1}^n records the community of each vertex and ``graph`` is the
    resulting simple (d1+d2)-regular graph.
    """

    n: int
    d1: int
    d2: int
    sigma: tuple
    graph: RegularGraph

    @property
    def d(self) -> int:
        return self.d1 + self.d2

    def validate(self) -> None:
        if self.n % 2:
            raise InvariantError("n must be even")
        if len(self.sigma) != self.n or any(s not in (-1, 1) for s in self.sigma):
            raise InvariantError("sigma must be a +-1 vector of length n")
        if sum(1 for s in self.sigma if s == 1) != self.n // 2:
            raise InvariantError("sigma must split vertices evenly")
        if self.graph.n != self.n or self.graph.d != self.d1 + self.d2:
            raise InvariantError("underlying graph has wrong size or degree")
        self.graph.validate()
        within = [0] * self.n
        cross = [0] * self.n
        for u, v in self.graph.edges:
            if self.sigma[u] == self.sigma[v]:
                within[u] += 1
                within[v] += 1
            else:
                cross[u] += 1
                cross[v] += 1
        if any(x != self.d1 for x in within) or any(x != self.d2 for x in cross):
            raise InvariantError("within/cross degree audit failed")


def _permuted(items: list, rng: np.random.Generator) -> list:
    return [items[i] for i in rng.permutation(len(items))]


def _suitable(edges: set, leftover: dict) -> bool:
    # True if some pair of leftover stubs can still form a new simple edge.
    if not leftover:
        return True
    nodes = list(leftover)
    for i, u in enumerate(nodes):
        for v in nodes[i + 1 :]:
            e = (u, v) if u < v else (v, u)
            if e not in edges:
                return True
    return False


def _try_pairing(n: int, d: int, rng: np.random.Generator):
    """One attempt at stub matching; keeps good pairs across passes.

    Returns the edge set, or None if the remaining stubs cannot be completed
    (full restart required).
    """
    edges: set = set()
    stubs = list(range(n)) * d
    while stubs:
        stubs = _permuted(stubs, rng)
        leftover: dict = defaultdict(int)
        it = iter(stubs)
        for u, v in zip(it, it):
            if u > v:
                u, v = v, u
            if u != v and (u, v) not in edges:
                edges.add((u, v))
            else:
                leftover[u] += 1
                leftover[v] += 1
        if not _suitable(edges, leftover):
            return None
        stubs = [v for v, c in leftover.items() for _ in range(c)]
    return edges


def sample_regular_graph(n: int, d: int, seed: "int | Seed") -> RegularGraph:
    """Sample a simple d-regular graph on n vertices.

    Parameters
    ----------
    n, d : int
        Vertex count and degree; requires n >= d+1, d >= 1 and n*d even.
    seed : int or Seed
        Master seed; identical arguments yield byte-identical graphs.

    Raises
    ------
    ParityError
        If n*d is odd.
    InfeasibleError
        If d < 1 or d >= n.
    RetryExhausted
        If the rejection cap is hit (infeasible-in-practice parameters).
    """
    if (n * d) % 2:
        raise ParityError(f"n*d = {n * d} is odd; no {d}-regular graph on {n} vertices")
    if d < 1 or d >= n:
        raise InfeasibleError(f"need 1 <= d <= n-1, got n={n} d={d}")
    rng = as_seed(seed).generator()
    for _ in range(MAX_RESTARTS):
        edges = _try_pairing(n, d, rng)
        if edges is not None:
            g = RegularGraph(n=n, d=d, edges=tuple(sorted(edges)))
            g.validate()
            return g
    raise RetryExhausted(f"no simple {d}-regular graph found in {MAX_RESTARTS} restarts")


def _try_grouping(n: int, d: int, k: int, rng: np.random.Generator):
    """One attempt at grouping stubs into k-sets; dissolves accepted
    hyperedges back into the pool when a pass stalls."""
    edges: list = []
    edge_set: set = set()
    stubs = list(range(n)) * d
    dissolves = 0
    while stubs:
        stubs = _permuted(stubs, rng)
        leftover: list = []
        accepted = 0
        for i in range(0, len(stubs), k):
            block = tuple(sorted(stubs[i : i + k]))
            if len(set(block)) == k and block not in edge_set:
                edge_set.add(block)
                edges.append(block)
                accepted += 1
            else:
                leftover.extend(block)
        stubs = leftover
        if stubs and accepted == 0:
            need = len(stubs) // k + 1
            if len(edges) < need or dissolves >= _MAX_DISSOLVES:
                return None
            dissolves += 1
            for _ in range(need):
                j = int(rng.integers(len(edges)))
                block = edges.pop(j)
                edge_set.remove(block)
                stubs.extend(block)
    return edges


def sample_regular_hypergraph(n: int, d: int, k: int, seed: "int | Seed") -> RegularHypergraph:
    """Sample a (d, k)-regular hypergraph on n vertices.

    Requires d >= 2, k >= 2, n >= k and k | n*d. Hyperedges have k distinct
    vertices and are pairwise distinct; larger overlaps are allowed.
    """
    if k >= 2 and (n * d) % k:
        raise DivisibilityError(f"k={k} does not divide n*d={n * d}")
    if d < 2 or k < 2 or n < k:
        raise InfeasibleError(f"need d >= 2, k >= 2, n >= k; got n={n} d={d} k={k}")
    rng = as_seed(seed).generator()
    for _ in range(MAX_RESTARTS):
        edges = _try_grouping(n, d, k, rng)
        if edges is not None:
            h = RegularHypergraph(n=n, d=d, k=k, hyperedges=tuple(sorted(edges)))
            h.validate()
            return h
    raise RetryExhausted(f"no ({d},{k})-regular hypergraph found in {MAX_RESTARTS} restarts")


def _suitable_bipartite(edges: set, left: list, right: list) -> bool:
    if not left:
        return True
    for u in set(left):
        for v in set(right):
            if (u, v) not in edges:
                return True
    return False


def _try_bipartite(left: list, right: list, deg: int, rng: np.random.Generator):
    """One attempt at a deg-regular bipartite matching between two vertex sets."""
    edges: set = set()
    ls = [u for u in left for _ in range(deg)]
    rs = [v for v in right for _ in range(deg)]
    while ls:
        ls = _permuted(ls, rng)
        rs = _permuted(rs, rng)
        lo_l: list = []
        lo_r: list = []
        for u, v in zip(ls, rs):
            if (u, v) not in edges:
                edges.add((u, v))
            else:
                lo_l.append(u)
                lo_r.append(v)
        if not _suitable_bipartite(edges, lo_l, lo_r):
            return None
        ls, rs = lo_l, lo_r
    return edges


def sample_rsbm(n: int, d1: int, d2: int, seed: "int | Seed") -> RsbmGraph:
    """Sample an (n, d1, d2) regular stochastic block model.

    A uniformly random equal partition of the vertices, an independent
    d1-regular graph on each half, and a d2-regular bipartite graph across.

    Raises
    ------
    ParityError
        If n is odd or d1*(n/2) is odd.
    InfeasibleError
        If d1 >= n/2, d1 < 1, or d2 outside [1, n/2].
    """
    if n % 2:
        raise ParityError(f"n = {n} must be even")
    if (d1 * (n // 2)) % 2:
        raise ParityError(f"d1*(n/2) = {d1 * (n // 2)} is odd; halves cannot be {d1}-regular")
    if d1 < 1 or d1 >= n // 2:
        raise InfeasibleError(f"need 1 <= d1 <= n/2 - 1, got d1={d1} n={n}")
    if not 1 <= d2 <= n // 2:
        raise InfeasibleError(f"need 1 <= d2 <= n/2, got d2={d2} n={n}")
    rng = as_seed(seed).generator()
    half = n // 2
    perm = [int(x) for x in rng.permutation(n)]
    side1 = sorted(perm[:half])
    side2 = sorted(perm[half:])
    sigma = [0] * n
    for v in side1:
        sigma[v] = 1
    for v in side2:
        sigma[v] = -1

    for _ in range(MAX_RESTARTS):
        e1 = _try_pairing(half, d1, rng)
        if e1 is None:
            continue
        e2 = _try_pairing(half, d1, rng)
        if e2 is None:
            continue
        ec = _try_bipartite(side1, side2, d2, rng)
        if ec is None:
            continue
        edges = set()
        for u, v in e1:
            edges.add((side1[u], side1[v]) if side1[u] < side1[v] else (side1[v], side1[u]))
        for u, v in e2:
            edges.add((side2[u], side2[v]) if side2[u] < side2[v] else (side2[v], side2[u]))
        for u, v in ec:
            edges.add((u, v) if u < v else (v, u))
        g = RsbmGraph(
            n=n,
            d1=d1,
            d2=d2,
            sigma=tuple(sigma),
            graph=RegularGraph(n=n, d=d1 + d2, edges=tuple(sorted(edges))),
        )
        g.validate()
        return g
    raise RetryExhausted(f"no simple RSBM({n},{d1},{d2}) found in {MAX_RESTARTS} restarts")
