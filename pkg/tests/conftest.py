"""Shared fixtures and independent oracles.

The oracles here must stay independent of the library code paths they check:
Floyd-Warshall vs the BFS sweep, brute-force Carmichael vs the prime-power
formula, plain BFS vs union-find connectivity.
"""

from __future__ import annotations

import math
from collections import deque

import numpy as np
import pytest

from orbnet import OrbitalGraph


def floyd_warshall_distances(g: OrbitalGraph):
    """O(n^3) distance matrix, written without touching orbnet.metrics."""
    n = g.n
    INF = math.inf
    dist = [[INF] * n for _ in range(n)]
    for v in range(n):
        dist[v][v] = 0
    for u, v in g.edge_pairs():
        dist[int(u)][int(v)] = 1
        dist[int(v)][int(u)] = 1
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == INF:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def fw_mu(g: OrbitalGraph) -> float:
    """Mean over vertices of mean finite distance to other vertices."""
    dist = floyd_warshall_distances(g)
    per_vertex = []
    for i in range(g.n):
        finite = [d for j, d in enumerate(dist[i]) if j != i and d != math.inf]
        if finite:
            per_vertex.append(sum(finite) / len(finite))
    return sum(per_vertex) / len(per_vertex)


def bfs_is_connected(n: int, edges) -> bool:
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if not seen[y]:
                seen[y] = True
                count += 1
                queue.append(y)
    return count == n


def brute_carmichael(n: int) -> int:
    """Largest multiplicative order among units (exponent of the unit group)."""
    if n == 1:
        return 1
    best = 1
    for g in range(1, n):
        if math.gcd(g, n) != 1:
            continue
        t, acc = 1, g % n
        while acc != 1:
            acc = (acc * g) % n
            t += 1
        best = math.lcm(best, t)
    return best


def random_simple_graph(rng: np.random.Generator, n: int, p: float) -> OrbitalGraph:
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(len(iu)) < p
    pairs = np.column_stack([iu[mask], ju[mask]])
    return OrbitalGraph.from_pairs(n, pairs)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240901))
