"""Exact graph quantities for one OrbitalGraph.

Distances come from repeated BFS (scipy.sparse.csgraph, processed in source
chunks so no full distance matrix is ever held); clique counts, curvature and
inductive dimension use exact integer/rational arithmetic.
"""

from __future__ import annotations

import math
from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from ._uf import component_count
from .errors import BudgetError, DomainError, UndefinedMetricError
from .graph import OrbitalGraph, induced_subgraph

#: Convention used for the nu that feeds lambda when none is given explicitly.
#: Calibrated against the reference-figure suite: the global transitivity
#: reproduces every reference nu and lambda (0.002448 -> lambda 0.9642 on the
#: two-quadratic graph); the mean local coefficient does not (see README).
DEFAULT_NU = "global"

_BFS_CHUNK = 256


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------

@dataclass
class PathSweep:
    """Per-vertex aggregates of one all-sources BFS pass."""

    row_sum: np.ndarray    # sum of finite distances to other vertices
    row_count: np.ndarray  # number of reachable other vertices
    row_ecc: np.ndarray    # largest finite distance (0 for isolated)
    row_d2: np.ndarray     # vertices at distance exactly 2
    hist: np.ndarray       # multiset of all finite positive distances, by value


def _to_csr(g: OrbitalGraph) -> csr_matrix:
    data = np.ones(len(g.neighbors), dtype=np.int8)
    return csr_matrix((data, g.neighbors, g.offsets), shape=(g.n, g.n))


def path_sweep(g: OrbitalGraph) -> PathSweep:
    """BFS from every vertex, O(n(n+m)) time, O(chunk * n) memory."""
    n = g.n
    mat = _to_csr(g)
    row_sum = np.zeros(n)
    row_count = np.zeros(n, dtype=np.int64)
    row_ecc = np.zeros(n, dtype=np.int64)
    row_d2 = np.zeros(n, dtype=np.int64)
    hist = np.zeros(1, dtype=np.int64)
    for start in range(0, n, _BFS_CHUNK):
        idx = np.arange(start, min(start + _BFS_CHUNK, n))
        dist = shortest_path(mat, method="D", directed=True, unweighted=True, indices=idx)
        finite = np.isfinite(dist) & (dist > 0)
        row_sum[idx] = np.where(finite, dist, 0.0).sum(axis=1)
        row_count[idx] = finite.sum(axis=1)
        row_d2[idx] = (dist == 2).sum(axis=1)
        ecc = np.where(finite, dist, 0.0).max(axis=1, initial=0.0)
        row_ecc[idx] = ecc.astype(np.int64)
        vals = dist[finite].astype(np.int64)
        if len(vals):
            chunk_hist = np.bincount(vals)
            if len(chunk_hist) > len(hist):
                hist = np.concatenate([hist, np.zeros(len(chunk_hist) - len(hist), np.int64)])
            hist[: len(chunk_hist)] += chunk_hist
    return PathSweep(row_sum, row_count, row_ecc, row_d2, hist)


def _largest_component_mask(g: OrbitalGraph) -> np.ndarray:
    labels = _component_labels(g)
    sizes = np.bincount(labels)
    best = int(np.flatnonzero(sizes == sizes.max())[0])
    return labels == best


def _component_labels(g: OrbitalGraph) -> np.ndarray:
    from ._uf import uf_find, uf_union

    parent = list(range(g.n))
    for u, v in g.edge_pairs():
        uf_union(parent, int(u), int(v))
    roots = [uf_find(parent, x) for x in range(g.n)]
    _, labels = np.unique(np.asarray(roots), return_inverse=True)
    return labels


def characteristic_path_length(g: OrbitalGraph, largest_component_only: bool = False,
                               sweep: Optional[PathSweep] = None) -> tuple[float, float]:
    """(mu, median): mu averages, over vertices with a reachable partner,
    the mean distance to reachable other vertices; the median is over the
    full multiset of those distances."""
    sweep = sweep if sweep is not None else path_sweep(g)
    keep = sweep.row_count > 0
    if largest_component_only:
        keep &= _largest_component_mask(g)
    if not keep.any():
        raise UndefinedMetricError("path length undefined on a graph with no edges")
    mu = float(np.mean(sweep.row_sum[keep] / sweep.row_count[keep]))
    if largest_component_only:
        # Rebuild the distance multiset from the component alone.
        sub = induced_subgraph(g, np.flatnonzero(keep))
        hist = path_sweep(sub).hist
    else:
        hist = sweep.hist
    return mu, _hist_median(hist)


def _hist_median(hist: np.ndarray) -> float:
    total = int(hist.sum())
    if total == 0:
        raise UndefinedMetricError("no finite distances")
    cum = np.cumsum(hist)
    lo = int(np.searchsorted(cum, (total - 1) // 2 + 1))
    hi = int(np.searchsorted(cum, total // 2 + 1))
    return (lo + hi) / 2.0


def diameter(g: OrbitalGraph, sweep: Optional[PathSweep] = None) -> tuple[int, bool]:
    """Largest finite eccentricity, plus a connectivity flag so callers can
    render the infinite case themselves."""
    if g.edge_count == 0:
        raise UndefinedMetricError("diameter undefined on a graph with no edges")
    sweep = sweep if sweep is not None else path_sweep(g)
    connected = bool((sweep.row_count == g.n - 1).all()) if g.n > 1 else True
    return int(sweep.row_ecc.max()), connected


def radius(g: OrbitalGraph, sweep: Optional[PathSweep] = None) -> int:
    if g.edge_count == 0:
        raise UndefinedMetricError("radius undefined on a graph with no edges")
    sweep = sweep if sweep is not None else path_sweep(g)
    return int(sweep.row_ecc.min())


def nsw_estimate(g: OrbitalGraph, sweep: Optional[PathSweep] = None) -> float:
    """Path-length heuristic 1 + log(n/d)/log(d2/d) from average degree d and
    average second-neighbor count d2."""
    d = 2.0 * g.edge_count / g.n if g.n else 0.0
    if d <= 0:
        raise UndefinedMetricError("estimate needs average degree > 0")
    sweep = sweep if sweep is not None else path_sweep(g)
    d2 = float(sweep.row_d2.mean())
    if d2 <= d:
        raise UndefinedMetricError(f"estimate undefined: d2={d2:.3f} <= d={d:.3f}")
    return 1.0 + math.log(g.n / d) / math.log(d2 / d)


# ---------------------------------------------------------------------------
# Degrees and clustering
# ---------------------------------------------------------------------------

def degree_stats(g: OrbitalGraph) -> tuple[float, dict[int, int], float]:
    """(average degree, degree histogram, population variance)."""
    degs = g.degrees()
    avg = 2.0 * g.edge_count / g.n
    hist = dict(sorted(Counter(degs.tolist()).items()))
    var = float(np.mean((degs - avg) ** 2))
    return avg, hist, var


def triangles_per_vertex(g: OrbitalGraph) -> list[int]:
    lists = g.neighbor_lists()
    sets = g.neighbor_sets()
    out = []
    for v in range(g.n):
        sv = sets[v]
        t = 0
        for u in lists[v]:
            t += len(sv & sets[u])
        out.append(t // 2)
    return out


def triangle_count(g: OrbitalGraph) -> int:
    return sum(triangles_per_vertex(g)) // 3


def clustering(g: OrbitalGraph, include_low_degree: bool = True) -> tuple[float, float]:
    """(nu_mean, nu_global).

    nu_mean averages the local coefficient t(v)/C(deg v, 2); vertices of
    degree < 2 count as 0 unless ``include_low_degree`` is False, in which
    case they are left out of the average entirely.
    nu_global is 3 * triangles / paths of length two.
    """
    tri = triangles_per_vertex(g)
    degs = g.degrees()
    local = []
    for v in range(g.n):
        d = int(degs[v])
        if d >= 2:
            local.append(2.0 * tri[v] / (d * (d - 1)))
        elif include_low_degree:
            local.append(0.0)
    nu_mean = float(np.mean(local)) if local else 0.0
    wedges = int((degs * (degs - 1) // 2).sum())
    nu_global = (sum(tri) / wedges) if wedges else 0.0  # 3*Delta = sum of per-vertex triangles
    return nu_mean, nu_global


def length_cluster(mu: float, nu: float) -> float:
    """lambda = -mu / ln(nu), defined for 0 < nu < 1."""
    if mu < 0:
        raise DomainError(f"mu must be >= 0, got {mu}")
    if not 0.0 < nu < 1.0:
        raise UndefinedMetricError(f"lambda undefined at nu={nu}")
    return -mu / math.log(nu)


# ---------------------------------------------------------------------------
# Cliques, Euler characteristic, curvature, dimension
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CliqueVector:
    """counts[k] = number of K_(k+1) subgraphs; complete means the clique
    number was reached (counts end where extensions die out)."""

    counts: tuple[int, ...]
    complete: bool

    def __iter__(self):
        return iter(self.counts)

    def __len__(self):
        return len(self.counts)

    def __getitem__(self, i):
        return self.counts[i]


def clique_vector(g: OrbitalGraph, k_max: Optional[int] = None,
                  node_budget: int = 5_000_000) -> CliqueVector:
    """Count complete subgraphs by recursive extension over sorted neighbor
    intersections. Worst case is exponential; the node budget turns runaway
    enumerations into a BudgetError instead of a hang."""
    lists = g.neighbor_lists()
    counts = [g.n]
    visited = 0

    def extend(cand: list, depth: int):
        nonlocal visited
        while len(counts) <= depth:
            counts.append(0)
        counts[depth] += len(cand)
        visited += len(cand)
        if visited > node_budget:
            raise BudgetError(f"clique enumeration exceeded {node_budget} nodes")
        if k_max is not None and depth >= k_max:
            return
        for i, u in enumerate(cand):
            row = lists[u]
            nxt = [w for w in cand[i + 1:] if w in _as_set(row, u)]
            if nxt:
                extend(nxt, depth + 1)

    set_cache: dict[int, set] = {}

    def _as_set(row, u):
        s = set_cache.get(u)
        if s is None:
            s = set(row)
            set_cache[u] = s
        return s

    for v in range(g.n):
        row = lists[v]
        cand = [w for w in row if w > v]
        if cand:
            extend(cand, 1)
    while len(counts) > 1 and counts[-1] == 0:
        counts.pop()
    complete = k_max is None or len(counts) - 1 < k_max or counts[-1] == 0
    return CliqueVector(tuple(counts), complete)


def euler_characteristic(cliques: Union[CliqueVector, Sequence[int]]) -> int:
    """Alternating sum over the full clique vector."""
    if isinstance(cliques, CliqueVector):
        if not cliques.complete:
            raise DomainError("clique vector truncated before the clique number; chi undefined")
        counts = cliques.counts
    else:
        counts = tuple(cliques)
    return sum((-1) ** k * c for k, c in enumerate(counts))


def curvature(g: OrbitalGraph, x: int, node_budget: int = 5_000_000) -> Fraction:
    """K(x) = sum_k (-1)^k V_(k-1)(x)/(k+1) with V_(-1)=1 and V_j counting
    K_(j+1) subgraphs of the unit sphere S(x); exact rational."""
    sphere = induced_subgraph(g, g.neighbors_of(x))
    v = clique_vector(sphere, node_budget=node_budget).counts if sphere.n else ()
    total = Fraction(1)
    for j, count in enumerate(v):
        total += Fraction((-1) ** (j + 1) * count, j + 2)
    return total


def curvature_sum(g: OrbitalGraph, node_budget: int = 5_000_000) -> Fraction:
    return sum((curvature(g, x, node_budget) for x in range(g.n)), Fraction(0))


def inductive_dimension(g: OrbitalGraph, call_budget: int = 2_000_000) -> Fraction:
    """dim(empty) = -1; dim(G) = 1 + mean over vertices of dim(S(x)),
    memoized on induced vertex sets, exact rational."""
    lists = g.neighbor_lists()
    memo: dict[frozenset, Fraction] = {}
    calls = 0

    def dim_of(vset: frozenset) -> Fraction:
        nonlocal calls
        if not vset:
            return Fraction(-1)
        cached = memo.get(vset)
        if cached is not None:
            return cached
        calls += 1
        if calls > call_budget:
            raise BudgetError(f"dimension recursion exceeded {call_budget} subgraphs")
        total = Fraction(0)
        for v in vset:
            total += dim_of(frozenset(w for w in lists[v] if w in vset))
        result = 1 + total / len(vset)
        memo[vset] = result
        return result

    if g.n == 0:
        return Fraction(-1)
    return dim_of(frozenset(range(g.n)))


def betti(g: OrbitalGraph) -> tuple[int, int]:
    """(b0, b1): components via union-find, cycle rank of the 1-skeleton."""
    b0 = component_count(g.n, ((int(u), int(v)) for u, v in g.edge_pairs()))
    b1 = g.edge_count - g.n + b0
    return b0, b1


def two_coloring(g: OrbitalGraph) -> Optional[np.ndarray]:
    """BFS 2-coloring; None when an odd cycle makes the graph non-bipartite."""
    color = np.full(g.n, -1, dtype=np.int8)
    lists = g.neighbor_lists()
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in lists[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


# ---------------------------------------------------------------------------
# The full bundle
# ---------------------------------------------------------------------------

@dataclass
class StatsRecord:
    n: int
    edge_count: int
    avg_degree: float
    degree_histogram: dict[int, int]
    degree_variance: float
    b0: int
    b1: int
    connected: bool
    diameter: Optional[int]
    radius: Optional[int]
    mu: Optional[float]
    median_mu: Optional[float]
    nu_mean: float
    nu_global: float
    nu_convention: str
    length_cluster: Optional[float]
    cliques: Optional[tuple[int, ...]]
    chi: Optional[int]
    curvature_sum: Optional[Fraction]
    dimension: Optional[Fraction]
    nsw: Optional[float]


def compute_stats(g: OrbitalGraph, nu: str = DEFAULT_NU, cliques: bool = True,
                  clique_budget: int = 5_000_000,
                  dimension_budget: int = 2_000_000) -> StatsRecord:
    """One StatsRecord for the graph; expensive simplicial quantities can be
    skipped with cliques=False (their fields come back None)."""
    if nu not in ("mean", "global"):
        raise DomainError(f"nu convention must be 'mean' or 'global', got {nu!r}")
    avg, hist, var = degree_stats(g)
    b0, b1 = betti(g)
    nu_mean, nu_global = clustering(g)
    sweep = path_sweep(g)

    mu = median = diam = rad = None
    connected = b0 <= 1
    nsw = None
    if g.edge_count > 0:
        mu, median = characteristic_path_length(g, sweep=sweep)
        diam, connected = diameter(g, sweep=sweep)
        rad = radius(g, sweep=sweep)
        try:
            nsw = nsw_estimate(g, sweep=sweep)
        except UndefinedMetricError:
            nsw = None

    chosen = nu_mean if nu == "mean" else nu_global
    try:
        lam = length_cluster(mu, chosen) if mu is not None else None
    except UndefinedMetricError:
        lam = None

    cvec = chi = curv = dim = None
    if cliques:
        cv = clique_vector(g, node_budget=clique_budget)
        cvec = cv.counts
        chi = euler_characteristic(cv)
        curv = curvature_sum(g, node_budget=clique_budget)
        dim = inductive_dimension(g, call_budget=dimension_budget)

    return StatsRecord(
        n=g.n, edge_count=g.edge_count, avg_degree=avg, degree_histogram=hist,
        degree_variance=var, b0=b0, b1=b1, connected=connected, diameter=diam,
        radius=rad, mu=mu, median_mu=median, nu_mean=nu_mean, nu_global=nu_global,
        nu_convention=nu, length_cluster=lam, cliques=cvec, chi=chi,
        curvature_sum=curv, dimension=dim, nsw=nsw,
    )
