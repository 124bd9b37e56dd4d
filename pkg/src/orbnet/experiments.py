"""Parameter sweeps, conjecture probes and proposition checks.

Connectivity sweeps never materialize graphs: union-find runs directly over
generated arcs, and for d-subsets the parent array for a fixed prefix is
compressed once and copied per final shift, which is what makes the d=3
sweep to p=229 tractable.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import __version__
from ._uf import uf_compress, uf_find, uf_union
from .baselines import RandomPermutations, generate_baseline
from .errors import BudgetError, DomainError
from .graph import OrbitalGraph, build_orbital_graph, digraph_view, induced_subgraph
from .metrics import (
    DEFAULT_NU,
    characteristic_path_length,
    clustering,
    compute_stats,
    length_cluster,
    triangle_count,
)
from .modring import (
    Affine,
    FloorPower,
    Quadratic,
    _factorize,
    factor_summary,
    multiplicative_order,
    map_table,
    normalize_modulus,
    squaring_fixed_points,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return _factorize(n) == {n: 1}


def primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(math.isqrt(limit)) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.flatnonzero(sieve).tolist()


# ---------------------------------------------------------------------------
# SweepResult
# ---------------------------------------------------------------------------

@dataclass
class SweepResult:
    """Rows of (parameter tuple -> outcomes), sorted by parameter tuple."""

    name: str
    axes: tuple[str, ...]
    outcomes: tuple[str, ...]
    rows: list[tuple]
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        k = len(self.axes)
        self.rows = sorted(self.rows, key=lambda r: r[:k])
        self.provenance.setdefault("version", __version__)

    @property
    def columns(self) -> tuple[str, ...]:
        return self.axes + self.outcomes


# ---------------------------------------------------------------------------
# Connectivity of quadratic shift families
# ---------------------------------------------------------------------------

def _arcs_union(parent: list, table, comps: int) -> int:
    """Union x with table[x] for all x; returns remaining component count."""
    for x, y in enumerate(table):
        if x != y and uf_union(parent, x, y):
            comps -= 1
    return comps


def _shift_union(parent: list, sq: list, a: int, n: int, comps: int) -> int:
    for x in range(n):
        y = sq[x] + a
        if y >= n:
            y -= n
        if y != x and uf_union(parent, x, y):
            comps -= 1
    return comps


def _squares(n: int) -> list[int]:
    return [(x * x) % n for x in range(n)]


def subset_component_count(n: int, shifts: Sequence[int]) -> int:
    """Components of the graph from {x^2+a : a in shifts}, no graph built."""
    n = normalize_modulus(n)
    sq = _squares(n)
    parent = list(range(n))
    comps = n
    for a in shifts:
        comps = _shift_union(parent, sq, a % n, n, comps)
    return comps


def connectivity_probability(p: int, d: int, allow_composite: bool = False,
                             ordered: bool = False) -> Fraction:
    """Exact probability that {x^2+a_i} on Z_p is connected, over unordered
    d-subsets of distinct shifts (or Z_p^d tuples when ordered=True)."""
    if d not in (1, 2, 3):
        raise DomainError(f"d must be 1, 2 or 3, got {d}")
    if not is_prime(p) and not allow_composite:
        raise DomainError(f"n={p} is not prime (pass allow_composite to sweep composites)")
    n = normalize_modulus(p)
    if d > n:
        raise DomainError(f"no {d}-subsets of distinct shifts exist on Z_{n}")
    if not ordered:
        hits = _connected_subset_count(n, d)
        return Fraction(hits, math.comb(n, d))
    # Ordered tuples with repetition reduce to subset counts weighted by the
    # number of surjections onto each subset size.
    surj = {1: [1], 2: [1, 2], 3: [1, 6, 6]}[d]
    total = sum(w * _connected_subset_count(n, j + 1) for j, w in enumerate(surj))
    return Fraction(total, n**d)


def _connected_subset_count(n: int, d: int) -> int:
    sq = _squares(n)
    fresh = list(range(n))
    if d == 1:
        hits = 0
        for a in range(n):
            parent = fresh.copy()
            if _shift_union(parent, sq, a, n, n) == 1:
                hits += 1
        return hits
    hits = 0
    for a in range(n):
        base_a = fresh.copy()
        comps_a = _shift_union(base_a, sq, a, n, n)
        uf_compress(base_a)
        if d == 2:
            for b in range(a + 1, n):
                parent = base_a.copy()
                if _shift_union(parent, sq, b, n, comps_a) == 1:
                    hits += 1
        else:
            for b in range(a + 1, n):
                base_b = base_a.copy()
                comps_b = _shift_union(base_b, sq, b, n, comps_a)
                uf_compress(base_b)
                for c in range(b + 1, n):
                    parent = base_b.copy()
                    if _shift_union(parent, sq, c, n, comps_b) == 1:
                        hits += 1
    return hits


def connectivity_sweep(d: int, p_max: int, allow_composite: bool = False) -> SweepResult:
    """C(p) for every prime d <= p <= p_max (Challenge A/B/C series)."""
    rows = []
    for p in primes_up_to(p_max):
        if p < d:
            continue  # no d-subsets of distinct shifts exist
        c = connectivity_probability(p, d, allow_composite=allow_composite)
        rows.append((p, c.numerator, c.denominator, float(c)))
    return SweepResult(
        name="connectivity", axes=("p",),
        outcomes=("connected_subsets", "total_subsets", "probability"),
        rows=rows, provenance={"experiment": "connectivity", "d": d, "p_max": p_max},
    )


# ---------------------------------------------------------------------------
# Minimal diameters r_d(n)
# ---------------------------------------------------------------------------

def _subset_diameter_bounded(n: int, sq: list, shifts, adj: list, seen: list,
                             token: int, best: Optional[int]):
    """(diameter, token) of the subset's graph, or (None, token) when the
    graph is disconnected or provably no better than ``best``.

    Exact pruning only: a graph is dropped once some eccentricity (a lower
    bound for the diameter) reaches the current best.
    """
    for row in adj:
        row.clear()
    for a in shifts:
        for x in range(n):
            y = sq[x] + a
            if y >= n:
                y -= n
            if y != x:
                adj[x].append(y)
                adj[y].append(x)
    ecc0, reached, token = _bfs_ecc(adj, 0, seen, token)
    if reached < n:
        return None, token
    if best is not None and ecc0 >= best:
        return None, token
    diam = ecc0
    for src in range(1, n):
        ecc, _, token = _bfs_ecc(adj, src, seen, token)
        if ecc > diam:
            diam = ecc
            if best is not None and diam >= best:
                return None, token
    return diam, token


def _bfs_ecc(adj: list, src: int, seen: list, token: int):
    token += 1
    seen[src] = token
    frontier = [src]
    reached = 1
    ecc = 0
    while frontier:
        nxt = []
        for v in frontier:
            for w in adj[v]:
                if seen[w] != token:
                    seen[w] = token
                    nxt.append(w)
        if not nxt:
            break
        reached += len(nxt)
        ecc += 1
        frontier = nxt
    return ecc, reached, token


def _min_diameter_scan(n: int, d: int, firsts: Sequence[int], best: Optional[int]):
    sq = _squares(n)
    adj: list[list[int]] = [[] for _ in range(n)]
    seen = [0] * n
    token = 0
    for a in firsts:
        for rest in combinations(range(a + 1, n), d - 1):
            diam, token = _subset_diameter_bounded(n, sq, (a,) + rest, adj, seen, token, best)
            if diam is not None and (best is None or diam < best):
                best = diam
    return best


def _min_diameter_worker(args):
    return _min_diameter_scan(*args)


def minimal_diameter(n: int, d: int, jobs: int = 1):
    """Smallest diameter over all d-subsets of quadratic shifts on Z_n;
    math.inf when every subset's graph is disconnected."""
    n = normalize_modulus(n)
    if n < 2:
        raise DomainError("minimal diameter needs n >= 2")
    if d not in (1, 2, 3):
        raise DomainError(f"d must be 1, 2 or 3, got {d}")
    if jobs <= 1:
        best = _min_diameter_scan(n, d, range(n - d + 1), None)
        return best if best is not None else math.inf
    # Parallel: a serial pass over the leading shard seeds the bound, then
    # the remaining first-shift shards run with that bound.
    firsts = list(range(n - d + 1))
    head, tail = firsts[:1], firsts[1:]
    best = _min_diameter_scan(n, d, head, None)
    shards = [tail[i::jobs] for i in range(jobs) if tail[i::jobs]]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for local in pool.map(_min_diameter_worker, [(n, d, s, best) for s in shards]):
            if local is not None and (best is None or local < best):
                best = local
    return best if best is not None else math.inf


def minimal_diameter_sweep(d: int, n_values: Sequence[int], jobs: int = 1) -> SweepResult:
    rows = []
    for n in n_values:
        r = minimal_diameter(n, d, jobs=jobs)
        rows.append((n, math.inf if r is math.inf else int(r)))
    return SweepResult(
        name="min_diameter", axes=("n",), outcomes=("r",),
        rows=rows, provenance={"experiment": "min_diameter", "d": d},
    )


# ---------------------------------------------------------------------------
# Length-cluster expectation over generator families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LccResult:
    mean: float
    stderr: float
    used: int
    skipped: int
    nu: str


def lcc_expectation(family: str, n: int, samples: int = 1, seed: int = 0,
                    d: int = 2, nu: str = DEFAULT_NU, exhaustive: bool = False) -> LccResult:
    """Mean and standard error of lambda over a family sample; graphs with
    undefined lambda (nu = 0 or 1) are skipped and counted."""
    n = normalize_modulus(n)
    if samples < 1 and not exhaustive:
        raise DomainError("samples must be >= 1")
    rng = np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))
    values: list[float] = []
    skipped = 0

    def record(g: OrbitalGraph):
        nonlocal skipped
        nu_mean, nu_global = clustering(g)
        chosen = nu_mean if nu == "mean" else nu_global
        if not 0.0 < chosen < 1.0:
            skipped += 1
            return
        mu, _ = characteristic_path_length(g)
        values.append(length_cluster(mu, chosen))

    if family == "perm":
        for _ in range(samples):
            sub_seed = int(rng.integers(0, 2**63, dtype=np.int64))
            record(generate_baseline(RandomPermutations(n, d), sub_seed))
    elif family == "quadratic":
        if exhaustive:
            tuples = list(combinations(range(n), d))
        else:
            seen = set()
            while len(seen) < min(samples, math.comb(n, d)):
                cand = tuple(sorted(rng.choice(n, size=d, replace=False).tolist()))
                seen.add(cand)
            tuples = sorted(seen)
        for shifts in tuples:
            record(build_orbital_graph(n, [Quadratic(a) for a in shifts]))
    else:
        raise DomainError(f"unknown family {family!r} (use 'perm' or 'quadratic')")

    if not values:
        raise DomainError("lambda undefined for every sampled graph")
    arr = np.asarray(values)
    stderr = float(arr.std(ddof=1) / math.sqrt(len(arr))) if len(arr) > 1 else 0.0
    return LccResult(float(arr.mean()), stderr, len(arr), skipped, nu)


def metrics_series(family: str, n_values: Sequence[int], d: int = 2,
                   samples: int = 1, seed: int = 0) -> SweepResult:
    """Per-n averages of degree, mu and nu for one generator family; the
    series behind the mu / log(nu) / delta panels."""
    rows = []
    for n in n_values:
        n = normalize_modulus(n)
        rng = np.random.Generator(np.random.PCG64((int(seed) + n) & 0xFFFFFFFFFFFFFFFF))
        graphs = []
        if family == "perm":
            for _ in range(samples):
                sub = int(rng.integers(0, 2**63, dtype=np.int64))
                graphs.append(generate_baseline(RandomPermutations(n, d), sub))
        elif family == "quadratic":
            for shifts in _sample_subsets(n, min(d, n), samples, rng):
                graphs.append(build_orbital_graph(n, [Quadratic(a) for a in shifts]))
        else:
            raise DomainError(f"unknown family {family!r} (use 'perm' or 'quadratic')")
        degs, mus, nms, ngs, lams = [], [], [], [], []
        for g in graphs:
            degs.append(2.0 * g.edge_count / g.n)
            nm, ng = clustering(g)
            nms.append(nm)
            ngs.append(ng)
            if g.edge_count:
                mu, _ = characteristic_path_length(g)
                mus.append(mu)
                if 0.0 < ng < 1.0:
                    lams.append(length_cluster(mu, ng))
        rows.append((
            n, len(graphs), float(np.mean(degs)),
            float(np.mean(mus)) if mus else None,
            float(np.mean(nms)), float(np.mean(ngs)),
            float(np.mean(lams)) if lams else None,
        ))
    return SweepResult(
        name="metrics", axes=("n",),
        outcomes=("samples", "avg_degree", "mu", "nu_mean", "nu_global", "lambda"),
        rows=rows, provenance={"experiment": "metrics", "family": family, "d": d,
                               "samples": samples, "seed": seed},
    )


# ---------------------------------------------------------------------------
# Component matrix (network Mandelbrot)
# ---------------------------------------------------------------------------

@dataclass
class ComponentMatrix:
    n: int
    table: np.ndarray  # (n, n) component counts, symmetric

    def to_sweep(self) -> SweepResult:
        rows = [(a, b, int(self.table[a, b]))
                for a in range(self.n) for b in range(self.n)]
        return SweepResult(
            name="component_matrix", axes=("a", "b"), outcomes=("components",),
            rows=rows, provenance={"experiment": "component_matrix", "n": self.n},
        )


def pair_component_count(n: int, a: int, b: int) -> int:
    return subset_component_count(n, (a,) if a == b else (a, b))


def component_matrix(n: int, max_n: int = 256) -> ComponentMatrix:
    """A[a, b] = components of the graph from {x^2+a, x^2+b}; O(n^2) graphs."""
    n = normalize_modulus(n)
    if n > max_n:
        raise BudgetError(f"component matrix for n={n} exceeds budget max_n={max_n}")
    sq = _squares(n)
    fresh = list(range(n))
    table = np.zeros((n, n), dtype=np.int32)
    for a in range(n):
        base = fresh.copy()
        comps_a = _shift_union(base, sq, a, n, n)
        uf_compress(base)
        table[a, a] = comps_a
        for b in range(a + 1, n):
            parent = base.copy()
            table[a, b] = table[b, a] = _shift_union(parent, sq, b, n, comps_a)
    return ComponentMatrix(n=n, table=table)


# ---------------------------------------------------------------------------
# Propositions (component symmetry, bipartiteness)
# ---------------------------------------------------------------------------

@dataclass
class SymmetryVerdict:
    n: int
    shifts: tuple[int, ...]
    parity_disconnected: bool
    phi_shift: Optional[int]          # None when 8 | n
    phi_commutes: Optional[bool]
    isomorphic: Optional[bool]        # None = not found within budget (8|n case)
    budget_exhausted: bool
    passed: bool


def _parity_split_edges(g: OrbitalGraph):
    even_edges, odd_edges, cross = [], [], 0
    for u, v in g.edge_pairs():
        u, v = int(u), int(v)
        if u % 2 != v % 2:
            cross += 1
        elif u % 2 == 0:
            even_edges.append((u, v))
        else:
            odd_edges.append((u, v))
    return even_edges, odd_edges, cross


def check_symmetry_proposition(n: int, shifts: Sequence[int],
                               iso_budget: int = 500_000) -> SymmetryVerdict:
    """Even modulus, even shifts: the graph splits into the even and odd
    vertex classes; when 8 does not divide n the translation x + n/2 (n = 2, 6
    mod 8) or x + n/4 (n = 4 mod 8) is checked as an explicit commuting
    isomorphism, otherwise a budgeted backtracking search runs."""
    n = normalize_modulus(n)
    shifts = tuple(int(a) % n for a in shifts)
    if n % 2 or any(a % 2 for a in shifts):
        raise DomainError("symmetry proposition needs even n and even shifts")
    g = build_orbital_graph(n, [Quadratic(a) for a in shifts])
    even_edges, odd_edges, cross = _parity_split_edges(g)
    parity_ok = cross == 0

    if n % 8 != 0:
        s = n // 2 if n % 8 in (2, 6) else n // 4
        if n % 8 == 4:
            k = (n - 4) // 8
            source_parity = k % 2      # commutation holds on x = k mod 2
        else:
            source_parity = 0          # holds everywhere; check from evens
        commutes = all(
            ((x * x + a + s) - ((x + s) ** 2 + a)) % n == 0
            for a in shifts for x in range(source_parity, n, 2)
        )
        src_edges = even_edges if source_parity == 0 else odd_edges
        dst_edges = odd_edges if source_parity == 0 else even_edges
        dst_set = {(min(u, v), max(u, v)) for u, v in dst_edges}
        mapped_ok = len(src_edges) == len(dst_edges) and all(
            (min((u + s) % n, (v + s) % n), max((u + s) % n, (v + s) % n)) in dst_set
            for u, v in src_edges
        )
        return SymmetryVerdict(n, shifts, parity_ok, s, commutes, mapped_ok, False,
                               parity_ok and commutes and mapped_ok)

    # 8 | n: the proposition claims only the parity split; the isomorphism
    # search result is reported as a finding (True / False / None=gave up).
    evens = induced_subgraph(g, range(0, n, 2))
    odds = induced_subgraph(g, range(1, n, 2))
    mapping, exhausted = find_isomorphism(evens, odds, node_budget=iso_budget)
    iso: Optional[bool] = True if mapping is not None else (None if exhausted else False)
    return SymmetryVerdict(n, shifts, parity_ok, None, None, iso, exhausted, parity_ok)


@dataclass
class BipartiteVerdict:
    n: int
    shifts: tuple[int, ...]
    bipartite: bool
    parts: Optional[tuple[tuple[int, ...], tuple[int, ...]]]
    triangles: int
    nu_global: float
    passed: bool


def check_bipartite_proposition(n: int, shifts: Sequence[int]) -> BipartiteVerdict:
    """Even modulus, odd shifts: every edge must cross the even/odd classes,
    so the graph is bipartite with parity parts and has no triangles."""
    n = normalize_modulus(n)
    shifts = tuple(int(a) % n for a in shifts)
    if n % 2 or any(a % 2 == 0 for a in shifts):
        raise DomainError("bipartite proposition needs even n and odd shifts")
    g = build_orbital_graph(n, [Quadratic(a) for a in shifts])
    cross_ok = all(int(u) % 2 != int(v) % 2 for u, v in g.edge_pairs())
    tri = triangle_count(g)
    _, nu_global = clustering(g)
    parts = (tuple(range(0, n, 2)), tuple(range(1, n, 2))) if cross_ok else None
    passed = cross_ok and tri == 0 and nu_global == 0.0
    return BipartiteVerdict(n, shifts, cross_ok, parts, tri, nu_global, passed)


# ---------------------------------------------------------------------------
# Backtracking isomorphism (degree + neighbor-degree-multiset pruning)
# ---------------------------------------------------------------------------

def find_isomorphism(g1: OrbitalGraph, g2: OrbitalGraph,
                     node_budget: int = 500_000):
    """(mapping, budget_exhausted): mapping is a vertex list or None.

    None with budget_exhausted=False is a proof of non-isomorphism; None with
    budget_exhausted=True only means the search gave up.
    """
    if g1.n != g2.n or g1.edge_count != g2.edge_count:
        return None, False
    n = g1.n
    if n == 0:
        return [], False
    deg1, deg2 = g1.degrees(), g2.degrees()
    if sorted(deg1.tolist()) != sorted(deg2.tolist()):
        return None, False

    def labels(g, degs):
        out = []
        for v in range(n):
            nd = tuple(sorted(int(degs[w]) for w in g.neighbors_of(v)))
            out.append((int(degs[v]), nd))
        return out

    lab1, lab2 = labels(g1, deg1), labels(g2, deg2)
    if sorted(lab1) != sorted(lab2):
        return None, False

    cands = {v: [w for w in range(n) if lab2[w] == lab1[v]] for v in range(n)}
    order = sorted(range(n), key=lambda v: (len(cands[v]), -lab1[v][0]))
    # Prefer vertices adjacent to already-ordered ones so consistency prunes early.
    placed = []
    placed_set: set[int] = set()
    adj1 = g1.neighbor_sets()
    adj2 = g2.neighbor_sets()
    remaining = order[:]
    while remaining:
        pick = None
        for v in remaining:
            if adj1[v] & placed_set:
                pick = v
                break
        if pick is None:
            pick = remaining[0]
        placed.append(pick)
        placed_set.add(pick)
        remaining.remove(pick)

    mapping = [-1] * n
    used = [False] * n
    nodes = 0

    class Budget(Exception):
        pass

    def backtrack(i: int):
        nonlocal nodes
        if i == n:
            return True
        nodes += 1
        if nodes > node_budget:
            raise Budget
        v = placed[i]
        mapped_nbrs = [w for w in adj1[v] if mapping[w] >= 0]
        for w in cands[v]:
            if used[w]:
                continue
            ok = all(mapping[u] in adj2[w] for u in mapped_nbrs)
            if ok:
                # Non-neighbors must stay non-neighbors.
                ok = all(mapping[u] not in adj2[w]
                         for u in range(n)
                         if mapping[u] >= 0 and u not in adj1[v])
            if ok:
                mapping[v] = w
                used[w] = True
                if backtrack(i + 1):
                    return True
                mapping[v] = -1
                used[w] = False
        return False

    try:
        found = backtrack(0)
    except Budget:
        return None, True
    return (mapping if found else None), False


# ---------------------------------------------------------------------------
# Collatz-style affine connectivity
# ---------------------------------------------------------------------------

def collatz_components(n: int) -> int:
    """Components of the graph on Z_n from {3x+1, 2x}."""
    parent = list(range(n))
    comps = n
    for table in (map_table(Affine(3, 1), n), map_table(Affine(2, 0), n)):
        comps = _arcs_union(parent, table.tolist(), comps)
    return comps


def collatz_connectivity(n_max: int) -> SweepResult:
    """Components of the graph from {3x+1, 2x} for every 2 <= n <= n_max."""
    if n_max < 2:
        raise DomainError("n_max must be >= 2")
    rows = []
    for n in range(2, n_max + 1):
        comps = collatz_components(n)
        rows.append((n, comps, comps == 1))
    return SweepResult(
        name="collatz", axes=("n",), outcomes=("components", "connected"),
        rows=rows, provenance={"experiment": "collatz", "n_max": n_max},
    )


# ---------------------------------------------------------------------------
# Clustering decay and average degree across moduli
# ---------------------------------------------------------------------------

def _sample_subsets(n: int, d: int, samples: Optional[int], rng) -> list[tuple]:
    total = math.comb(n, d)
    if samples is None or samples >= total:
        return list(combinations(range(n), d))
    seen: set[tuple] = set()
    while len(seen) < samples:
        seen.add(tuple(sorted(rng.choice(n, size=d, replace=False).tolist())))
    return sorted(seen)


def clustering_decay_sweep(d: int, n_values: Sequence[int],
                           samples: Optional[int] = None, seed: int = 0) -> SweepResult:
    """Expected global clustering over shift tuples, with the mean number of
    solutions to T_i(T_i(x)) = T_j(x) (the triangle equation)."""
    if d not in (2, 3):
        raise DomainError(f"d must be 2 or 3, got {d}")
    rng = np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))
    rows = []
    for n in n_values:
        n = normalize_modulus(n)
        sq = np.asarray(_squares(n), dtype=np.int64)
        x = np.arange(n, dtype=np.int64)
        nus, sols = [], []
        for shifts in _sample_subsets(n, d, samples, rng):
            g = build_orbital_graph(n, [Quadratic(a) for a in shifts])
            nus.append(clustering(g)[1])
            counts = []
            for a in shifts:
                ta = (sq[x] + a) % n
                lhs = (sq[ta] + a) % n
                for b in shifts:
                    if b != a:
                        counts.append(int(np.count_nonzero(lhs == (sq[x] + b) % n)))
            sols.append(float(np.mean(counts)))
        mean_nu = float(np.mean(nus))
        rows.append((n, len(nus), mean_nu, n * mean_nu, float(np.mean(sols))))
    return SweepResult(
        name="clustering_decay", axes=("n",),
        outcomes=("tuples", "mean_nu_global", "n_times_nu", "mean_eq_solutions"),
        rows=rows,
        provenance={"experiment": "clustering_decay", "d": d, "samples": samples, "seed": seed},
    )


def average_degree_sweep(n_values: Sequence[int]) -> SweepResult:
    """Mean average degree over all quadratic pairs a < b, with the self-loop
    and coinciding-arc counts that explain the deviation from 4."""
    rows = []
    for n in n_values:
        n = normalize_modulus(n)
        if n < 2:
            raise DomainError("average degree sweep needs n >= 2")
        sq = np.asarray(_squares(n), dtype=np.int64)
        x = np.arange(n, dtype=np.int64)
        total_deg = 0.0
        total_loops = 0
        total_coincidences = 0
        pairs = 0
        loop_hist = np.bincount((x - sq) % n, minlength=n)  # self loops per shift
        for a in range(n):
            ta = (sq + a) % n
            mask_a = ta != x
            code_a = np.minimum(x[mask_a], ta[mask_a]) * n + np.maximum(x[mask_a], ta[mask_a])
            for b in range(a + 1, n):
                tb = (sq + b) % n
                mask_b = tb != x
                code_b = np.minimum(x[mask_b], tb[mask_b]) * n + np.maximum(x[mask_b], tb[mask_b])
                codes = np.concatenate([code_a, code_b])
                edges = len(np.unique(codes))
                loops = int(loop_hist[a] + loop_hist[b])
                total_deg += 2.0 * edges / n
                total_loops += loops
                total_coincidences += len(codes) - edges
                pairs += 1
        mean_deg = total_deg / pairs
        rows.append((n, pairs, mean_deg, mean_deg - 4.0, total_loops, total_coincidences))
    return SweepResult(
        name="avg_degree", axes=("n",),
        outcomes=("pairs", "mean_avg_degree", "deviation", "self_loops", "coincidences"),
        rows=rows, provenance={"experiment": "avg_degree"},
    )


# ---------------------------------------------------------------------------
# Squaring map structure (fixed points and cycle lengths)
# ---------------------------------------------------------------------------

@dataclass
class SquaringStructure:
    n: int
    fixed_points: tuple[int, ...]
    fixed_point_count_matches_omega: bool
    cycle_lengths: tuple[int, ...]
    order_verified: dict[int, bool]   # cycle length -> exists odd divisor d of
                                      # carmichael(n) with ord_d(2) = length


def squaring_structure(n: int) -> SquaringStructure:
    n = normalize_modulus(n)
    if n < 2:
        raise DomainError("squaring structure needs n >= 2")
    view = digraph_view(n, [Quadratic(0)])
    table = view.tables[0]
    fixed = tuple(int(v) for v in np.flatnonzero(table == np.arange(n)))
    lengths = tuple(sorted(view.cycle_lengths()))
    lam = factor_summary(n).carmichael
    odd_divisors = [d for d in range(1, lam + 1) if lam % d == 0 and d % 2 == 1]
    orders = {d: multiplicative_order(2 % d if d > 1 else 0, d) for d in odd_divisors}
    verified = {t: any(o == t for o in orders.values()) for t in sorted(set(lengths))}
    omega_ok = len(fixed) == 2 ** factor_summary(n).omega == squaring_fixed_points(n)
    return SquaringStructure(n, fixed, omega_ok, lengths, verified)


# ---------------------------------------------------------------------------
# Floor-power alpha sweep
# ---------------------------------------------------------------------------

def alpha_maps(alpha: float, d: int) -> list:
    """{x+1} plus floor(x^alpha)+i for 2 <= i <= d."""
    if d < 1:
        raise DomainError("d must be >= 1")
    return [Affine(1, 1)] + [FloorPower(alpha, i) for i in range(2, d + 1)]


def alpha_sweep(n: int, alphas: Sequence[float], d: int) -> SweepResult:
    rows = []
    for alpha in alphas:
        g = build_orbital_graph(n, alpha_maps(float(alpha), d))
        s = compute_stats(g, cliques=False)
        rows.append((float(alpha), s.edge_count, s.avg_degree, s.mu, s.nu_mean,
                     s.nu_global, s.length_cluster, s.diameter, s.connected))
    return SweepResult(
        name="alpha", axes=("alpha",),
        outcomes=("edges", "avg_degree", "mu", "nu_mean", "nu_global",
                  "lambda", "diameter", "connected"),
        rows=rows, provenance={"experiment": "alpha", "n": n, "d": d},
    )
