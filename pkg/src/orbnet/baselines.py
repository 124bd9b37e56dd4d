"""Seeded generators for the four comparison models.

Every model draws from one numpy PCG64 stream per graph; the draw order is
documented on each generator so golden values stay stable across releases.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError
from .graph import OrbitalGraph, Provenance, graph_from_tables
from .modring import normalize_modulus


@dataclass(frozen=True)
class ErdosRenyi:
    n: int
    p: float


@dataclass(frozen=True)
class WattsStrogatz:
    n: int
    k: int   # even ring degree
    p: float  # rewiring probability


@dataclass(frozen=True)
class BarabasiAlbert:
    n: int
    k: int   # edges per arriving vertex


@dataclass(frozen=True)
class RandomPermutations:
    n: int
    d: int   # generator count


BaselineSpec = Union[ErdosRenyi, WattsStrogatz, BarabasiAlbert, RandomPermutations]

_BASELINE_RE = re.compile(r"(er|ws|ba|perm)\(([^)]*)\)\Z")


def baseline_text(spec: BaselineSpec) -> str:
    if isinstance(spec, ErdosRenyi):
        return f"er({spec.n},{spec.p!r})"
    if isinstance(spec, WattsStrogatz):
        return f"ws({spec.n},{spec.k},{spec.p!r})"
    if isinstance(spec, BarabasiAlbert):
        return f"ba({spec.n},{spec.k})"
    if isinstance(spec, RandomPermutations):
        return f"perm({spec.n},{spec.d})"
    raise DomainError(f"unknown baseline spec {spec!r}")


def parse_baseline_spec(text: str) -> BaselineSpec:
    """Parse 'er(1001,0.0098)' / 'ws(1001,8,0.2)' / 'ba(1001,4)' / 'perm(1001,2)'."""
    compact = "".join(text.split())
    m = _BASELINE_RE.match(compact)
    if not m:
        raise DomainError(f"bad baseline spec {text!r}")
    kind, arg_text = m.groups()
    args = arg_text.split(",") if arg_text else []
    try:
        if kind == "er" and len(args) == 2:
            return _validated(ErdosRenyi(int(args[0]), float(args[1])))
        if kind == "ws" and len(args) == 3:
            return _validated(WattsStrogatz(int(args[0]), int(args[1]), float(args[2])))
        if kind == "ba" and len(args) == 2:
            return _validated(BarabasiAlbert(int(args[0]), int(args[1])))
        if kind == "perm" and len(args) == 2:
            return _validated(RandomPermutations(int(args[0]), int(args[1])))
    except ValueError as exc:
        raise DomainError(f"bad baseline spec {text!r}: {exc}") from None
    raise DomainError(f"bad baseline spec {text!r}: wrong argument count")


def _validated(spec: BaselineSpec) -> BaselineSpec:
    normalize_modulus(spec.n)
    if isinstance(spec, ErdosRenyi) and not 0.0 <= spec.p <= 1.0:
        raise DomainError(f"edge probability {spec.p} outside [0, 1]")
    if isinstance(spec, WattsStrogatz):
        if spec.k % 2 or spec.k < 2 or spec.k >= spec.n:
            raise DomainError(f"ring degree k={spec.k} must be even, >= 2 and < n")
        if not 0.0 <= spec.p <= 1.0:
            raise DomainError(f"rewiring probability {spec.p} outside [0, 1]")
    if isinstance(spec, BarabasiAlbert) and (spec.k < 1 or spec.k + 1 > spec.n):
        raise DomainError(f"attachment count k={spec.k} needs 1 <= k <= n-1")
    if isinstance(spec, RandomPermutations) and spec.d < 1:
        raise DomainError(f"generator count d={spec.d} must be >= 1")
    return spec


def generate_baseline(spec: BaselineSpec, seed: int) -> OrbitalGraph:
    """Deterministic graph for (spec, seed)."""
    spec = _validated(spec)
    rng = np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))
    prov = Provenance(n=spec.n, baseline=baseline_text(spec), seed=int(seed))
    if isinstance(spec, ErdosRenyi):
        return _erdos_renyi(spec, rng, prov)
    if isinstance(spec, WattsStrogatz):
        return _watts_strogatz(spec, rng, prov)
    if isinstance(spec, BarabasiAlbert):
        return _barabasi_albert(spec, rng, prov)
    if isinstance(spec, RandomPermutations):
        tables = [rng.permutation(spec.n).astype(np.int64) for _ in range(spec.d)]
        return graph_from_tables(spec.n, tables, prov)
    raise DomainError(f"unknown baseline spec {spec!r}")


def _erdos_renyi(spec: ErdosRenyi, rng, prov) -> OrbitalGraph:
    # One uniform per unordered pair, in np.triu_indices order.
    n = spec.n
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(len(iu)) < spec.p
    pairs = np.column_stack([iu[mask], ju[mask]])
    return OrbitalGraph.from_pairs(n, pairs, prov)


def _watts_strogatz(spec: WattsStrogatz, rng, prov) -> OrbitalGraph:
    # Ring lattice; then offset-major, vertex-minor rewiring: one uniform per
    # ring edge, plus target draws repeated until the edge is simple.
    n, k, p = spec.n, spec.k, spec.p
    edges = set()
    for j in range(1, k // 2 + 1):
        for i in range(n):
            u, v = i, (i + j) % n
            edges.add((min(u, v), max(u, v)))
    for j in range(1, k // 2 + 1):
        for i in range(n):
            u, v = i, (i + j) % n
            key = (min(u, v), max(u, v))
            if key not in edges:
                continue  # already rewired away by an earlier pass
            if rng.random() >= p:
                continue
            if len(edges) >= n * (n - 1) // 2:
                continue
            for _ in range(16 * n):
                w = int(rng.integers(n))
                cand = (min(u, w), max(u, w))
                if w != u and cand not in edges:
                    edges.discard(key)
                    edges.add(cand)
                    break
    return OrbitalGraph.from_pairs(n, np.array(sorted(edges), dtype=np.int64), prov)


def _barabasi_albert(spec: BarabasiAlbert, rng, prov) -> OrbitalGraph:
    # Seed clique K_(k+1); each arriving vertex attaches k edges to targets
    # drawn degree-proportionally (repeat-until-distinct), in arrival order.
    n, k = spec.n, spec.k
    pairs = [(i, j) for i in range(k + 1) for j in range(i + 1, k + 1)]
    stubs = []  # vertex repeated once per incident edge
    for u, v in pairs:
        stubs.append(u)
        stubs.append(v)
    for v in range(k + 1, n):
        targets: list[int] = []
        while len(targets) < k:
            w = stubs[int(rng.integers(len(stubs)))]
            if w not in targets:
                targets.append(w)
        for w in targets:
            pairs.append((w, v))
            stubs.append(w)
            stubs.append(v)
    return OrbitalGraph.from_pairs(n, np.array(pairs, dtype=np.int64), prov)
