"""Finite simple graphs generated by transformation families on Z_n.

OrbitalGraph stores adjacency as one contiguous offsets+neighbors pair
(CSR-style, neighbor lists sorted ascending) so triangle counting and
clique enumeration can run on sorted-list intersections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError
from .modring import (
    MapSpec,
    map_table,
    normalize_modulus,
    normalize_spec,
    spec_text,
)


@dataclass(frozen=True)
class Provenance:
    """Where a graph came from; enough to rebuild it bit-exactly."""

    n: int
    maps: Optional[tuple[str, ...]] = None
    seed: Optional[int] = None
    baseline: Optional[str] = None
    source: Optional[str] = None

    def to_dict(self) -> dict:
        out: dict = {"n": self.n}
        if self.maps is not None:
            out["maps"] = list(self.maps)
        if self.seed is not None:
            out["seed"] = self.seed
        if self.baseline is not None:
            out["baseline"] = self.baseline
        if self.source is not None:
            out["source"] = self.source
        return out


class OrbitalGraph:
    """Immutable finite simple graph: no loops, no duplicate neighbors, symmetric."""

    __slots__ = ("n", "offsets", "neighbors", "edge_count", "provenance", "_lists", "_sets")

    def __init__(self, n: int, offsets: np.ndarray, neighbors: np.ndarray,
                 provenance: Optional[Provenance] = None):
        self.n = n
        offsets = np.ascontiguousarray(offsets, dtype=np.int64)
        neighbors = np.ascontiguousarray(neighbors, dtype=np.int64)
        offsets.setflags(write=False)
        neighbors.setflags(write=False)
        self.offsets = offsets
        self.neighbors = neighbors
        self.edge_count = len(neighbors) // 2
        self.provenance = provenance if provenance is not None else Provenance(n=n)
        self._lists = None
        self._sets = None

    # -- construction -------------------------------------------------------

    @staticmethod
    def from_pairs(n: int, pairs: np.ndarray, provenance: Optional[Provenance] = None
                   ) -> "OrbitalGraph":
        """Build from undirected vertex pairs; loops dropped, duplicates merged."""
        n = normalize_modulus(n)
        pairs = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
        if pairs.size and (pairs.min() < 0 or pairs.max() >= n):
            raise DomainError("edge endpoint outside [0, n-1]")
        lo = np.minimum(pairs[:, 0], pairs[:, 1])
        hi = np.maximum(pairs[:, 0], pairs[:, 1])
        keep = lo != hi
        codes = np.unique(lo[keep] * n + hi[keep])
        return OrbitalGraph._from_codes(n, codes, provenance)

    @staticmethod
    def _from_codes(n: int, codes: np.ndarray, provenance) -> "OrbitalGraph":
        u = codes // n
        v = codes % n
        src = np.concatenate([u, v])
        dst = np.concatenate([v, u])
        order = np.lexsort((dst, src))
        neighbors = dst[order]
        counts = np.bincount(src, minlength=n)
        offsets = np.concatenate([[0], np.cumsum(counts)])
        return OrbitalGraph(n, offsets, neighbors, provenance)

    # -- accessors ----------------------------------------------------------

    def degree(self, v: int) -> int:
        return int(self.offsets[v + 1] - self.offsets[v])

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def neighbor_lists(self) -> list[list[int]]:
        """Python-list adjacency (cached); the workhorse for tight loops."""
        if self._lists is None:
            flat = self.neighbors.tolist()
            off = self.offsets.tolist()
            self._lists = [flat[off[v]:off[v + 1]] for v in range(self.n)]
        return self._lists

    def neighbor_sets(self) -> list[set]:
        if self._sets is None:
            self._sets = [set(row) for row in self.neighbor_lists()]
        return self._sets

    def edge_pairs(self) -> np.ndarray:
        """All edges as (E, 2) array with u < v, sorted lexicographically."""
        src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees())
        mask = src < self.neighbors
        return np.column_stack([src[mask], self.neighbors[mask]])

    def has_edge(self, u: int, v: int) -> bool:
        row = self.neighbors_of(u)
        i = np.searchsorted(row, v)
        return i < len(row) and row[i] == v

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrbitalGraph):
            return NotImplemented
        return (self.n == other.n
                and np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.neighbors, other.neighbors))

    def __hash__(self):
        raise TypeError("OrbitalGraph is not hashable; hash its provenance instead")

    def __repr__(self):
        return f"OrbitalGraph(n={self.n}, edges={self.edge_count})"


def empty_graph(n: int = 0) -> OrbitalGraph:
    return OrbitalGraph(n, np.zeros(n + 1, dtype=np.int64), np.empty(0, dtype=np.int64))


def induced_subgraph(g: OrbitalGraph, vertices: Sequence[int]) -> OrbitalGraph:
    """Subgraph on ``vertices`` relabeled to 0..k-1 in sorted order."""
    verts = np.asarray(sorted(set(int(v) for v in vertices)), dtype=np.int64)
    if len(verts) == 0:
        return empty_graph(0)
    relabel = {int(v): i for i, v in enumerate(verts)}
    pairs = []
    lists = g.neighbor_lists()
    for v in verts:
        rv = relabel[int(v)]
        for w in lists[int(v)]:
            rw = relabel.get(w)
            if rw is not None and rv < rw:
                pairs.append((rv, rw))
    arr = np.array(pairs, dtype=np.int64) if pairs else np.empty((0, 2), dtype=np.int64)
    return OrbitalGraph.from_pairs(len(verts), arr)


# ---------------------------------------------------------------------------
# Orbital construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DigraphView:
    """The exact functional digraph x -> T_i(x), self-loops retained."""

    n: int
    specs: tuple[MapSpec, ...]
    tables: tuple = field(repr=False)  # one int64 table per generator

    @property
    def arc_count(self) -> int:
        return self.n * len(self.tables)

    def self_loop_count(self) -> int:
        x = np.arange(self.n, dtype=np.int64)
        return sum(int(np.count_nonzero(t == x)) for t in self.tables)

    def coinciding_arc_count(self) -> int:
        """Non-loop arcs that duplicate an undirected pair already present."""
        x = np.arange(self.n, dtype=np.int64)
        codes = []
        for t in self.tables:
            mask = t != x
            lo = np.minimum(x[mask], t[mask])
            hi = np.maximum(x[mask], t[mask])
            codes.append(lo * self.n + hi)
        allcodes = np.concatenate(codes) if codes else np.empty(0, dtype=np.int64)
        return int(len(allcodes) - len(np.unique(allcodes)))

    def cycle_lengths(self) -> list[int]:
        """Cycle lengths of each generator's functional graph, concatenated."""
        out = []
        for t in self.tables:
            out.extend(_functional_cycle_lengths(t))
        return out


def _functional_cycle_lengths(table: np.ndarray) -> list[int]:
    n = len(table)
    state = np.zeros(n, dtype=np.int8)  # 0 unvisited, 1 on stack, 2 done
    lengths = []
    for start in range(n):
        if state[start]:
            continue
        path = []
        x = start
        while state[x] == 0:
            state[x] = 1
            path.append(x)
            x = int(table[x])
        if state[x] == 1:
            lengths.append(len(path) - path.index(x))
        for v in path:
            state[v] = 2
    return lengths


def _validated_specs(n: int, specs: Sequence[MapSpec]) -> tuple[MapSpec, ...]:
    if not specs:
        raise DomainError("spec list must be non-empty")
    return tuple(normalize_spec(s, n) for s in specs)


def build_orbital_graph(n: int, specs: Sequence[MapSpec]) -> OrbitalGraph:
    """Undirected edge {x, T_i(x)} for every x and generator, loops dropped."""
    n = normalize_modulus(n)
    specs = _validated_specs(n, specs)
    tables = [map_table(s, n) for s in specs]
    prov = Provenance(n=n, maps=tuple(spec_text(s) for s in specs))
    return graph_from_tables(n, tables, prov)


def graph_from_tables(n: int, tables: Sequence[np.ndarray],
                      provenance: Optional[Provenance] = None) -> OrbitalGraph:
    """Shared arc->simple-graph path used by orbital and baseline generators."""
    x = np.arange(n, dtype=np.int64)
    code_chunks = []
    for t in tables:
        t = np.asarray(t, dtype=np.int64)
        if len(t) != n:
            raise DomainError(f"map table has length {len(t)}, expected {n}")
        mask = t != x
        lo = np.minimum(x[mask], t[mask])
        hi = np.maximum(x[mask], t[mask])
        code_chunks.append(lo * n + hi)
    if code_chunks:
        codes = np.unique(np.concatenate(code_chunks))
    else:
        codes = np.empty(0, dtype=np.int64)
    return OrbitalGraph._from_codes(n, codes, provenance)


def digraph_view(n: int, specs: Sequence[MapSpec]) -> DigraphView:
    n = normalize_modulus(n)
    specs = _validated_specs(n, specs)
    tables = tuple(map_table(s, n) for s in specs)
    for t in tables:
        t.setflags(write=False)
    return DigraphView(n=n, specs=specs, tables=tables)


def maps_are_invertible(n: int, specs: Sequence[MapSpec]) -> bool:
    """True iff every spec acts bijectively on Z_n (image counting)."""
    n = normalize_modulus(n)
    specs = _validated_specs(n, specs)
    return all(len(np.unique(map_table(s, n))) == n for s in specs)


def realize_as_orbital(g: OrbitalGraph) -> list[np.ndarray]:
    """Map tables T_1..T_d (d = max degree) whose orbital network equals g.

    T_i(x) is the i-th sorted neighbor of x when it exists, else x.
    """
    if g.n < 1:
        raise DomainError("graph must have at least one vertex")
    degs = g.degrees()
    d = int(degs.max()) if g.n else 0
    lists = g.neighbor_lists()
    tables = []
    for i in range(d):
        t = np.arange(g.n, dtype=np.int64)
        for x in range(g.n):
            if len(lists[x]) > i:
                t[x] = lists[x][i]
        tables.append(t)
    return tables
