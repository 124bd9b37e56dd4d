"""Edge-list / DOT / CSV / JSON persistence.

CSV is the plotting contract, JSON the machine contract; both carry enough
provenance (seed, map specs, version) to regenerate the data from the file
alone. Numbers are written in shortest round-trip decimal form so parsing
and re-serializing a file is byte-identical.
"""

from __future__ import annotations

import csv
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

import numpy as np

from .errors import DomainError
from .experiments import SweepResult
from .graph import OrbitalGraph, Provenance
from .metrics import StatsRecord


# ---------------------------------------------------------------------------
# Edge lists
# ---------------------------------------------------------------------------

@dataclass
class LoadReport:
    dropped_self_loops: int
    dropped_duplicates: int
    relabeling: Optional[dict[int, int]]  # original id -> compact id, if compacted


def edge_list_text(g: OrbitalGraph) -> str:
    """One undirected edge "u v" per line; a '# n N' comment preserves
    isolated vertices across the round trip."""
    lines = [f"# n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edge_pairs())
    return "\n".join(lines) + "\n"


def save_edge_list(g: OrbitalGraph, path) -> None:
    Path(path).write_text(edge_list_text(g), encoding="ascii")


_N_HINT = re.compile(r"[#%]\s*n[\s=]+(\d+)\s*$")


def load_edge_list(path) -> OrbitalGraph:
    g, _ = load_edge_list_report(path)
    return g


def load_edge_list_report(path) -> tuple[OrbitalGraph, LoadReport]:
    """Parse an edge list; self-loops and duplicate edges are dropped and
    counted, sparse vertex ids are compacted with the relabeling reported."""
    path = Path(path)
    pairs: list[tuple[int, int]] = []
    n_hint: Optional[int] = None
    loops = 0
    for lineno, raw in enumerate(path.read_text(encoding="ascii").splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line[0] in "#%":
            m = _N_HINT.match(line)
            if m and n_hint is None:
                n_hint = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise DomainError(f"{path}:{lineno}: expected 'u v', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise DomainError(f"{path}:{lineno}: non-integer endpoint in {raw!r}") from None
        if u < 0 or v < 0:
            raise DomainError(f"{path}:{lineno}: negative vertex id in {raw!r}")
        if u == v:
            loops += 1
            continue
        pairs.append((min(u, v), max(u, v)))

    relabeling = None
    if n_hint is not None:
        n = n_hint
        for u, v in pairs:
            if v >= n:
                raise DomainError(f"{path}: vertex id {v} >= declared n {n}")
    else:
        ids = sorted({x for p in pairs for x in p})
        if not ids:
            n = 1
        elif ids[-1] == len(ids) - 1:
            n = len(ids)  # already dense 0..max
        else:
            relabeling = {orig: i for i, orig in enumerate(ids)}
            pairs = [(relabeling[u], relabeling[v]) for u, v in pairs]
            n = len(ids)

    dupes = len(pairs) - len(set(pairs))
    arr = np.array(pairs, dtype=np.int64) if pairs else np.empty((0, 2), dtype=np.int64)
    g = OrbitalGraph.from_pairs(n, arr, Provenance(n=n, source=str(path)))
    return g, LoadReport(loops, dupes, relabeling)


# ---------------------------------------------------------------------------
# DOT export
# ---------------------------------------------------------------------------

def export_dot(g: OrbitalGraph, path) -> None:
    """Undirected DOT with deterministic edge order; isolated vertices get
    explicit node statements so the drawing shows all of Z_n."""
    out = ["graph {"]
    degs = g.degrees()
    for v in range(g.n):
        if degs[v] == 0:
            out.append(f"  {v};")
    for u, v in g.edge_pairs():
        out.append(f"  {u} -- {v};")
    out.append("}")
    Path(path).write_text("\n".join(out) + "\n", encoding="ascii")


# ---------------------------------------------------------------------------
# Sweep CSV
# ---------------------------------------------------------------------------

def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        v = float(value)
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return repr(v)
    return str(value)


_INT_RE = re.compile(r"-?\d+\Z")


def parse_cell(text: str):
    if text == "":
        return None
    if text == "true":
        return True
    if text == "false":
        return False
    if text == "inf":
        return math.inf
    if text == "-inf":
        return -math.inf
    if _INT_RE.match(text):
        return int(text)
    try:
        return float(text)
    except ValueError:
        return text


def write_sweep_csv(result: SweepResult, path) -> None:
    path = Path(path)
    with path.open("w", newline="", encoding="ascii") as fh:
        fh.write(f"# name={result.name}\n")
        fh.write(f"# axes={','.join(result.axes)}\n")
        for key in sorted(result.provenance):
            fh.write(f"# {key}={result.provenance[key]}\n")
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(result.columns)
        for row in result.rows:
            writer.writerow([format_cell(v) for v in row])


def read_sweep_csv(path) -> SweepResult:
    path = Path(path)
    name = "sweep"
    axes: tuple[str, ...] = ()
    provenance: dict = {}
    header: Optional[list[str]] = None
    rows: list[tuple] = []
    with path.open("r", newline="", encoding="ascii") as fh:
        data_lines = []
        for line in fh:
            if line.startswith("#"):
                body = line[1:].strip()
                key, _, value = body.partition("=")
                if key == "name":
                    name = value
                elif key == "axes":
                    axes = tuple(v for v in value.split(",") if v)
                else:
                    provenance[key] = value
            else:
                data_lines.append(line)
        for record in csv.reader(data_lines):
            if header is None:
                header = record
            else:
                rows.append(tuple(parse_cell(c) for c in record))
    if header is None:
        raise DomainError(f"{path}: no header row")
    if not axes:
        axes = tuple(header[:1])
    outcomes = tuple(header[len(axes):])
    return SweepResult(name=name, axes=axes, outcomes=outcomes, rows=rows,
                       provenance=provenance)


# ---------------------------------------------------------------------------
# Stats JSON
# ---------------------------------------------------------------------------

def _fraction_str(f: Optional[Fraction]) -> Optional[str]:
    if f is None:
        return None
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def parse_fraction(text: Optional[str]) -> Optional[Fraction]:
    return None if text is None else Fraction(text)


def stats_json_payload(record: StatsRecord,
                       provenance: Union[Provenance, dict, None] = None) -> dict:
    """The stable StatsJson object; lambda/nsw/clique fields are null when
    undefined or skipped."""
    if isinstance(provenance, Provenance):
        provenance = provenance.to_dict()
    return {
        "n": record.n,
        "edges": record.edge_count,
        "avg_degree": record.avg_degree,
        "mu": record.mu,
        "median_mu": record.median_mu,
        "nu_mean": record.nu_mean,
        "nu_global": record.nu_global,
        "lambda": record.length_cluster,
        "diameter": record.diameter,
        "connected": record.connected,
        "cliques": list(record.cliques) if record.cliques is not None else None,
        "chi": record.chi,
        "curvature_sum": _fraction_str(record.curvature_sum),
        "dimension": _fraction_str(record.dimension),
        "b0": record.b0,
        "b1": record.b1,
        "nsw": record.nsw,
        "provenance": provenance or {},
    }


def stats_to_json(payload: Union[dict, StatsRecord],
                  provenance: Union[Provenance, dict, None] = None) -> str:
    if isinstance(payload, StatsRecord):
        payload = stats_json_payload(payload, provenance)
    return json.dumps(payload, indent=2) + "\n"


def stats_from_json(text: str) -> dict:
    return json.loads(text)


def write_stats_json(record: StatsRecord, path,
                     provenance: Union[Provenance, dict, None] = None) -> None:
    Path(path).write_text(stats_to_json(record, provenance), encoding="ascii")
