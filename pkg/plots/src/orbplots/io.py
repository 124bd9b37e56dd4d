"""Readers for the orbnet file contracts: sweep CSV and edge lists.

This package deliberately parses the files itself instead of importing the
producer, so the CSV/edge-list formats stay the only coupling between the
two packages.
"""

from __future__ import annotations

import csv
import math
import re
from dataclasses import dataclass, field
from pathlib import Path


class SchemaError(ValueError):
    """Input file does not carry the columns a figure kind needs."""


@dataclass
class SweepTable:
    path: Path
    columns: list[str]
    rows: list[list]
    provenance: dict = field(default_factory=dict)

    def column(self, name: str) -> list:
        """The named column, or a SchemaError naming it."""
        if name not in self.columns:
            raise SchemaError(
                f"{self.path}: missing column {name!r} (has {', '.join(self.columns)})")
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


_INT_RE = re.compile(r"-?\d+\Z")


def _parse_cell(text: str):
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


def read_sweep(path) -> SweepTable:
    """Parse a sweep CSV: '#' provenance comments, header row, typed cells."""
    path = Path(path)
    provenance: dict = {}
    header: list[str] | None = None
    rows: list[list] = []
    data_lines = []
    for line in path.read_text(encoding="ascii").splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            provenance[key] = value
        elif line:
            data_lines.append(line)
    for record in csv.reader(data_lines):
        if header is None:
            header = record
        else:
            rows.append([_parse_cell(c) for c in record])
    if header is None:
        raise SchemaError(f"{path}: no header row")
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    return SweepTable(path=path, columns=header, rows=rows, provenance=provenance)


def read_edge_list(path) -> tuple[int, list[tuple[int, int]]]:
    """(n, edges) from a 'u v' edge list; '#'/'%' comments ignored, an
    optional '# n N' comment fixes the vertex count."""
    path = Path(path)
    n_hint = None
    edges: list[tuple[int, int]] = []
    hint_re = re.compile(r"[#%]\s*n[\s=]+(\d+)\s*$")
    for lineno, raw in enumerate(path.read_text(encoding="ascii").splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line[0] in "#%":
            m = hint_re.match(line)
            if m and n_hint is None:
                n_hint = int(m.group(1))
            continue
        parts = line.split()
        if len(parts) != 2:
            raise SchemaError(f"{path}:{lineno}: expected 'u v', got {raw!r}")
        u, v = int(parts[0]), int(parts[1])
        if u != v:
            edges.append((u, v))
    if not edges and n_hint is None:
        raise SchemaError(f"{path}: no edges and no '# n N' header")
    n = n_hint if n_hint is not None else max(max(e) for e in edges) + 1
    return n, edges
