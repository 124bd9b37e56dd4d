"""The four figure kinds, rendered with a pinned matplotlib style.

Rendering never computes a metric: every number drawn comes straight from
the input file. Identical inputs give pixel-identical PNGs (fixed style,
fixed Software metadata, no timestamps).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from .io import SchemaError, read_edge_list, read_sweep

KINDS = ("metric-panels", "lambda-series", "component-heatmap", "graph-layout")

_STYLE = {
    "figure.figsize": (7.0, 4.5),
    "figure.dpi": 110,
    "savefig.dpi": 110,
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.4,
}

_PNG_METADATA = {"Software": "orbnet-plots"}


@dataclass(frozen=True)
class FigureSpec:
    kind: str                 # one of KINDS
    inputs: tuple[str, ...]   # CSV or edge-list paths
    output: str               # image path
    layout: str = "circular"  # graph-layout only: circular | spring
    seed: int = 0             # spring layout determinism

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SchemaError(f"unknown figure kind {self.kind!r} (use one of {KINDS})")
        if not self.inputs:
            raise SchemaError("figure spec needs at least one input path")


def render(spec: FigureSpec) -> Path:
    """Render one figure; returns the output path."""
    out = Path(spec.output)
    with plt.rc_context(_STYLE):
        fig = plt.figure()
        try:
            if spec.kind == "metric-panels":
                _metric_panels(fig, spec)
            elif spec.kind == "lambda-series":
                _lambda_series(fig, spec)
            elif spec.kind == "component-heatmap":
                _component_heatmap(fig, spec)
            else:
                _graph_layout(fig, spec)
            out.parent.mkdir(parents=True, exist_ok=True)
            fig.savefig(out, metadata=_PNG_METADATA)
        finally:
            plt.close(fig)
    return out


# ---------------------------------------------------------------------------
# Figure kinds
# ---------------------------------------------------------------------------

def _axis_column(table):
    name = table.provenance.get("axes", "").split(",")[0] or table.columns[0]
    return name, [float(v) for v in table.column(name)]


def _metric_panels(fig, spec: FigureSpec):
    """mu (red), ln nu (green) and average degree (blue) against log n."""
    table = read_sweep(spec.inputs[0])
    axis_name, xs = _axis_column(table)
    mu = table.column("mu")
    nu_col = "nu_global" if "nu_global" in table.columns else "nu"
    nu = table.column(nu_col)
    deg = table.column("avg_degree")

    ax = fig.add_subplot(111)
    ax.set_xscale("log")

    def series(values, transform=lambda v: v):
        pts = [(x, transform(v)) for x, v in zip(xs, values)
               if v is not None and (not isinstance(v, float) or math.isfinite(v))]
        return ([p[0] for p in pts], [p[1] for p in pts])

    ax.plot(*series(mu), color="red", marker="o", markersize=3, label="mu")
    ln_nu_x, ln_nu_y = [], []
    for x, v in zip(xs, nu):
        if isinstance(v, (int, float)) and 0 < v:
            ln_nu_x.append(x)
            ln_nu_y.append(math.log(v))
    ax.plot(ln_nu_x, ln_nu_y, color="green", marker="o", markersize=3, label="ln nu")
    ax.plot(*series(deg), color="blue", marker="o", markersize=3, label="avg degree")
    ax.set_xlabel(axis_name)
    ax.legend(loc="best")
    ax.set_title(f"metric panels ({table.path.name})")


def _lambda_series(fig, spec: FigureSpec):
    """E[lambda] against n with standard-error bars."""
    table = read_sweep(spec.inputs[0])
    axis_name, xs = _axis_column(table)
    mean = table.column("mean_lambda")
    err = table.column("stderr")
    pts = [(x, m, e) for x, m, e in zip(xs, mean, err) if m is not None]
    if not pts:
        raise SchemaError(f"{table.path}: every mean_lambda value is null")
    ax = fig.add_subplot(111)
    ax.errorbar([p[0] for p in pts], [p[1] for p in pts], yerr=[p[2] for p in pts],
                color="tab:purple", marker="o", markersize=3, capsize=2)
    ax.set_xlabel(axis_name)
    ax.set_ylabel("E[lambda]")
    ax.set_title(f"length-cluster expectation ({table.path.name})")


def _component_heatmap(fig, spec: FigureSpec):
    """Component-count matrix from long-form (a, b, components) rows."""
    table = read_sweep(spec.inputs[0])
    a = table.column("a")
    b = table.column("b")
    comps = table.column("components")
    n = max(max(a), max(b)) + 1
    matrix = np.zeros((n, n))
    for i, j, c in zip(a, b, comps):
        matrix[i, j] = c
    ax = fig.add_subplot(111)
    im = ax.imshow(matrix, origin="lower", cmap="viridis", interpolation="nearest")
    fig.colorbar(im, ax=ax, label="components")
    ax.set_xlabel("b")
    ax.set_ylabel("a")
    ax.set_title(f"component matrix ({table.path.name})")


def _graph_layout(fig, spec: FigureSpec):
    """Circular or seeded-spring embedding of an edge list."""
    n, edges = read_edge_list(spec.inputs[0])
    if spec.layout == "circular":
        pos = _circular_positions(n)
    elif spec.layout == "spring":
        pos = _spring_positions(n, edges, spec.seed)
    else:
        raise SchemaError(f"unknown layout {spec.layout!r} (use circular or spring)")
    ax = fig.add_subplot(111)
    ax.set_aspect("equal")
    ax.axis("off")
    segments = np.array([[pos[u], pos[v]] for u, v in edges])
    if len(segments):
        from matplotlib.collections import LineCollection
        ax.add_collection(LineCollection(segments, colors="0.55", linewidths=0.4))
    ax.scatter(pos[:, 0], pos[:, 1], s=6, color="black", zorder=2)
    ax.set_xlim(pos[:, 0].min() - 0.1, pos[:, 0].max() + 0.1)
    ax.set_ylim(pos[:, 1].min() - 0.1, pos[:, 1].max() + 0.1)
    ax.set_title(f"{spec.layout} embedding, n={n}, edges={len(edges)}")


def _circular_positions(n: int) -> np.ndarray:
    theta = 2 * np.pi * np.arange(n) / max(n, 1)
    return np.column_stack([np.cos(theta), np.sin(theta)])


def _spring_positions(n: int, edges, seed: int, iterations: int = 60) -> np.ndarray:
    """Small deterministic Fruchterman-Reingold relaxation."""
    rng = np.random.Generator(np.random.PCG64(seed))
    pos = rng.uniform(-1, 1, size=(n, 2))
    if not edges:
        return pos
    e = np.asarray(edges)
    k = math.sqrt(4.0 / max(n, 1))  # ideal edge length in a 2x2 box
    t = 0.1
    for _ in range(iterations):
        delta = pos[:, None, :] - pos[None, :, :]
        dist = np.linalg.norm(delta, axis=-1)
        np.fill_diagonal(dist, 1.0)
        repulse = (k * k / dist**2)[:, :, None] * delta
        disp = repulse.sum(axis=1)
        dvec = pos[e[:, 0]] - pos[e[:, 1]]
        dlen = np.maximum(np.linalg.norm(dvec, axis=1, keepdims=True), 1e-9)
        pull = dvec * (dlen / k)
        np.add.at(disp, e[:, 0], -pull)
        np.add.at(disp, e[:, 1], pull)
        length = np.maximum(np.linalg.norm(disp, axis=1, keepdims=True), 1e-9)
        pos = pos + disp / length * min(t, 1.0)
        t *= 0.95
    pos -= pos.mean(axis=0)
    scale = np.abs(pos).max() or 1.0
    return pos / scale
