"""Single executable: construction, stats, sweeps, baselines, figure data.

Every run with identical flags and seed produces identical output bytes;
--jobs only changes wall time. Long sweeps append finished rows to
``<out>.partial`` and resume from it, so an interrupted sweep loses at most
one checkpoint interval.
"""

from __future__ import annotations

import argparse
import functools
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .baselines import parse_baseline_spec, generate_baseline
from .errors import OrbnetError
from .experiments import (
    SweepResult,
    average_degree_sweep,
    alpha_sweep,
    check_bipartite_proposition,
    check_symmetry_proposition,
    clustering_decay_sweep,
    collatz_components,
    component_matrix,
    connectivity_probability,
    lcc_expectation,
    metrics_series,
    minimal_diameter,
    primes_up_to,
)
from .formats import (
    edge_list_text,
    format_cell,
    parse_cell,
    load_edge_list,
    stats_to_json,
    write_stats_json,
    write_sweep_csv,
)
from .graph import build_orbital_graph
from .metrics import DEFAULT_NU, compute_stats
from .modring import parse_maps


def _default_jobs() -> int:
    return int(os.environ.get("ORBNET_JOBS", "1"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orbnet", description=__doc__)
    ap.add_argument("--version", action="version", version=f"orbnet {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build an orbital graph and write an edge list")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--maps", required=True, help='semicolon list, e.g. "x^2+1;x^2+2"')
    g.add_argument("--out", help="edge list path (default: stdout)")

    s = sub.add_parser("stats", help="StatsJson for a graph (built or loaded)")
    s.add_argument("--in", dest="infile", help="edge list to load")
    s.add_argument("--n", type=int)
    s.add_argument("--maps")
    s.add_argument("--nu", choices=["mean", "global"], default=DEFAULT_NU)
    s.add_argument("--skip-cliques", action="store_true",
                   help="skip clique/chi/curvature/dimension (dense graphs)")
    s.add_argument("--out", help="write JSON here instead of stdout")

    b = sub.add_parser("baseline", help="generate a seeded baseline model graph")
    b.add_argument("--spec", required=True,
                   help='"er(1001,0.0098)" | "ws(1001,8,0.2)" | "ba(1001,4)" | "perm(1001,2)"')
    b.add_argument("--seed", type=int, required=True)
    b.add_argument("--stats", action="store_true", help="emit StatsJson instead of edges")
    b.add_argument("--nu", choices=["mean", "global"], default=DEFAULT_NU)
    b.add_argument("--out")

    w = sub.add_parser("sweep", help="run one named experiment over a parameter axis")
    w.add_argument("--experiment", required=True,
                   choices=["connectivity", "min_diameter", "lcc", "metrics",
                            "collatz", "clustering_decay", "avg_degree", "alpha"])
    w.add_argument("--d", type=int, default=2)
    w.add_argument("--n", type=int, action="append", help="repeatable n value")
    w.add_argument("--n-min", type=int)
    w.add_argument("--n-max", type=int)
    w.add_argument("--p-max", type=int, help="largest prime (connectivity)")
    w.add_argument("--composite", action="store_true",
                   help="allow composite moduli in connectivity sweeps")
    w.add_argument("--family", choices=["perm", "quadratic"], default="perm")
    w.add_argument("--samples", type=int)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--nu", choices=["mean", "global"], default=DEFAULT_NU)
    w.add_argument("--alpha-min", type=float, default=1.0)
    w.add_argument("--alpha-max", type=float, default=2.0)
    w.add_argument("--alpha-step", type=float, default=0.1)
    w.add_argument("--jobs", type=int, default=None)
    w.add_argument("--checkpoint-every", type=int, default=25,
                   help="rows between .partial checkpoints")
    w.add_argument("--out", required=True)

    m = sub.add_parser("matrix", help="component-count matrix A[a,b] for x^2+a, x^2+b")
    m.add_argument("--n", type=int, required=True)
    m.add_argument("--max-n", type=int, default=256, help="budget guard")
    m.add_argument("--out", required=True)

    c = sub.add_parser("check", help="verify a proposition instance")
    c.add_argument("--proposition", type=int, choices=[1, 2], required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--shifts", required=True, help="comma list, e.g. 2,6,16")

    r = sub.add_parser("reproduce", help="regenerate figure data files")
    r.add_argument("--figure", required=True, choices=["fig1", "fig2", "fig7", "fig8"])
    r.add_argument("--out", required=True, help="output directory")
    r.add_argument("--seeds", type=int, default=50, help="seeds per model (fig7)")
    r.add_argument("--samples", type=int, default=100, help="samples per n (fig8)")
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--jobs", type=int, default=None)
    return ap


# ---------------------------------------------------------------------------
# Sweep plans: picklable row functions so --jobs can fan out
# ---------------------------------------------------------------------------

def _row_connectivity(d, composite, p):
    c = connectivity_probability(p, d, allow_composite=composite)
    return (c.numerator, c.denominator, float(c))


def _row_min_diameter(d, n):
    r = minimal_diameter(n, d)
    return (math.inf if r is math.inf else int(r),)


def _row_lcc(family, d, samples, seed, nu, n):
    res = lcc_expectation(family, n, samples=samples, seed=seed + n, d=d, nu=nu)
    return (res.mean, res.stderr, res.used, res.skipped)


def _row_metrics(family, d, samples, seed, n):
    return metrics_series(family, [n], d=d, samples=samples, seed=seed).rows[0][1:]


def _row_collatz(n):
    comps = collatz_components(n)
    return (comps, comps == 1)


def _row_clustering_decay(d, samples, seed, n):
    return clustering_decay_sweep(d, [n], samples=samples, seed=seed).rows[0][1:]


def _row_avg_degree(n):
    return average_degree_sweep([n]).rows[0][1:]


def _row_alpha(n, d, alpha):
    return alpha_sweep(n, [alpha], d).rows[0][1:]


def _n_values(args) -> list[int]:
    if args.n:
        return sorted(set(args.n))
    if args.n_min is not None and args.n_max is not None:
        return list(range(args.n_min, args.n_max + 1))
    raise OrbnetError("give --n (repeatable) or --n-min/--n-max")


def _sweep_plan(args):
    """(name, axes, outcomes, params, row_fn, provenance)"""
    exp = args.experiment
    if exp == "connectivity":
        if not args.p_max:
            raise OrbnetError("connectivity sweep needs --p-max")
        params = [p for p in primes_up_to(args.p_max) if p >= args.d]
        fn = functools.partial(_row_connectivity, args.d, args.composite)
        return (exp, ("p",), ("connected_subsets", "total_subsets", "probability"),
                params, fn, {"experiment": exp, "d": args.d, "p_max": args.p_max})
    if exp == "min_diameter":
        params = _n_values(args)
        fn = functools.partial(_row_min_diameter, args.d)
        return (exp, ("n",), ("r",), params, fn, {"experiment": exp, "d": args.d})
    if exp == "lcc":
        params = _n_values(args)
        samples = args.samples or 100
        fn = functools.partial(_row_lcc, args.family, args.d, samples, args.seed, args.nu)
        return (exp, ("n",), ("mean_lambda", "stderr", "used", "skipped"), params, fn,
                {"experiment": exp, "family": args.family, "d": args.d,
                 "samples": samples, "seed": args.seed, "nu": args.nu})
    if exp == "metrics":
        params = _n_values(args)
        samples = args.samples or 1
        fn = functools.partial(_row_metrics, args.family, args.d, samples, args.seed)
        return (exp, ("n",), ("samples", "avg_degree", "mu", "nu_mean", "nu_global",
                              "lambda"),
                params, fn, {"experiment": exp, "family": args.family, "d": args.d,
                             "samples": samples, "seed": args.seed})
    if exp == "collatz":
        if args.n_max is None:
            raise OrbnetError("collatz sweep needs --n-max")
        params = list(range(max(2, args.n_min or 2), args.n_max + 1))
        return (exp, ("n",), ("components", "connected"), params, _row_collatz,
                {"experiment": exp, "n_max": args.n_max})
    if exp == "clustering_decay":
        params = _n_values(args)
        fn = functools.partial(_row_clustering_decay, args.d, args.samples, args.seed)
        return (exp, ("n",), ("tuples", "mean_nu_global", "n_times_nu", "mean_eq_solutions"),
                params, fn, {"experiment": exp, "d": args.d,
                             "samples": args.samples, "seed": args.seed})
    if exp == "avg_degree":
        params = _n_values(args)
        return (exp, ("n",), ("pairs", "mean_avg_degree", "deviation",
                              "self_loops", "coincidences"),
                params, _row_avg_degree, {"experiment": exp})
    if exp == "alpha":
        if not args.n or len(args.n) != 1:
            raise OrbnetError("alpha sweep needs exactly one --n")
        alphas = []
        a = args.alpha_min
        while a <= args.alpha_max + 1e-12:
            alphas.append(round(a, 10))
            a += args.alpha_step
        fn = functools.partial(_row_alpha, args.n[0], args.d)
        return (exp, ("alpha",), ("edges", "avg_degree", "mu", "nu_mean", "nu_global",
                                  "lambda", "diameter", "connected"),
                alphas, fn, {"experiment": exp, "n": args.n[0], "d": args.d})
    raise OrbnetError(f"unknown experiment {exp!r}")


def _load_partial(partial_path: Path, n_axes: int) -> dict[str, list[str]]:
    done: dict[str, list[str]] = {}
    if partial_path.exists():
        for line in partial_path.read_text(encoding="ascii").splitlines():
            if not line.strip():
                continue
            cells = line.split(",")
            done[",".join(cells[:n_axes])] = cells
    return done


def run_sweep(args) -> int:
    name, axes, outcomes, params, row_fn, prov = _sweep_plan(args)
    out = Path(args.out)
    partial = out.with_suffix(out.suffix + ".partial")
    done = _load_partial(partial, len(axes))

    pending = [p for p in params if format_cell(p) not in done]
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    rows_text: dict[str, list[str]] = dict(done)

    def flush(batch: list[list[str]]):
        if not batch:
            return
        with partial.open("a", encoding="ascii") as fh:
            for cells in batch:
                fh.write(",".join(cells) + "\n")

    batch: list[list[str]] = []
    if jobs > 1 and len(pending) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for p, outcome in zip(pending, pool.map(row_fn, pending, chunksize=1)):
                cells = [format_cell(p)] + [format_cell(v) for v in outcome]
                rows_text[cells[0]] = cells
                batch.append(cells)
                if len(batch) >= args.checkpoint_every:
                    flush(batch)
                    batch = []
    else:
        for p in pending:
            outcome = row_fn(p)
            cells = [format_cell(p)] + [format_cell(v) for v in outcome]
            rows_text[cells[0]] = cells
            batch.append(cells)
            if len(batch) >= args.checkpoint_every:
                flush(batch)
                batch = []
    flush(batch)

    rows = [tuple(parse_cell(c) for c in rows_text[format_cell(p)]) for p in params]
    result = SweepResult(name=name, axes=axes, outcomes=outcomes, rows=rows,
                         provenance=prov)
    write_sweep_csv(result, out)
    if partial.exists():
        partial.unlink()
    if name == "collatz":
        for row in result.rows:
            if row[1] != 1:
                print(f"collatz counterexample: n={row[0]} has {row[1]} components",
                      file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# Other subcommands
# ---------------------------------------------------------------------------

def _emit(text: str, out) -> None:
    if out:
        Path(out).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)


def run_generate(args) -> int:
    g = build_orbital_graph(args.n, parse_maps(args.maps, args.n))
    _emit(edge_list_text(g), args.out)
    return 0


def _graph_from_args(args):
    if args.infile:
        return load_edge_list(args.infile)
    if args.n is None or not args.maps:
        raise OrbnetError("stats needs --in FILE or both --n and --maps")
    return build_orbital_graph(args.n, parse_maps(args.maps, args.n))


def run_stats(args) -> int:
    g = _graph_from_args(args)
    record = compute_stats(g, nu=args.nu, cliques=not args.skip_cliques)
    _emit(stats_to_json(record, g.provenance), args.out)
    return 0


def run_baseline(args) -> int:
    spec = parse_baseline_spec(args.spec)
    g = generate_baseline(spec, args.seed)
    if args.stats:
        record = compute_stats(g, nu=args.nu, cliques=False)
        _emit(stats_to_json(record, g.provenance), args.out)
    else:
        _emit(edge_list_text(g), args.out)
    return 0


def run_matrix(args) -> int:
    cm = component_matrix(args.n, max_n=args.max_n)
    write_sweep_csv(cm.to_sweep(), args.out)
    return 0


def run_check(args) -> int:
    shifts = [int(s) for s in args.shifts.split(",") if s.strip()]
    if args.proposition == 1:
        v = check_symmetry_proposition(args.n, shifts)
        payload = {
            "proposition": 1, "n": v.n, "shifts": list(v.shifts),
            "parity_disconnected": v.parity_disconnected, "phi_shift": v.phi_shift,
            "phi_commutes": v.phi_commutes, "isomorphic": v.isomorphic,
            "budget_exhausted": v.budget_exhausted, "passed": v.passed,
        }
    else:
        v = check_bipartite_proposition(args.n, shifts)
        payload = {
            "proposition": 2, "n": v.n, "shifts": list(v.shifts),
            "bipartite": v.bipartite, "triangles": v.triangles,
            "nu_global": v.nu_global,
            "parts": [list(p) for p in v.parts] if v.parts else None,
            "passed": v.passed,
        }
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0 if payload["passed"] else 1


_FIGURE_GRAPHS = {
    "fig1": [("fig1a", 1001, "x^2+226"), ("fig1b", 2000, "x^2+1;x^2+2")],
    "fig2": [("fig2a", 2000, "x^2+1;x^2+31;x^2+51"), ("fig2b", 2002, "2^x+11;3^x+5")],
}

_FIG7_MODELS = ["er(1001,0.0098)", "ws(1001,8,0.2)", "ba(1001,4)", "perm(1001,2)"]


def _fig7_row(model_seed):
    model, seed = model_seed
    g = generate_baseline(parse_baseline_spec(model), seed)
    s = compute_stats(g, nu="global", cliques=False)
    return (g.n, s.avg_degree, s.mu, s.nu_global, s.length_cluster)


def run_reproduce(args) -> int:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    jobs = args.jobs if args.jobs is not None else _default_jobs()
    if args.figure in ("fig1", "fig2"):
        for stem, n, maps_text in _FIGURE_GRAPHS[args.figure]:
            g = build_orbital_graph(n, parse_maps(maps_text, n))
            record = compute_stats(g, cliques=True)
            write_stats_json(record, outdir / f"{stem}.json", g.provenance)
        return 0
    if args.figure == "fig7":
        tasks = [(model, args.seed + i) for model in _FIG7_MODELS
                 for i in range(args.seeds)]
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(pool.map(_fig7_row, tasks, chunksize=1))
        else:
            outcomes = [_fig7_row(t) for t in tasks]
        rows = [(model, seed) + outcome
                for (model, seed), outcome in zip(tasks, outcomes)]
        result = SweepResult(
            name="fig7", axes=("model", "seed"),
            outcomes=("n", "avg_degree", "mu", "nu_global", "lambda"),
            rows=rows, provenance={"experiment": "fig7", "seeds": args.seeds,
                                   "seed": args.seed})
        write_sweep_csv(result, outdir / "fig7.csv")
        return 0
    # fig8: E[lambda] for two random permutations as a function of n
    ns = list(range(100, 1001, 100))
    rows = []
    for n in ns:
        res = lcc_expectation("perm", n, samples=args.samples, seed=args.seed + n,
                              d=2, nu="global")
        rows.append((n, res.mean, res.stderr, res.used, res.skipped))
    result = SweepResult(
        name="fig8", axes=("n",), outcomes=("mean_lambda", "stderr", "used", "skipped"),
        rows=rows, provenance={"experiment": "fig8", "samples": args.samples,
                               "seed": args.seed})
    write_sweep_csv(result, outdir / "fig8.csv")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "generate": run_generate,
        "stats": run_stats,
        "baseline": run_baseline,
        "sweep": run_sweep,
        "matrix": run_matrix,
        "check": run_check,
        "reproduce": run_reproduce,
    }
    try:
        return handlers[args.command](args)
    except OrbnetError as exc:
        print(f"orbnet: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
