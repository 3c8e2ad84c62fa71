"""Experiment driver: one subcommand per measurement, files out, no surprises.

Every subcommand assembles an :class:`ExperimentSpec`, runs the grid with
the requested worker count, and emits a :class:`ResultRecord`.  Numeric
fields depend only on (kind, parameters, master seed) — never on the worker
count, the ``GRADPERC_WORKERS`` environment variable, or wall-clock — so
identical specs reproduce identical records.  Execution details live in
the record's ``meta`` block, which is the only part allowed to differ
between reruns.

With ``--out BASE`` the record is written as ``BASE.json`` (summary),
``BASE.jsonl`` (one line per grid point) and ``BASE.csv`` (flat numeric
table); ``--svg PATH`` adds a standalone plot with the spec embedded as a
provenance comment.  Without ``--out`` the summary JSON goes to stdout.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from gradperc import __version__, acceptance, records, runner, svgplot
from gradperc.arms import quasi_multiplicativity_ratio
from gradperc.charlen import CharLenParams, check_scaling_relation, \
    estimate_characteristic_length, estimate_sigma
from gradperc.fitstats import fit_estimate_series, fit_power_law
from gradperc.front import StripSpec, default_strip_length, extract_front, \
    interior_window, sample_strip
from gradperc.lattice import Region
from gradperc.profiles import DensityProfile, SeedSpec

__all__ = ["ExperimentSpec", "ResultRecord", "run_experiment", "main"]

KINDS = ("crossing", "charlen", "sigma", "arms", "quasimult", "relation",
         "front", "nu-fit", "sigma-fit", "arm-fit", "length-fit", "asymmetry")


@dataclass(frozen=True)
class ExperimentSpec:
    """Everything a measurement depends on, plus how to execute and emit it.

    ``params`` holds the scientific inputs (grids, trial counts, epsilon,
    kind-specific knobs).  ``snapshot`` deliberately omits workers and
    output paths: those may vary between reruns without touching a number.
    """

    kind: str
    params: dict
    master_seed: int
    workers: int = 1
    out: Path | None = None
    svg: Path | None = None

    def snapshot(self) -> dict:
        return {"kind": self.kind, "master_seed": self.master_seed,
                "params": dict(self.params)}


@dataclass(frozen=True)
class ResultRecord:
    spec: dict                  # ExperimentSpec.snapshot()
    results: list               # one dict per grid point
    meta: dict = field(default_factory=dict)

    def summary(self) -> dict:
        return {"spec": self.spec, "results": records.jsonable(self.results),
                "meta": self.meta}


# --- grids -----------------------------------------------------------------

def parse_grid(text: str) -> list:
    """Comma-separated values; ``a..b`` is an inclusive integer range and
    ``a..b*f`` a geometric sweep multiplying by f."""
    out: list = []
    try:
        for part in text.split(","):
            part = part.strip()
            if ".." in part:
                lo, _, rest = part.partition("..")
                if "*" in rest:
                    hi, _, fac = rest.partition("*")
                    v, stop, f = int(lo), int(hi), int(fac)
                    if f < 2 or v < 1 or stop < v:
                        raise ValueError(part)
                    while v <= stop:
                        out.append(v)
                        v *= f
                else:
                    out.extend(range(int(lo), int(rest) + 1))
            elif part:
                out.append(int(part) if part.lstrip("+-").isdigit()
                           else float(part))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from exc
    if not out:
        raise argparse.ArgumentTypeError(f"empty grid {text!r}")
    return out


def _default_workers() -> int:
    return max(1, int(os.environ.get("GRADPERC_WORKERS", "1")))


# --- picklable grid-point workers ------------------------------------------

def _charlen_point(p, params, master, lane):
    return estimate_characteristic_length(p, params, master, lane)


def _sigma_point(N, params, master, lane):
    return estimate_sigma(N, params, master, lane)


def _relation_point(p, params, master, arm_trials, lane):
    return check_scaling_relation(p, params, master, arm_trials, lane)


def _quasi_point(j, n1, n2, pr, trials, master, lane):
    return quasi_multiplicativity_ratio(j, n1, n2, pr, trials, master, lane)


# --- kinds -----------------------------------------------------------------
# Each _run_* takes the spec and returns (results, plot) with plot either
# None or kwargs for svgplot plus a "series" key.  Lane prefixes are fixed
# per kind: the grid index comes first, sub-streams after it.

def _fit_line(fit, xs) -> dict:
    scale = math.exp(fit.intercept)
    return {"x": list(xs), "y": [scale * x ** fit.slope for x in xs],
            "label": f"slope {fit.slope:.3f}", "line": True, "markers": False}


def _run_crossing(spec: ExperimentSpec):
    P = spec.params
    pr = DensityProfile.homogeneous(P["p"])
    results, xs, ys, errs = [], [], [], []
    for g, n in enumerate(P["n"]):
        est = runner.crossing_probability(Region.square(n), pr,
                                          P["orientation"], P["color"],
                                          P["trials"], spec.master_seed, (g,),
                                          spec.workers)
        results.append({"n": n, "estimate": est})
        xs.append(n)
        ys.append(est.mean)
        errs.append(est.stderr)
    plot = {"series": [{"x": xs, "y": ys, "yerr": errs, "label": "crossing"}],
            "title": f"{P['orientation']} {P['color']} crossing, p={P['p']}",
            "xlabel": "n", "ylabel": "probability", "logx": True}
    return results, plot


def _run_charlen(spec: ExperimentSpec, with_fit: bool = False):
    P = spec.params
    params = CharLenParams(eps=P["eps"], trials=P["trials"])
    items = [(p, params, spec.master_seed, (g,)) for g, p in enumerate(P["p"])]
    res = runner.grid_map(_charlen_point, items, spec.workers)
    results = [{"p": p, "result": r} for p, r in zip(P["p"], res)]
    xs = [abs(p - 0.5) for p in P["p"]]
    ys = [r.L for r in res]
    series = [{"x": xs, "y": ys, "label": "L"}]
    out = {"points": results}
    if with_fit:
        fit = fit_power_law(list(zip(xs, ys)))
        out["fit"] = fit
        series.append(_fit_line(fit, xs))
    plot = {"series": series, "title": f"characteristic length, eps={P['eps']}",
            "xlabel": "|p - 1/2|", "ylabel": "L", "logx": True, "logy": True}
    return [out] if with_fit else results, plot


def _run_sigma(spec: ExperimentSpec, with_fit: bool = False):
    P = spec.params
    params = CharLenParams(eps=P["eps"], trials=P["trials"])
    items = [(N, params, spec.master_seed, (g,)) for g, N in enumerate(P["N"])]
    res = runner.grid_map(_sigma_point, items, spec.workers)
    results = [{"N": N, "result": r} for N, r in zip(P["N"], res)]
    series = [{"x": list(P["N"]), "y": [r.sigma for r in res], "label": "sigma"}]
    out = {"points": results}
    if with_fit:
        fit = fit_power_law([(N, r.sigma) for N, r in zip(P["N"], res)])
        out["fit"] = fit
        series.append(_fit_line(fit, P["N"]))
    plot = {"series": series, "title": f"gradient scale, eps={P['eps']}",
            "xlabel": "N", "ylabel": "sigma", "logx": True, "logy": True}
    return [out] if with_fit else results, plot


def _run_arms(spec: ExperimentSpec, with_fit: bool = False):
    P = spec.params
    pr = DensityProfile.homogeneous(P["p"])
    results, ests = [], []
    for g, n in enumerate(P["n"]):
        est = runner.arm_probability(P["j"], P["n1"], n, pr, P["trials"],
                                     spec.master_seed, (g,), spec.workers)
        results.append({"n": n, "estimate": est})
        ests.append(est)
    xs = list(P["n"])
    series = [{"x": xs, "y": [e.mean for e in ests],
               "yerr": [e.stderr for e in ests], "label": f"{P['j']}-arm"}]
    out = {"points": results}
    if with_fit:
        fit = fit_estimate_series(xs, ests)
        out["fit"] = fit
        series.append(_fit_line(fit, xs))
    plot = {"series": series,
            "title": f"{P['j']}-arm probability, inner n1={P['n1']}",
            "xlabel": "n", "ylabel": "probability", "logx": True, "logy": True}
    return [out] if with_fit else results, plot


def _run_quasimult(spec: ExperimentSpec):
    P = spec.params
    pr = DensityProfile.homogeneous(P["p"])
    items = [(P["j"], P["n1"], n2, pr, P["trials"], spec.master_seed, (g,))
             for g, n2 in enumerate(P["n"])]
    res = runner.grid_map(_quasi_point, items, spec.workers)
    results = [{"n2": n2, "ratio": r} for n2, r in zip(P["n"], res)]
    plot = {"series": [{"x": list(P["n"]), "y": list(res), "label": "ratio"}],
            "title": f"quasi-multiplicativity, j={P['j']}, n1={P['n1']}",
            "xlabel": "n2", "ylabel": "ratio", "logx": True}
    return results, plot


def _run_relation(spec: ExperimentSpec):
    P = spec.params
    params = CharLenParams(eps=P["eps"], trials=P["trials"])
    items = [(p, params, spec.master_seed, P["arm_trials"], (g,))
             for g, p in enumerate(P["p"])]
    res = runner.grid_map(_relation_point, items, spec.workers)
    results = [{"p": p, "result": r} for p, r in zip(P["p"], res)]
    plot = {"series": [{"x": list(P["p"]), "y": [r.product for r in res],
                        "label": "|p-1/2| L^2 pi4(L)"}],
            "title": "scaling-relation product",
            "xlabel": "p", "ylabel": "product"}
    return results, plot


def _front_scale(spec: ExperimentSpec, N: int, lane: tuple):
    P = spec.params
    if P.get("sigma"):
        return P["sigma"]
    params = CharLenParams(eps=P["eps"])
    return estimate_sigma(N, params, spec.master_seed, lane).sigma


def _run_front(spec: ExperimentSpec):
    P = spec.params
    N, strips = P["N"], P["trials"]
    sigma = _front_scale(spec, N, (0,))
    sspec = StripSpec(N, default_strip_length(N, sigma))
    win = interior_window(sspec, sigma)
    ens = runner.front_ensemble(sspec, (win,), strips, spec.master_seed, (1,),
                                spec.workers)
    results = [{
        "strip": t,
        "verified": bool(ens.verify[t]),
        "edge_count_total": int(ens.edge_count_total[t]),
        "max_abs_y": float(ens.max_abs_y[t, 0]),
        "edge_count_in_window": int(ens.edge_count[t, 0]),
        "max_backtrack": float(ens.max_backtrack[t, 0]),
        "boundary_black": int(ens.boundary_black[t, 0]),
        "boundary_white": int(ens.boundary_white[t, 0]),
    } for t in range(strips)]
    results.insert(0, {"N": N, "T": sspec.T, "sigma": sigma, "window": win,
                       "strips": strips,
                       "all_verified": bool(ens.verify.all())})
    if spec.out is not None:
        c = sample_strip(sspec, SeedSpec(spec.master_seed, 0, (1,)))
        path = _base_path(spec.out).with_suffix(".vertices.csv")
        with open(path, "w", newline="") as f:
            extract_front(c).write_vertices_csv(f)
    return results, None


def _run_length_fit(spec: ExperimentSpec):
    P = spec.params
    results, pts = [], []
    for g, N in enumerate(P["N"]):
        sigma = _front_scale(spec, N, (g, 0))
        sspec = StripSpec(N, default_strip_length(N, sigma))
        mid = sspec.T // 2
        win = Region(mid - 4 * sigma, mid + 4 * sigma, -N, N)
        ens = runner.front_ensemble(sspec, (win,), P["trials"],
                                    spec.master_seed, (g, 1), spec.workers)
        mean_edges = float(ens.edge_count[:, 0].mean())
        results.append({"N": N, "sigma": sigma, "window": win,
                        "mean_edge_count": mean_edges,
                        "all_verified": bool(ens.verify.all())})
        pts.append((sigma, mean_edges))
    fit = fit_power_law(pts)
    xs = [x for x, _ in pts]
    plot = {"series": [{"x": xs, "y": [y for _, y in pts], "label": "edges"},
                       _fit_line(fit, xs)],
            "title": "front length across a 8-sigma window",
            "xlabel": "sigma", "ylabel": "edge count",
            "logx": True, "logy": True}
    return [{"points": results, "fit": fit}], plot


def _run_asymmetry(spec: ExperimentSpec):
    P = spec.params
    N, strips = P["N"], P["trials"]
    sigma = _front_scale(spec, N, (0,))
    sspec = StripSpec(N, default_strip_length(N, sigma))
    wins = (interior_window(sspec, sigma, j_max=-1),
            interior_window(sspec, sigma, j_min=-3 * sigma, j_max=-sigma))
    ens = runner.front_ensemble(sspec, wins, strips, spec.master_seed, (1,),
                                spec.workers)
    results = []
    for k, name in enumerate(("below_axis", "band_minus3s_minus1s")):
        x = ens.boundary_excess[:, k].astype(float)
        mean = float(x.mean())
        sem = float(x.std(ddof=1) / math.sqrt(len(x)))
        results.append({"window_kind": name, "window": wins[k],
                        "mean_excess": mean, "stderr": sem,
                        "z": mean / sem if sem else math.inf})
    results.insert(0, {"N": N, "T": sspec.T, "sigma": sigma, "strips": strips,
                       "all_verified": bool(ens.verify.all())})
    return results, None


_RUNNERS = {
    "crossing": _run_crossing,
    "charlen": _run_charlen,
    "sigma": _run_sigma,
    "arms": _run_arms,
    "quasimult": _run_quasimult,
    "relation": _run_relation,
    "front": _run_front,
    "nu-fit": lambda s: _run_charlen(s, with_fit=True),
    "sigma-fit": lambda s: _run_sigma(s, with_fit=True),
    "arm-fit": lambda s: _run_arms(s, with_fit=True),
    "length-fit": _run_length_fit,
    "asymmetry": _run_asymmetry,
}


def run_experiment(spec: ExperimentSpec) -> ResultRecord:
    """Execute one spec and return its record (files are the caller's job)."""
    if spec.kind not in _RUNNERS:
        raise ValueError(f"unknown experiment kind {spec.kind!r}")
    t0 = time.monotonic()
    results, plot = _RUNNERS[spec.kind](spec)
    meta = {"wall_clock_s": round(time.monotonic() - t0, 3),
            "version": __version__, "workers": spec.workers}
    rec = ResultRecord(spec.snapshot(), records.jsonable(results), meta)
    if spec.svg is not None and plot is not None:
        svgplot.write_plot(spec.svg, plot.pop("series"),
                           provenance=rec.spec, **plot)
    return rec


# --- emission --------------------------------------------------------------

def _base_path(out: Path) -> Path:
    return out.with_suffix("") if out.suffix in (".json", ".jsonl", ".csv") \
        else out


def _flat_scalars(d: dict, prefix: str = "") -> dict:
    flat = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, bool):
            flat[key] = int(v)
        elif isinstance(v, (int, float)):
            flat[key] = v
        elif isinstance(v, dict):
            flat.update(_flat_scalars(v, f"{key}."))
    return flat


def write_record(rec: ResultRecord, out: Path) -> list[Path]:
    base = _base_path(out)
    base.parent.mkdir(parents=True, exist_ok=True)
    paths = [base.with_suffix(".json"), base.with_suffix(".jsonl")]
    records.write_summary(paths[0], rec.summary())
    records.write_jsonl(paths[1], [{"spec": rec.spec, "index": k, "result": r}
                                   for k, r in enumerate(rec.results)])
    flats = [_flat_scalars(r) for r in rec.results if isinstance(r, dict)]
    header: list[str] = []
    for f in flats:
        header += [k for k in f if k not in header]
    if header:
        rows = [[f.get(k, math.nan) for k in header] for f in flats]
        paths.append(base.with_suffix(".csv"))
        records.write_csv(paths[-1], header, rows)
    return paths


# --- argument parsing ------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gradperc",
        description="Monte Carlo experiments on critical and gradient "
                    "percolation (triangular lattice).")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="kind", required=True, metavar="KIND")

    def add(kind, help_, trials, grid=None, grid_help="grid"):
        p = sub.add_parser(kind, help=help_)
        p.add_argument("--seed", type=int, default=0,
                       help="master seed (default 0)")
        p.add_argument("--trials", type=int, default=trials,
                       help=f"sampling effort per grid point (default {trials})")
        p.add_argument("--eps", type=float, default=0.25,
                       help="crossing-probability threshold (default 0.25)")
        p.add_argument("--workers", type=int, default=_default_workers(),
                       help="process count; never changes the numbers "
                            "(default $GRADPERC_WORKERS or 1)")
        p.add_argument("--out", type=Path,
                       help="base path for .json/.jsonl/.csv output")
        p.add_argument("--svg", type=Path, help="write an SVG plot here")
        if grid is not None:
            p.add_argument("--grid", type=parse_grid, default=grid,
                           help=f"{grid_help} (default {grid!r})")
        return p

    p = add("crossing", "box-crossing probability on a homogeneous field",
            2000, "8..64*2", "box sizes n")
    p.add_argument("--p", type=float, default=0.5)
    p.add_argument("--orientation", choices=("horizontal", "vertical"),
                   default="horizontal")
    p.add_argument("--color", choices=("black", "white"), default="black")

    add("charlen", "characteristic length over a density grid", 400,
        "0.40,0.42,0.44,0.46,0.48", "densities p")
    add("nu-fit", "characteristic length plus a power-law fit", 400,
        "0.40,0.42,0.44,0.46,0.48", "densities p")
    add("sigma", "gradient localization scale over strip half-heights", 400,
        "64..1024*2", "half-heights N")
    add("sigma-fit", "gradient scale plus a power-law fit", 400,
        "64..1024*2", "half-heights N")

    for kind in ("arms", "arm-fit"):
        p = add(kind, "alternating arm probability over outer radii", 2000,
                "8..256*2", "outer radii n")
        p.add_argument("--j", type=int, choices=(2, 4), default=2)
        p.add_argument("--n1", type=int, default=0,
                       help="inner radius (default 0: arms from a site)")
        p.add_argument("--p", type=float, default=0.5)

    p = add("quasimult", "arm-probability factorization ratio", 4000,
            "32,64,128", "outer radii n2")
    p.add_argument("--j", type=int, choices=(2, 4), default=2)
    p.add_argument("--n1", type=int, default=8)
    p.add_argument("--p", type=float, default=0.5)

    p = add("relation", "off-critical product |p-1/2| L^2 pi4(L)", 400,
            "0.40,0.44,0.48", "densities p")
    p.add_argument("--arm-trials", type=int, default=20_000)

    p = add("front", "sample gradient strips and report per-strip statistics",
            10)
    p.add_argument("--N", type=int, default=64)
    p.add_argument("--sigma", type=int,
                   help="override the localization scale (skips estimating it)")

    p = add("length-fit", "front edge count against the localization scale",
            100, "64,128,256", "half-heights N")
    p.add_argument("--sigma", type=int)

    p = add("asymmetry", "black/white excess on the front's lower side", 100)
    p.add_argument("--N", type=int, default=256)
    p.add_argument("--sigma", type=int)

    p = sub.add_parser("paper-suite",
                       help="run the acceptance battery and print a "
                            "pass/fail table")
    p.add_argument("--seed", type=int, default=acceptance.DEFAULT_SEED)
    p.add_argument("--workers", type=int,
                   default=max(_default_workers(), 4))
    p.add_argument("--out", type=Path)
    return ap


def _spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    P: dict = {"trials": args.trials, "eps": args.eps}
    kind = args.kind
    if kind == "crossing":
        P.update(n=args.grid, p=args.p, orientation=args.orientation,
                 color=args.color)
    elif kind in ("charlen", "nu-fit", "relation"):
        P.update(p=args.grid)
        if kind == "relation":
            P.update(arm_trials=args.arm_trials)
    elif kind in ("sigma", "sigma-fit", "length-fit"):
        P.update(N=args.grid)
        if kind == "length-fit":
            P.update(sigma=args.sigma)
    elif kind in ("arms", "arm-fit", "quasimult"):
        P.update(n=args.grid, j=args.j, n1=args.n1, p=args.p)
    elif kind in ("front", "asymmetry"):
        P.update(N=args.N, sigma=args.sigma)
    return ExperimentSpec(kind, P, args.seed, args.workers, args.out, args.svg)


def _run_paper_suite(args: argparse.Namespace) -> int:
    results = acceptance.run_all(args.seed, args.workers)
    for r in results:
        print(r.line())
    n_pass = sum(r.passed for r in results)
    print(f"{n_pass}/{len(results)} criteria passed")
    if args.out is not None:
        rec = ResultRecord({"kind": "paper-suite", "master_seed": args.seed,
                            "params": {}},
                           records.jsonable(results),
                           {"version": __version__, "workers": args.workers})
        write_record(rec, args.out)
    return 0 if n_pass == len(results) else 1


def main(argv: list[str] | None = None) -> int:
    ap = _build_parser()
    args = ap.parse_args(argv)
    if args.kind == "paper-suite":
        return _run_paper_suite(args)
    spec = _spec_from_args(args)
    try:
        rec = run_experiment(spec)
    except ValueError as exc:
        ap.error(str(exc))
    if spec.out is not None:
        for path in write_record(rec, spec.out):
            print(f"wrote {path}", file=sys.stderr)
    else:
        json.dump(rec.summary(), sys.stdout, indent=2, sort_keys=True)
        print()
    return 0


if __name__ == "__main__":
    sys.exit(main())
