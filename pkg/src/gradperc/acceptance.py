"""The package's acceptance battery: eleven go/no-go experiments.

Each criterion is one function returning a :class:`CriterionResult` whose
``numerics`` dict holds every number the verdict was computed from, in plain
Python types.  :func:`run_all` executes the first ten with the requested
worker count, then re-executes them with a single worker and checks the two
numeric records are bit-identical — the reproducibility criterion.

All tolerance bands are wide by construction: the claims being checked are
scaling statements that hold up to unknown multiplicative constants, so the
battery tests slopes, bounded ratios, signs and z-scores, never point
values (the one exception is the exact self-duality of rhombus crossings).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from gradperc import arms, cluster, oracles, runner
from gradperc.charlen import CharLenParams, check_scaling_relation, \
    estimate_characteristic_length, estimate_sigma, gradient_row_density
from gradperc.fitstats import fit_estimate_series, fit_power_law
from gradperc.front import StripSpec, default_strip_length, interior_window
from gradperc.lattice import Annulus, Region
from gradperc.profiles import Configuration, DensityProfile, SeedSpec, \
    sample_configuration
from gradperc.records import jsonable

__all__ = ["CriterionResult", "run_all", "DEFAULT_SEED", "CRITERION_NAMES"]

DEFAULT_SEED = 1729

CRITERION_NAMES = {
    1: "rhombus self-duality at p=1/2",
    2: "small-instance brute-force oracles",
    3: "characteristic-length exponent band",
    4: "gradient-scale exponent band and consistency",
    5: "two-arm and four-arm exponent bands",
    6: "near-critical scaling-relation product band",
    7: "quasi-multiplicativity and near-critical invariance",
    8: "front localization and fluctuation floor",
    9: "front length scaling",
    10: "front boundary color asymmetry",
    11: "worker-count reproducibility",
}

CRITICAL = DensityProfile.homogeneous(0.5)

NU_GRID = (0.40, 0.42, 0.44, 0.46, 0.48)
SIGMA_GRID = (64, 128, 256, 512, 1024)
PI2_GRID = (8, 16, 32, 64, 128, 256)
PI2_TRIALS = 10_000
PI4_GRID = (4, 8, 16, 32, 64)
PI4_TRIALS = {4: 20_000, 8: 20_000, 16: 30_000, 32: 50_000, 64: 100_000}
RELATION_GRID = (0.40, 0.44, 0.48)
FRONT_STRIPS = {64: 500, 256: 500, 1024: 300}


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str
    numerics: dict

    def line(self) -> str:
        flag = "PASS" if self.passed else "FAIL"
        return f"[{flag}] criterion {self.index:2d} — {self.name}: {self.detail}"


# --- helpers ---------------------------------------------------------------

def _config_from_bits(region: Region, bits: int) -> Configuration:
    flat = [(bits >> k) & 1 for k in range(region.site_count)]
    black = np.array(flat, dtype=bool).reshape(region.shape)
    return Configuration(region, black, CRITICAL)


# picklable grid workers
def _sigma_point(N, params, master, lane):
    return estimate_sigma(N, params, master, lane)


def _charlen_point(p, params, master, lane):
    return estimate_characteristic_length(p, params, master, lane)


def _relation_point(p, params, master, arm_trials, lane):
    return check_scaling_relation(p, params, master, arm_trials, lane)


# --- criteria --------------------------------------------------------------

def _crit1(master: int, workers: int) -> CriterionResult:
    rows = {}
    ok = True
    for k, n in enumerate((8, 16, 32, 64)):
        h, v, broken = runner.duality_counts(n, 10_000, master, (1, k), workers)
        ok &= abs(h.mean - 0.5) <= 3 * h.stderr and broken == 0
        rows[str(n)] = {"p_hat": h.mean, "stderr": h.stderr,
                        "vertical_white": v.mean, "violations": broken}
    detail = ", ".join(f"n={n}: {r['p_hat']:.4f}" for n, r in rows.items())
    return CriterionResult(1, CRITERION_NAMES[1], ok, detail, rows)


def _crit2(master: int) -> CriterionResult:
    mismatches = {"crossing": 0, "labeling": 0, "arms01": 0, "arms13": 0}

    r = Region(0, 3, 0, 2)  # 12 sites, exhaustive
    for bits in range(1 << r.site_count):
        c = _config_from_bits(r, bits)
        for orient in ("horizontal", "vertical"):
            for color in ("black", "white"):
                if cluster.has_crossing(c, r, orient, color) != \
                        oracles.oracle_has_crossing(c, r, orient, color):
                    mismatches["crossing"] += 1

    r3 = Region(0, 2, 0, 2)  # 9 sites: full labeling comparison
    for bits in range(1 << r3.site_count):
        c = _config_from_bits(r3, bits)
        for color in ("black", "white"):
            lab = cluster.label_clusters(c, r3, color)
            ref = oracles.oracle_cluster_map(c, r3, color)
            got = {s: lab.label_of(s) for s in r3.sites() if lab.label_of(s)}
            if got != ref or lab.count != oracles.oracle_cluster_count(c, r3, color):
                mismatches["labeling"] += 1

    a01 = Annulus(0, 1)  # 3x3 box: every configuration, both arm counts
    for bits in range(1 << a01.box.site_count):
        c = _config_from_bits(a01.box, bits)
        for j in (2, 4):
            if arms.detect_alternating_arms(c, a01, j) != \
                    oracles.oracle_alternating_arms(c, a01, j, prune=False):
                mismatches["arms01"] += 1

    # annulus (1,3): exhaustive over the whole 14-site inner ring against a
    # fixed sampled background elsewhere
    a13 = Annulus(1, 3)
    base = sample_configuration(a13.box, CRITICAL, SeedSpec(master, 0, (2, 0)))
    free = a13.inner_ring()
    idx = [a13.box.index(s) for s in free]
    for bits in range(1 << len(free)):
        black = base.black.copy()
        for k, (row, col) in enumerate(idx):
            black[row, col] = bool((bits >> k) & 1)
        c = Configuration(a13.box, black, CRITICAL)
        for j in (2, 4):
            if arms.detect_alternating_arms(c, a13, j) != \
                    oracles.oracle_alternating_arms(c, a13, j):
                mismatches["arms13"] += 1

    ok = not any(mismatches.values())
    detail = f"mismatches: {mismatches}"
    return CriterionResult(2, CRITERION_NAMES[2], ok, detail, mismatches)


def _crit3(master: int, workers: int, params: CharLenParams) -> CriterionResult:
    items = [(p, params, master, (3, g)) for g, p in enumerate(NU_GRID)]
    res = runner.grid_map(_charlen_point, items, workers)
    pts = [(abs(p - 0.5), r.L) for p, r in zip(NU_GRID, res)]
    fit = fit_power_law(pts)
    ok = -1.7 <= fit.slope <= -1.0 and not any(r.out_of_range for r in res)
    numerics = {"L": [r.L for r in res], "slope": fit.slope,
                "slope_stderr": fit.slope_stderr, "r_squared": fit.r_squared}
    detail = f"slope {fit.slope:.3f} (band [-1.7, -1.0]), L = {numerics['L']}"
    return CriterionResult(3, CRITERION_NAMES[3], ok, detail, numerics)


def _crit4(master: int, workers: int,
           params: CharLenParams) -> tuple[CriterionResult, dict[int, int]]:
    items = [(N, params, master, (4, g, 0)) for g, N in enumerate(SIGMA_GRID)]
    sig = runner.grid_map(_sigma_point, items, workers)
    sigmas = {N: s.sigma for N, s in zip(SIGMA_GRID, sig)}
    citems = [(gradient_row_density(sigmas[N], N), params, master, (4, g, 1))
              for g, N in enumerate(SIGMA_GRID)]
    lres = runner.grid_map(_charlen_point, citems, workers)
    ratios = [r.L / sigmas[N] for N, r in zip(SIGMA_GRID, lres)]
    fit = fit_power_law(list(zip(SIGMA_GRID, (s.sigma for s in sig))))
    ok = (0.45 <= fit.slope <= 0.70
          and all(0.25 <= rho <= 4.0 for rho in ratios)
          and not any(s.degenerate for s in sig))
    numerics = {"sigma": [s.sigma for s in sig], "slope": fit.slope,
                "slope_stderr": fit.slope_stderr,
                "consistency": ratios}
    detail = (f"slope {fit.slope:.3f} (band [0.45, 0.70]), "
              f"sigma = {numerics['sigma']}, L/sigma in "
              f"[{min(ratios):.2f}, {max(ratios):.2f}]")
    return CriterionResult(4, CRITERION_NAMES[4], ok, detail, numerics), sigmas


def _crit5(master: int, workers: int) -> CriterionResult:
    e2 = [runner.arm_probability(2, 0, n, CRITICAL, PI2_TRIALS, master,
                                 (5, 2, g), workers)
          for g, n in enumerate(PI2_GRID)]
    fit2 = fit_estimate_series(PI2_GRID, e2)
    e4 = [runner.arm_probability(4, 0, n, CRITICAL, PI4_TRIALS[n], master,
                                 (5, 4, g), workers)
          for g, n in enumerate(PI4_GRID)]
    fit4 = fit_estimate_series(PI4_GRID, e4)
    ok = -0.35 <= fit2.slope <= -0.20 and -1.5 <= fit4.slope <= -1.0
    numerics = {"pi2": [e.mean for e in e2], "pi2_slope": fit2.slope,
                "pi2_slope_stderr": fit2.slope_stderr,
                "pi4": [e.mean for e in e4], "pi4_slope": fit4.slope,
                "pi4_slope_stderr": fit4.slope_stderr}
    detail = (f"pi2 slope {fit2.slope:.3f} (band [-0.35, -0.20]), "
              f"pi4 slope {fit4.slope:.3f} (band [-1.5, -1.0])")
    return CriterionResult(5, CRITERION_NAMES[5], ok, detail, numerics)


def _crit6(master: int, workers: int, params: CharLenParams) -> CriterionResult:
    items = [(p, params, master, 30_000, (6, g))
             for g, p in enumerate(RELATION_GRID)]
    res = runner.grid_map(_relation_point, items, workers)
    prods = [r.product for r in res]
    spread = max(prods) / min(prods)
    ok = spread <= 10.0
    numerics = {"p": list(RELATION_GRID), "L": [r.L for r in res],
                "pi4": [r.pi4.mean for r in res], "products": prods,
                "spread": spread}
    detail = f"products {[f'{v:.3f}' for v in prods]}, max/min {spread:.2f} (<= 10)"
    return CriterionResult(6, CRITERION_NAMES[6], ok, detail, numerics)


def _crit7(master: int, workers: int, params: CharLenParams) -> CriterionResult:
    trials = 8000

    def ratio(j, n1, n2, lane):
        inner = runner.arm_probability(j, 0, n1 // 2, CRITICAL, trials, master,
                                       (*lane, 0), workers)
        sep = runner.arm_probability(j, 2 * n1, n2, CRITICAL, trials, master,
                                     (*lane, 1), workers)
        whole = runner.arm_probability(j, 0, n2, CRITICAL, trials, master,
                                       (*lane, 2), workers)
        return inner.mean * sep.mean / whole.mean

    ratios = {n2: ratio(2, 8, n2, (7, 0, k)) for k, n2 in enumerate((32, 64, 128))}
    stability = max(ratios.values()) / min(ratios.values())

    off = runner.arm_probability(2, 8, 32, DensityProfile.homogeneous(0.45),
                                 10_000, master, (7, 1, 0), workers)
    crit = runner.arm_probability(2, 8, 32, CRITICAL, 10_000, master,
                                  (7, 1, 1), workers)
    pair = off.mean / crit.mean
    L45 = estimate_characteristic_length(0.45, params, master, (7, 2)).L

    ok = (all(0.1 <= v <= 10.0 for v in ratios.values())
          and stability <= 5.0 and 0.2 <= pair <= 5.0)
    numerics = {"quasimult": {str(k): v for k, v in ratios.items()},
                "stability": stability, "near_critical_pair": pair,
                "L_at_045": L45}
    detail = (f"ratios {[f'{v:.2f}' for v in ratios.values()]} (band [0.1, 10]), "
              f"stability {stability:.2f} (<= 5), off/critical pair "
              f"{pair:.2f} (band [0.2, 5])")
    return CriterionResult(7, CRITERION_NAMES[7], ok, detail, numerics)


def _front_windows(N: int, sigma: int) -> tuple[StripSpec, tuple[Region, ...]]:
    spec = StripSpec(N, default_strip_length(N, sigma))
    mid = spec.T // 2
    return spec, (
        Region(mid - 2 * sigma, mid + 2 * sigma, -N, N),   # length 4*sigma
        Region(mid - 4 * sigma, mid + 4 * sigma, -N, N),   # length 8*sigma
        interior_window(spec, sigma, j_max=-1),            # below axis, full length
        interior_window(spec, sigma, j_min=-3 * sigma, j_max=-sigma),
    )


def _ensembles(master: int, workers: int, sigmas: dict[int, int]):
    out = {}
    for k, N in enumerate((64, 256, 1024)):
        spec, wins = _front_windows(N, sigmas[N])
        out[N] = runner.front_ensemble(spec, wins, FRONT_STRIPS[N], master,
                                       (8, k), workers)
    return out


def _crit8(ens) -> CriterionResult:
    e = ens[256]
    sigma = (e.windows[0].i_max - e.windows[0].i_min) // 4
    exit_p = [float((e.max_abs_y[:, 0] > u * sigma).mean()) for u in (1, 2, 3, 4)]
    stay_p = float((e.max_abs_y[:, 1] <= sigma).mean())
    ok = (bool(e.verify.all()) and exit_p[3] <= 0.1 and stay_p <= 0.9
          and all(a >= b for a, b in zip(exit_p, exit_p[1:])))
    numerics = {"exit_probabilities": exit_p, "stay_probability": stay_p,
                "strips": int(len(e.verify)), "verified": int(e.verify.sum())}
    detail = (f"P(exit u*sigma) = {[f'{v:.3f}' for v in exit_p]} "
              f"(u=4 <= 0.1), P(stay within sigma) = {stay_p:.3f} (<= 0.9)")
    return CriterionResult(8, CRITERION_NAMES[8], ok, detail, numerics)


def _crit9(master: int, workers: int, sigmas: dict[int, int],
           ens) -> CriterionResult:
    means, ratios = {}, {}
    for g, N in enumerate((64, 256, 1024)):
        sigma = sigmas[N]
        pi2 = runner.arm_probability(2, 0, sigma, CRITICAL, 10_000, master,
                                     (9, g), workers)
        mean_edges = float(ens[N].edge_count[:, 1].mean())
        means[N] = mean_edges
        ratios[N] = mean_edges / (8 * sigma ** 2 * pi2.mean)
    fit = fit_power_law([(sigmas[N], means[N]) for N in means])
    ok = (all(0.125 <= v <= 8.0 for v in ratios.values())
          and 1.55 <= fit.slope <= 1.95
          and all(bool(ens[N].verify.all()) for N in means))
    numerics = {"mean_edges": {str(k): v for k, v in means.items()},
                "length_ratios": {str(k): v for k, v in ratios.items()},
                "slope": fit.slope, "slope_stderr": fit.slope_stderr}
    detail = (f"ratios {[f'{v:.2f}' for v in ratios.values()]} (band [1/8, 8]), "
              f"edge-count slope vs sigma {fit.slope:.3f} (band [1.55, 1.95])")
    return CriterionResult(9, CRITERION_NAMES[9], ok, detail, numerics)


def _crit10(ens) -> CriterionResult:
    e = ens[1024]

    def zscore(x: np.ndarray) -> tuple[float, float]:
        mean = float(x.mean())
        sem = float(x.std(ddof=1) / np.sqrt(len(x)))
        return mean, mean / sem

    below_mean, below_z = zscore(e.boundary_excess[:, 2].astype(float))
    band_mean, band_z = zscore(e.boundary_excess[:, 3].astype(float))
    ok = (bool(e.verify.all()) and below_mean > 0 and below_z >= 3.0
          and band_mean > 0 and band_z >= 3.0)
    numerics = {"strips": int(len(e.verify)),
                "below_mean": below_mean, "below_z": below_z,
                "band_mean": band_mean, "band_z": band_z}
    detail = (f"below-axis excess {below_mean:.1f} (z = {below_z:.1f}), "
              f"band excess {band_mean:.1f} (z = {band_z:.1f}); need z >= 3")
    return CriterionResult(10, CRITERION_NAMES[10], ok, detail, numerics)


def run_battery(master_seed: int = DEFAULT_SEED,
                workers: int = 1) -> list[CriterionResult]:
    """Criteria 1-10 at the given worker count (numbers are worker-invariant)."""
    params = CharLenParams()
    out = [_crit1(master_seed, workers), _crit2(master_seed)]
    out.append(_crit3(master_seed, workers, params))
    c4, sigmas = _crit4(master_seed, workers, params)
    out.append(c4)
    out.append(_crit5(master_seed, workers))
    out.append(_crit6(master_seed, workers, params))
    out.append(_crit7(master_seed, workers, params))
    ens = _ensembles(master_seed, workers, sigmas)
    out.append(_crit8(ens))
    out.append(_crit9(master_seed, workers, sigmas, ens))
    out.append(_crit10(ens))
    return out


def run_all(master_seed: int = DEFAULT_SEED,
            workers: int = 8) -> list[CriterionResult]:
    """Full battery plus the worker-count reproducibility comparison.

    Criteria 1-10 run twice — once with ``workers`` processes, once inline —
    and criterion 11 passes iff every numeric record agrees bit for bit.
    """
    multi = run_battery(master_seed, workers)
    single = run_battery(master_seed, 1)
    blob_m = [json.dumps(jsonable(r.numerics), sort_keys=True) for r in multi]
    blob_s = [json.dumps(jsonable(r.numerics), sort_keys=True) for r in single]
    same = [m == s for m, s in zip(blob_m, blob_s)]
    ok = all(same)
    bad = [i + 1 for i, s in enumerate(same) if not s]
    detail = (f"numeric records identical for workers {{{workers}, 1}}"
              if ok else f"criteria with differing records: {bad}")
    numerics = {"workers_compared": [workers, 1], "identical": same}
    return multi + [CriterionResult(11, CRITERION_NAMES[11], ok, detail,
                                    numerics)]
