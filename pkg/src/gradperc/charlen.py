"""Characteristic length of near-critical percolation and the gradient scale.

Two nested scales are estimated here by bisection over noisy monotone
predicates:

* ``estimate_characteristic_length`` finds L_eps(p), the smallest box size n
  at which the horizontal crossing probability under homogeneous density p
  drops to eps.  Below L_eps the system is indistinguishable from critical;
  above it, off-critical behavior kicks in.
* ``estimate_sigma`` finds the intrinsic vertical scale sigma of a gradient
  strip of half-height N: the largest sigma whose row density p(sigma) still
  has characteristic length >= sigma.  This is the scale of the front's
  fluctuations and the natural unit for all front statistics.

Each probe of the predicate "crossing probability <= eps" uses a sequential
decision rule (see :func:`_probe`) so that runtime stays predictable while
misclassification near the threshold is damped.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gradperc import arms
from gradperc.cluster import crossing_probability
from gradperc.fitstats import Estimate
from gradperc.lattice import Region
from gradperc.profiles import DensityProfile

__all__ = [
    "CharLenParams", "ReferenceExponents", "REFERENCE",
    "ProbeRecord", "CharLenResult", "SigmaResult", "RelationResult",
    "estimate_characteristic_length", "estimate_sigma",
    "check_scaling_relation",
]

LE, GT, RETRY = "le", "gt", "retry"  # probe verdicts


@dataclass(frozen=True)
class CharLenParams:
    """Tuning knobs shared by the bisection estimators.

    eps
        Crossing-probability threshold in (0, 1/2); 1/4 unless there is a
        reason to move it (estimates at different eps agree up to a bounded
        factor anyway).
    trials
        Monte Carlo trials of the first-stage probe; quadrupled once when a
        probe is too close to the threshold to call.
    n_max
        Hard cap on probed box sizes; beyond it the estimator reports
        out-of-range instead of guessing.
    decision_z
        Half-width, in standard errors, of the uncertainty band that
        triggers the boosted retry.
    """

    eps: float = 0.25
    trials: int = 400
    n_max: int = 4096
    decision_z: float = 2.0
    boost: int = 4

    def __post_init__(self):
        if not 0.0 < self.eps < 0.5:
            raise ValueError(f"eps must lie in (0, 1/2), got {self.eps}")
        if self.trials < 100:
            raise ValueError(f"need >= 100 trials per probe, got {self.trials}")
        if self.n_max < 4 or self.boost < 2:
            raise ValueError("n_max must be >= 4 and boost >= 2")


@dataclass(frozen=True)
class ReferenceExponents:
    """Reference values the measured slopes are compared against.

    Stored as exact fractions; note sigma_exponent is not independent,
    it equals nu/(1+nu).
    """

    nu: Fraction = Fraction(4, 3)
    sigma_exponent: Fraction = Fraction(4, 7)
    alpha2: Fraction = Fraction(1, 4)
    alpha4: Fraction = Fraction(5, 4)
    front_dimension: Fraction = Fraction(7, 4)

    def __post_init__(self):
        if self.sigma_exponent != self.nu / (1 + self.nu):
            raise ValueError("sigma_exponent must equal nu/(1+nu)")


REFERENCE = ReferenceExponents()


@dataclass(frozen=True)
class ProbeRecord:
    """One Monte Carlo probe of the predicate P(crossing of n-box) <= eps."""

    n: int
    trials: int
    p_hat: float
    stderr: float
    verdict: str  # "le" | "gt" | "retry" (retry rows are followed by a boosted row)


@dataclass(frozen=True)
class CharLenResult:
    L: int
    p: float
    eps: float
    out_of_range: bool
    monotone_violation: bool
    trace: tuple[ProbeRecord, ...]


@dataclass(frozen=True)
class SigmaResult:
    sigma: int
    N: int
    eps: float
    degenerate: bool
    trace: tuple[ProbeRecord, ...]


def _probe(n: int, profile: DensityProfile, color: str, params: CharLenParams,
           master_seed: int, lane: tuple[int, ...],
           trace: list[ProbeRecord]) -> bool:
    """Decide whether P(horizontal crossing of [0,n]^2) <= eps.

    Sequential rule: run ``trials`` trials; call the side if the estimate is
    more than ``decision_z`` standard errors away from eps, otherwise run one
    boosted stage with ``boost``-times the trials and compare point
    estimates.  Appends every stage to ``trace``.
    """
    box = Region(0, n, 0, n)
    est = crossing_probability(box, profile, "horizontal", color,
                               params.trials, master_seed, lane=(*lane, n, 0))
    z = params.decision_z
    if est.mean + z * est.stderr < params.eps:
        trace.append(ProbeRecord(n, est.trials, est.mean, est.stderr, LE))
        return True
    if est.mean - z * est.stderr > params.eps:
        trace.append(ProbeRecord(n, est.trials, est.mean, est.stderr, GT))
        return False
    trace.append(ProbeRecord(n, est.trials, est.mean, est.stderr, RETRY))
    boosted = crossing_probability(box, profile, "horizontal", color,
                                   params.boost * params.trials, master_seed,
                                   lane=(*lane, n, 1))
    verdict = LE if boosted.mean <= params.eps else GT
    trace.append(ProbeRecord(n, boosted.trials, boosted.mean, boosted.stderr,
                             verdict))
    return verdict == LE


def _monotone_violation(decided: dict[int, bool]) -> bool:
    # predicate should be False up to some n, True after; flag any inversion
    smallest_true = min((n for n, v in decided.items() if v), default=None)
    if smallest_true is None:
        return False
    return any(not v and n > smallest_true for n, v in decided.items())


def estimate_characteristic_length(p: float, params: CharLenParams | None = None,
                                   master_seed: int = 0,
                                   lane: tuple[int, ...] = ()) -> CharLenResult:
    """Estimate L_eps(p) by geometric doubling then bisection on box size.

    For p > 1/2 the estimate uses white crossings, which by color symmetry
    reproduces L_eps(1-p).  Returns the largest probed n on which the
    crossing probability was still above eps, plus one.  Resolution is one
    lattice unit below n=64 and 5% relative above.

    Raises
    ------
    ValueError
        If |p - 1/2| < 0.005 (the length would exceed desk scale).
    """
    params = params or CharLenParams()
    if abs(p - 0.5) < 0.005:
        raise ValueError(f"p={p} too close to 1/2 for a desk-scale estimate")
    profile = DensityProfile.homogeneous(p)
    color = "black" if p < 0.5 else "white"
    trace: list[ProbeRecord] = []
    decided: dict[int, bool] = {}

    def pred(n: int) -> bool:
        if n not in decided:
            decided[n] = _probe(n, profile, color, params, master_seed, lane,
                                trace)
        return decided[n]

    def result(L: int, out_of_range: bool = False) -> CharLenResult:
        return CharLenResult(L, p, params.eps, out_of_range,
                             _monotone_violation(decided), tuple(trace))

    n, prev = 1, None
    while not pred(n):
        if n >= params.n_max:
            return result(params.n_max, out_of_range=True)
        prev = n
        n = min(2 * n, params.n_max)
    if prev is None:  # already <= eps at the smallest box probed
        return result(1)

    lo, hi = prev, n  # pred(lo) is False, pred(hi) is True
    while True:
        tol = 1 if lo < 64 else max(1, int(0.05 * lo))
        if hi - lo <= tol:
            break
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return result(lo + 1)


def gradient_row_density(sigma: int, N: int) -> float:
    """Density of row j = sigma in a gradient strip of half-height N."""
    return 0.5 - sigma / (2.0 * N)


def estimate_sigma(N: int, params: CharLenParams | None = None,
                   master_seed: int = 0,
                   lane: tuple[int, ...] = ()) -> SigmaResult:
    """Estimate sigma_N = sup{sigma : L_eps(p(sigma)) >= sigma}.

    Uses integer bisection on h(sigma) = [L_eps(p(sigma)) >= sigma].  A full
    length estimate per step is unnecessary: L_eps(q) >= sigma holds exactly
    when the crossing probability of the (sigma-1)-box under q is still
    above eps, which is a single probe.  h is a monotone (decreasing)
    predicate because raising sigma lowers the row density and shrinks its
    characteristic length while the comparison point grows.

    The degenerate flag reports a crossing outside [1, N) — no stable scale.
    """
    params = params or CharLenParams()
    if N < 16:
        raise ValueError(f"N must be >= 16, got {N}")
    trace: list[ProbeRecord] = []

    def h(sigma: int) -> bool:
        profile = DensityProfile.homogeneous(gradient_row_density(sigma, N))
        return not _probe(sigma - 1, profile, "black", params, master_seed,
                          lane, trace)

    if not h(1):
        return SigmaResult(1, N, params.eps, True, tuple(trace))
    if h(N):
        return SigmaResult(N, N, params.eps, True, tuple(trace))
    lo, hi = 1, N  # h(lo) True, h(hi) False
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if h(mid):
            lo = mid
        else:
            hi = mid
    return SigmaResult(lo, N, params.eps, False, tuple(trace))


@dataclass(frozen=True)
class RelationResult:
    """One evaluation of the near-critical product |p-1/2| * L^2 * pi4(L)."""

    p: float
    L: int
    pi4: Estimate
    product: float
    outside_window: bool


def check_scaling_relation(p: float, params: CharLenParams | None = None,
                           master_seed: int = 0, arm_trials: int = 30_000,
                           lane: tuple[int, ...] = ()) -> RelationResult:
    """Evaluate |p - 1/2| * L_eps(p)^2 * pi4(L_eps(p)).

    The four-arm probability is taken at criticality (its near-critical and
    critical values agree up to constants below L).  Across a grid of p the
    products should stay within a bounded band; the result is flagged
    ``outside_window`` when L is too small (or capped) for the asymptotic
    product to mean anything.
    """
    res = estimate_characteristic_length(p, params, master_seed, lane)
    pi4 = arms.arm_probability(4, 0, res.L, DensityProfile.homogeneous(0.5),
                               arm_trials, master_seed, lane=(*lane, 4, res.L))
    product = abs(p - 0.5) * res.L ** 2 * pi4.mean
    return RelationResult(p, res.L, pi4, product,
                          res.out_of_range or res.L < 16)
