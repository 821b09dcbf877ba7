"""Loss functions, exact risks, and Monte Carlo verification.

Everything here evaluates estimators of the random target
sum_j indicator(x_j) * target_scale(fam_j) under losses of the form
W(action - target) with W(0) = 0 and W(t) > 0 for t != 0.

Exact squared-error risks use closed forms and truncated series (default
tail tolerance 1e-14). Monte Carlo estimates use the counter-based
sampling streams: replicate k of observation j reads counter k of stream
(seed, j), and totals are accumulated with exact summation, so results
are identical however the replicates might be partitioned across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np

from .distributions import Family, FamilyParam, RandomStream, mass, sample, survival, tail_cutoff
from .estimators import (
    Direction,
    ThresholdRule,
    UnsupportedRuleError,
    _require_at_most,
    _require_supported,
    component_estimate,
    indicator,
    target_scale,
)

EXACT_TAIL_TOL = 1e-14

# Parameter grids the property and acceptance suites sweep. A_GRID covers
# the boundary cases: A = 0, a fractional threshold, and theta <= A for
# the scale-uniform family. The Poisson grid additionally picks up the
# rule's boundary index at scan time.
THETA_GRIDS = {
    Family.POISSON: (0.5, 1.0, 2.0, 5.0, 10.0),
    Family.GEOMETRIC: (0.1, 0.5, 0.9),
    Family.EXPONENTIAL: (0.5, 1.0, 3.0),
    Family.UNIFORM_SCALE: (0.5, 2.0, 10.0),
}
A_GRID = (0.0, 1.0, 2.5, 3.0, 9.0)


class LossForm(Enum):
    SQUARED = "squared"
    ABSOLUTE = "absolute"
    CUSTOM = "custom"


_CUSTOM_CHECK_GRID = (1e-6, 1e-3, 0.1, 1.0, 10.0, 1000.0)


@dataclass(frozen=True)
class LossSpec:
    """A loss W(action - target).

    Custom losses supply w and must satisfy w(0) = 0 with w(t) > 0 for
    t != 0; both requirements are checked on a sign-symmetric grid at
    construction time.
    """

    form: LossForm = LossForm.SQUARED
    w: Optional[Callable[[float], float]] = None

    def __post_init__(self):
        if self.form is LossForm.CUSTOM:
            if self.w is None:
                raise ValueError("a custom loss requires w")
            if float(self.w(0.0)) != 0.0:
                raise ValueError("custom loss must satisfy w(0) = 0")
            for t in _CUSTOM_CHECK_GRID:
                if float(self.w(t)) <= 0.0 or float(self.w(-t)) <= 0.0:
                    raise ValueError(f"custom loss must be positive away from 0, fails at ±{t}")
        elif self.w is not None:
            raise ValueError("w is only meaningful for the custom form")


SQUARED_LOSS = LossSpec(LossForm.SQUARED)
ABSOLUTE_LOSS = LossSpec(LossForm.ABSOLUTE)


def loss_value(loss: LossSpec, action, target):
    """W(action - target); vectorizes over both arguments."""
    t = np.asarray(action, dtype=np.float64) - np.asarray(target, dtype=np.float64)
    if loss.form is LossForm.SQUARED:
        out = t * t
    elif loss.form is LossForm.ABSOLUTE:
        out = np.abs(t)
    else:
        out = np.asarray(np.vectorize(loss.w, otypes=[np.float64])(t))
    return float(out) if out.ndim == 0 else out


class RiskMethod(Enum):
    EXACT = "exact"
    MONTE_CARLO = "monte_carlo"


class EstimatorKind(Enum):
    PLAIN = "v"
    IMPROVED = "v_star"


@dataclass(frozen=True)
class RiskReport:
    """Risk values for the plain and/or improved estimator.

    Monte Carlo reports carry the standard error(s), replicate count and
    seed; exact reports carry the improvement identity
    risk_v_star = risk_v - improvement.
    """

    method: RiskMethod
    risk_v: Optional[float] = None
    risk_v_star: Optional[float] = None
    improvement: Optional[float] = None
    std_error: Optional[float] = None
    std_error_v_star: Optional[float] = None
    replicates: Optional[int] = None
    seed: Optional[int] = None

    def to_dict(self) -> dict:
        out = {"method": self.method.value}
        for name in ("risk_v", "risk_v_star", "improvement", "std_error",
                     "std_error_v_star", "replicates", "seed"):
            val = getattr(self, name)
            if val is not None:
                out[name] = val
        return out


def _same_kind(fams: Sequence[FamilyParam]) -> Family:
    if not fams:
        raise ValueError("at least one observation is required")
    kinds = {f.kind for f in fams}
    if len(kinds) != 1:
        raise ValueError("all observations must share one family kind")
    return kinds.pop()


# ---------------------------------------------------------------------------
# Exact squared-error risks


def exact_component_risk(fam: FamilyParam, rule: ThresholdRule,
                         tail_tol: float = EXACT_TAIL_TOL) -> float:
    """E[(component_estimate - indicator * scale)^2] for one observation.

    Discrete families are finite sums (the greater-than tail is truncated
    where the remaining mass is far below tail_tol); continuous families
    use the closed-form antiderivatives.
    """
    _require_supported(fam.kind, rule)
    th = fam.theta
    a = rule.threshold
    m = rule.boundary_index
    if rule.direction is Direction.GREATER_THAN:
        hi = tail_cutoff(fam, tail_tol * 1e-4) + 1
        tail = math.fsum((x - th) ** 2 * mass(fam, x) for x in range(m + 1, hi + 1))
        return th * th * mass(fam, m) + tail
    if fam.kind is Family.POISSON:
        head = math.fsum((x - th) ** 2 * mass(fam, x) for x in range(m))
        return head + m * m * mass(fam, m)
    if fam.kind is Family.GEOMETRIC:
        mu = th / (1.0 - th)
        head = math.fsum((x - mu) ** 2 * mass(fam, x) for x in range(m))
        return head + m * m * survival(fam, m - 1.0)
    if fam.kind is Family.EXPONENTIAL:
        z = a / th
        return th * th * (1.0 - math.exp(-z) * (z * z + 1.0)) + a * a * math.exp(-z)
    lo = min(a, th)
    return ((2.0 * lo - th) ** 3 + th ** 3) / (6.0 * th) + a * a * max(0.0, th - a) / th


def exact_risk(fams: Sequence[FamilyParam], rule: ThresholdRule,
               tail_tol: float = EXACT_TAIL_TOL) -> float:
    """Exact squared-error risk of the aggregate estimator.

    The per-observation deviations are independent with mean zero, so the
    aggregate risk is the sum of the component risks.
    """
    _same_kind(fams)
    return math.fsum(exact_component_risk(f, rule, tail_tol) for f in fams)


def _prod_except(vals: Sequence[float], skip: frozenset) -> float:
    out = 1.0
    for i, v in enumerate(vals):
        if i not in skip:
            out *= v
    return out


def _poisson_improvement(fams: Sequence[FamilyParam], m: int) -> float:
    p = [mass(f, m) for f in fams]
    r = [survival(f, float(m)) for f in fams]
    n = len(fams)
    if len({f.theta for f in fams}) == 1:
        # Equal rates: on the zero region the aggregate is m times a
        # binomial count of boundary hits.
        pp, rr = p[0], r[0]
        return m * m * math.fsum(
            i * i * math.comb(n, i) * pp ** i * rr ** (n - i) for i in range(1, n + 1)
        )
    # Unequal rates: E[(sum of boundary hits)^2 restricted to the zero
    # region] expands into single and pairwise hit probabilities.
    q = [pi + ri for pi, ri in zip(p, r)]
    single = math.fsum(p[j] * _prod_except(q, frozenset((j,))) for j in range(n))
    double = math.fsum(
        2.0 * p[j] * p[k] * _prod_except(q, frozenset((j, k)))
        for j in range(n) for k in range(j + 1, n)
    )
    return m * m * (single + double)


def exact_improvement(fams: Sequence[FamilyParam], rule: ThresholdRule) -> float:
    """E[aggregate^2 restricted to the zero region].

    This is exactly the squared-error risk reduction achieved by the
    improved estimator. Closed forms: outside Poisson the aggregate is
    constant on the zero region, so the value is (that constant)^2 times
    the region's probability.
    """
    kind = _same_kind(fams)
    _require_at_most(rule, "exact_improvement")
    n = len(fams)
    a = rule.threshold
    m = rule.boundary_index
    if kind is Family.POISSON:
        return _poisson_improvement(fams, m)
    if kind is Family.GEOMETRIC:
        return (n * m) ** 2 * math.prod(survival(f, m - 1.0) for f in fams)
    if kind is Family.EXPONENTIAL:
        return (n * a) ** 2 * math.prod(math.exp(-a / f.theta) for f in fams)
    return (n * a) ** 2 * math.prod(max(0.0, 1.0 - a / f.theta) for f in fams)


def exact_improved_risk(fams: Sequence[FamilyParam], rule: ThresholdRule,
                        tail_tol: float = EXACT_TAIL_TOL) -> float:
    """Exact squared-error risk of the improved estimator.

    Equals exact_risk - exact_improvement: the two estimators differ only
    on the zero region, where the loss drops from aggregate^2 to 0.
    """
    return max(0.0, exact_risk(fams, rule, tail_tol) - exact_improvement(fams, rule))


def exact_report(fams: Sequence[FamilyParam], rule: ThresholdRule,
                 tail_tol: float = EXACT_TAIL_TOL) -> RiskReport:
    """Exact risk_v / risk_v_star / improvement bundle (squared error)."""
    risk_v = exact_risk(fams, rule, tail_tol)
    improvement = exact_improvement(fams, rule)
    return RiskReport(
        method=RiskMethod.EXACT,
        risk_v=risk_v,
        risk_v_star=max(0.0, risk_v - improvement),
        improvement=improvement,
    )


# ---------------------------------------------------------------------------
# Monte Carlo


def _draw_matrix(fams: Sequence[FamilyParam], replicates: int, seed: int,
                 stream_base: int) -> np.ndarray:
    cols = [
        np.asarray(sample(f, RandomStream(seed, stream_base + j), replicates), dtype=np.float64)
        for j, f in enumerate(fams)
    ]
    return np.column_stack(cols)


def _zero_mask(kind: Family, rule: ThresholdRule, points: np.ndarray) -> np.ndarray:
    if kind.is_discrete:
        return np.all(points >= rule.boundary_index, axis=1)
    return np.all(points > rule.threshold, axis=1)


def _mc_core(fams, rule, replicates, seed, predict):
    kind = _same_kind(fams)
    x = _draw_matrix(fams, replicates, seed, 0)
    est = np.sum(component_estimate(kind, rule, x), axis=1)
    inds = np.asarray(indicator(rule, x), dtype=np.float64)
    if predict:
        y = _draw_matrix(fams, replicates, seed, len(fams))
        target = np.sum(y * inds, axis=1)
    else:
        target = inds @ np.array([target_scale(f) for f in fams])
    return kind, x, est, target


def _mean_se(vals: np.ndarray) -> tuple[float, float]:
    lst = vals.tolist()
    r = len(lst)
    mhat = math.fsum(lst) / r
    var = math.fsum((v - mhat) ** 2 for v in lst) / (r - 1)
    return mhat, math.sqrt(var / r)


def mc_loss_samples(estimator: EstimatorKind, loss: LossSpec,
                    fams: Sequence[FamilyParam], rule: ThresholdRule,
                    replicates: int, seed: int, predict: bool = False) -> np.ndarray:
    """Per-replicate losses; the building block of the MC estimates.

    Deterministic given seed. With predict=True the target is the
    threshold-weighted sum of unobserved replicate draws y_j *
    indicator(x_j) instead of the estimand.
    """
    if replicates < 2:
        raise ValueError(f"replicates must be >= 2, got {replicates}")
    kind, x, est, target = _mc_core(fams, rule, replicates, seed, predict)
    if estimator is EstimatorKind.IMPROVED:
        _require_at_most(rule, "the improved estimator")
        est = np.where(_zero_mask(kind, rule, x), 0.0, est)
    return np.asarray(loss_value(loss, est, target), dtype=np.float64)


def mc_risk(estimator: EstimatorKind, loss: LossSpec, fams: Sequence[FamilyParam],
            rule: ThresholdRule, replicates: int, seed: int) -> RiskReport:
    """Monte Carlo risk of one estimator with its standard error."""
    losses = mc_loss_samples(estimator, loss, fams, rule, replicates, seed)
    mhat, se = _mean_se(losses)
    if estimator is EstimatorKind.PLAIN:
        return RiskReport(method=RiskMethod.MONTE_CARLO, risk_v=mhat, std_error=se,
                          replicates=replicates, seed=seed)
    return RiskReport(method=RiskMethod.MONTE_CARLO, risk_v_star=mhat, std_error=se,
                      replicates=replicates, seed=seed)


def mc_prediction_risk(estimator: EstimatorKind, loss: LossSpec,
                       fams: Sequence[FamilyParam], rule: ThresholdRule,
                       replicates: int, seed: int) -> RiskReport:
    """Monte Carlo prediction risk against the unobserved-replicate target."""
    losses = mc_loss_samples(estimator, loss, fams, rule, replicates, seed, predict=True)
    mhat, se = _mean_se(losses)
    if estimator is EstimatorKind.PLAIN:
        return RiskReport(method=RiskMethod.MONTE_CARLO, risk_v=mhat, std_error=se,
                          replicates=replicates, seed=seed)
    return RiskReport(method=RiskMethod.MONTE_CARLO, risk_v_star=mhat, std_error=se,
                      replicates=replicates, seed=seed)


def mc_comparison(loss: LossSpec, fams: Sequence[FamilyParam], rule: ThresholdRule,
                  replicates: int, seed: int, predict: bool = False) -> RiskReport:
    """Paired Monte Carlo comparison of the plain and improved estimators.

    Both estimators are evaluated on the same draws, so the reported
    improvement is the mean of the pathwise loss difference (surely
    nonnegative). For the greater-than direction only the plain
    estimator exists and the report carries just risk_v.
    """
    if replicates < 2:
        raise ValueError(f"replicates must be >= 2, got {replicates}")
    kind, x, est, target = _mc_core(fams, rule, replicates, seed, predict)
    loss_v = np.asarray(loss_value(loss, est, target), dtype=np.float64)
    mhat_v, se_v = _mean_se(loss_v)
    if rule.direction is Direction.GREATER_THAN:
        return RiskReport(method=RiskMethod.MONTE_CARLO, risk_v=mhat_v, std_error=se_v,
                          replicates=replicates, seed=seed)
    est_star = np.where(_zero_mask(kind, rule, x), 0.0, est)
    loss_star = np.asarray(loss_value(loss, est_star, target), dtype=np.float64)
    mhat_s, se_s = _mean_se(loss_star)
    return RiskReport(
        method=RiskMethod.MONTE_CARLO,
        risk_v=mhat_v,
        risk_v_star=mhat_s,
        improvement=mhat_v - mhat_s,
        std_error=se_v,
        std_error_v_star=se_s,
        replicates=replicates,
        seed=seed,
    )


# ---------------------------------------------------------------------------
# Dominance scanning


@dataclass(frozen=True)
class DominanceScan:
    """Outcome of a pointwise loss comparison of the two estimators."""

    points: int
    violations: int
    strict_improvements: int


def default_theta_grid(kind: Family, rule: ThresholdRule) -> tuple:
    """The standard theta grid, plus the boundary index for Poisson."""
    grid = THETA_GRIDS[kind]
    if kind is Family.POISSON:
        grid = tuple(sorted(set(grid) | {float(rule.boundary_index)}))
    return grid


def dominance_scan(fams: Sequence[FamilyParam], rule: ThresholdRule, loss: LossSpec,
                   *, xmax: Optional[int] = None, samples: Optional[int] = None,
                   seed: Optional[int] = None, theta_grid: Optional[Sequence[float]] = None,
                   ) -> DominanceScan:
    """Compare the losses of the two estimators point by point.

    Discrete families enumerate the lattice {0..xmax}^n (n <= 3);
    continuous families evaluate `samples` points drawn from fams with
    the given seed. At every point and for every theta on the grid the
    improved estimator's loss must not exceed the plain one's; the
    returned strict_improvements counts points where it is strictly
    smaller for every grid theta (exactly the zero-region points with a
    positive aggregate).
    """
    kind = _same_kind(fams)
    _require_at_most(rule, "dominance_scan")
    n = len(fams)
    if kind.is_discrete:
        if xmax is None:
            raise ValueError("discrete enumeration requires xmax")
        if n > 3:
            raise ValueError(f"discrete enumeration is limited to n <= 3, got n={n}")
        pts = np.indices((int(xmax) + 1,) * n).reshape(n, -1).T.astype(np.float64)
    else:
        if samples is None or seed is None:
            raise ValueError("continuous scanning requires samples and seed")
        pts = _draw_matrix(fams, int(samples), seed, 0)
    est = np.sum(component_estimate(kind, rule, pts), axis=1)
    est_star = np.where(_zero_mask(kind, rule, pts), 0.0, est)
    inds = np.asarray(indicator(rule, pts), dtype=np.float64).sum(axis=1)
    if theta_grid is None:
        theta_grid = default_theta_grid(kind, rule)
    violations = 0
    strict = np.ones(pts.shape[0], dtype=bool)
    for th in theta_grid:
        s = target_scale(FamilyParam(kind, th)) * inds
        lv = np.asarray(loss_value(loss, est, s))
        ls = np.asarray(loss_value(loss, est_star, s))
        violations += int(np.count_nonzero(ls > lv))
        strict &= ls < lv
    return DominanceScan(points=int(pts.shape[0]), violations=violations,
                         strict_improvements=int(np.count_nonzero(strict)))


# ---------------------------------------------------------------------------
# Truncating the greater-than estimator at its first live point


def truncation_risk_pair(theta: float, rule: ThresholdRule,
                         tail_tol: float = EXACT_TAIL_TOL) -> tuple[float, float]:
    """Exact risks of the greater-than statistic and its zeroed variant.

    n = 1, Poisson only. The variant additionally estimates 0 at the
    first point where the statistic is positive (boundary_index + 1).
    Returns (risk of the statistic, risk of the variant); the variant is
    worse for large theta but better for small theta, so neither
    dominates the other.
    """
    if rule.direction is not Direction.GREATER_THAN:
        raise UnsupportedRuleError("truncation_risk_pair is defined for the 'gt' direction")
    fam = FamilyParam(Family.POISSON, theta)
    th = fam.theta
    m = rule.boundary_index
    hi = tail_cutoff(fam, tail_tol * 1e-4) + 1
    base = th * th * mass(fam, m)

    def tail_from(x0: int) -> float:
        return math.fsum((x - th) ** 2 * mass(fam, x) for x in range(x0, hi + 1))

    risk_plain = base + tail_from(m + 1)
    risk_variant = base + th * th * mass(fam, m + 1) + tail_from(m + 2)
    return risk_plain, risk_variant
