"""Threshold indicators and the unbiased estimators built from them.

The target of estimation is the random sum of per-observation indicator
values weighted by the (unknown) per-observation scale: for a threshold
rule and observations x_1..x_n, the estimand is

    sum_j indicator(rule, x_j) * target_scale(fam_j).

Each family admits a unique statistic whose expectation matches the
per-observation term; ``component_estimate`` evaluates it. The aggregate
statistic is inadmissible under any loss that vanishes only at zero:
on the zero region (every observation beyond the threshold) the estimand
is identically zero whatever the parameters, so ``improved_estimate``
returns 0 there and the aggregate elsewhere, which can only reduce loss.

Estimator functions never consult theta; only the estimand and risk
oracles do.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .distributions import Family, FamilyParam


class Direction(Enum):
    """Which side of the threshold the indicator fires on."""

    AT_MOST = "le"
    GREATER_THAN = "gt"


class UnsupportedRuleError(ValueError):
    """No estimator is available for this (family, direction) pair."""


@dataclass(frozen=True)
class ThresholdRule:
    """Threshold A >= 0 plus the comparison direction.

    AT_MOST fires on x <= A (boundary inclusive); GREATER_THAN fires on
    x > A (boundary exclusive) and is only supported for Poisson data.
    """

    threshold: float
    direction: Direction = Direction.AT_MOST

    def __post_init__(self):
        a = float(self.threshold)
        object.__setattr__(self, "threshold", a)
        if not (math.isfinite(a) and a >= 0.0):
            raise ValueError(f"threshold must be finite and >= 0, got {self.threshold!r}")

    @property
    def boundary_index(self) -> int:
        """First integer support point beyond the threshold: floor(A) + 1."""
        return int(math.floor(self.threshold)) + 1


def _require_supported(kind: Family, rule: ThresholdRule) -> None:
    if rule.direction is Direction.GREATER_THAN and kind is not Family.POISSON:
        raise UnsupportedRuleError(
            f"direction 'gt' is only supported for poisson data, not {kind.value}"
        )


def _require_at_most(rule: ThresholdRule, what: str) -> None:
    if rule.direction is not Direction.AT_MOST:
        raise UnsupportedRuleError(f"{what} is only defined for the 'le' direction")


def _scalar_or_array(out: np.ndarray, pyscalar=float):
    return pyscalar(out) if out.ndim == 0 else out


def indicator(rule: ThresholdRule, x):
    """0/1 indicator of the rule firing at x. Vectorizes over x."""
    x = np.asarray(x)
    if rule.direction is Direction.AT_MOST:
        mask = x <= rule.threshold
    else:
        mask = x > rule.threshold
    return _scalar_or_array(np.where(mask, 1, 0), int)


def target_scale(fam: FamilyParam) -> float:
    """Per-observation multiplier of the indicator in the estimand.

    This is theta for Poisson, Exponential and UniformScale. For
    Geometric it is the distribution mean theta/(1-theta): that is the
    scale the unbiasedness identity E[component_estimate] =
    E[indicator * scale] actually pins down under this parameterization.
    """
    if fam.kind is Family.GEOMETRIC:
        return fam.theta / (1.0 - fam.theta)
    return fam.theta


def estimand(rule: ThresholdRule, fams: Sequence[FamilyParam], values) -> float:
    """The random target sum_j indicator(x_j) * target_scale(fam_j).

    Requires the true parameters, so it serves risk computation and test
    oracles only, never the estimators.
    """
    vals = np.asarray(values, dtype=np.float64)
    if vals.ndim != 1 or len(fams) != vals.shape[0]:
        raise ValueError(
            f"got {len(fams)} parameters for {vals.shape} observations; lengths must match"
        )
    scales = np.array([target_scale(f) for f in fams])
    inds = np.asarray(indicator(rule, vals), dtype=np.float64)
    return float(inds @ scales)


def component_estimate(kind: Family, rule: ThresholdRule, x):
    """The unbiased per-observation statistic for one family.

    With m = rule.boundary_index and A = rule.threshold:

    * AT_MOST Poisson:       x if x <= m else 0
    * AT_MOST Geometric:     min(x, m)
    * AT_MOST Exponential:   min(x, A)
    * AT_MOST UniformScale:  2x if x <= A else A
    * GREATER_THAN Poisson:  x if x >= m + 1 else 0

    Vectorizes over x; x is assumed to be in the family's support.
    """
    _require_supported(kind, rule)
    x = np.asarray(x, dtype=np.float64)
    a = rule.threshold
    m = float(rule.boundary_index)
    if rule.direction is Direction.GREATER_THAN:
        out = np.where(x >= m + 1.0, x, 0.0)
    elif kind is Family.POISSON:
        out = np.where(x <= m, x, 0.0)
    elif kind is Family.GEOMETRIC:
        out = np.minimum(x, m)
    elif kind is Family.EXPONENTIAL:
        out = np.minimum(x, a)
    else:
        out = np.where(x <= a, 2.0 * x, a)
    return _scalar_or_array(out)


def aggregate_estimate(kind: Family, rule: ThresholdRule, values) -> float:
    """Sum of component_estimate over the observations."""
    vals = np.asarray(values, dtype=np.float64)
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("values must be a nonempty 1-d collection")
    return float(np.sum(component_estimate(kind, rule, vals)))


def in_zero_region(kind: Family, rule: ThresholdRule, values) -> bool:
    """True iff the estimand is identically zero at these observations.

    Discrete families: every x_j >= boundary_index. Continuous families:
    every x_j strictly above the threshold. Only defined for AT_MOST.
    """
    _require_at_most(rule, "the zero region")
    vals = np.asarray(values, dtype=np.float64)
    if kind.is_discrete:
        return bool(np.all(vals >= rule.boundary_index))
    return bool(np.all(vals > rule.threshold))


def improved_estimate(kind: Family, rule: ThresholdRule, values) -> float:
    """The dominating estimator: 0 on the zero region, aggregate elsewhere.

    Off the zero region it coincides with aggregate_estimate; on it the
    target is surely 0, so estimating 0 weakly reduces the loss pointwise
    for every loss with W(0) = 0, strictly wherever the aggregate is
    positive. The same statistic serves as an unbiased predictor of the
    threshold-weighted sum of unobserved replicate draws.
    """
    if in_zero_region(kind, rule, values):
        return 0.0
    return aggregate_estimate(kind, rule, values)
