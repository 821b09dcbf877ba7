"""Unbiased estimation of threshold-indicator sums.

For observations x_1..x_n from one of four families (Poisson, Geometric,
Exponential, UniformScale), the estimand is the random sum of threshold
indicators weighted by the per-observation parameter scale. The package
provides the unique per-family unbiased statistics, the dominating
variant that estimates 0 on the zero region, exact and Monte Carlo risk
computation, dominance scans, and reproducible improvement tables.
"""

from ._kernels import BACKEND as KERNEL_BACKEND
from .distributions import (
    Family,
    FamilyParam,
    RandomStream,
    cdf,
    mass,
    mean,
    sample,
    survival,
    tail_cutoff,
    validate_sample,
    variance,
)
from .estimators import (
    Direction,
    ThresholdRule,
    UnsupportedRuleError,
    aggregate_estimate,
    component_estimate,
    estimand,
    improved_estimate,
    in_zero_region,
    indicator,
    target_scale,
)
from .experiments import (
    ImprovementGrid,
    TrendReport,
    family_improvement_table,
    reference_table1,
    table1,
    trend_report,
)
from .risk import (
    A_GRID,
    ABSOLUTE_LOSS,
    EXACT_TAIL_TOL,
    SQUARED_LOSS,
    THETA_GRIDS,
    DominanceScan,
    EstimatorKind,
    LossForm,
    LossSpec,
    RiskMethod,
    RiskReport,
    default_theta_grid,
    dominance_scan,
    exact_component_risk,
    exact_improved_risk,
    exact_improvement,
    exact_report,
    exact_risk,
    loss_value,
    mc_comparison,
    mc_loss_samples,
    mc_prediction_risk,
    mc_risk,
    truncation_risk_pair,
)

__version__ = "0.1.0"

__all__ = [
    "KERNEL_BACKEND",
    "Family",
    "FamilyParam",
    "RandomStream",
    "cdf",
    "mass",
    "mean",
    "sample",
    "survival",
    "tail_cutoff",
    "validate_sample",
    "variance",
    "Direction",
    "ThresholdRule",
    "UnsupportedRuleError",
    "aggregate_estimate",
    "component_estimate",
    "estimand",
    "improved_estimate",
    "in_zero_region",
    "indicator",
    "target_scale",
    "ImprovementGrid",
    "TrendReport",
    "family_improvement_table",
    "reference_table1",
    "table1",
    "trend_report",
    "A_GRID",
    "ABSOLUTE_LOSS",
    "EXACT_TAIL_TOL",
    "SQUARED_LOSS",
    "THETA_GRIDS",
    "DominanceScan",
    "EstimatorKind",
    "LossForm",
    "LossSpec",
    "RiskMethod",
    "RiskReport",
    "default_theta_grid",
    "dominance_scan",
    "exact_component_risk",
    "exact_improved_risk",
    "exact_improvement",
    "exact_report",
    "exact_risk",
    "loss_value",
    "mc_comparison",
    "mc_loss_samples",
    "mc_prediction_risk",
    "mc_risk",
    "truncation_risk_pair",
    "__version__",
]
