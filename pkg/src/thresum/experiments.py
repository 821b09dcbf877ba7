"""Improvement tables and their qualitative trend checks.

The canonical table fixes equal Poisson rates at the rule's boundary
index and tabulates the exact risk improvement of the zero-region
estimator over thresholds A in {1,3,5,7,9} and sample sizes n in 1..10.
A published reference copy of that table (3 decimals) ships as package
data and is never regenerated from the code under test.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from importlib import resources
from typing import Sequence

import numpy as np

from .distributions import Family, FamilyParam
from .estimators import ThresholdRule
from .risk import exact_improvement

TABLE1_A_VALUES = (1, 3, 5, 7, 9)
TABLE1_N_VALUES = tuple(range(1, 11))

_REFERENCE_FILE = "improvement_reference.csv"


@dataclass(frozen=True)
class ImprovementGrid:
    """A matrix of risk improvements indexed by (threshold, sample size)."""

    a_values: tuple
    n_values: tuple
    cells: np.ndarray

    def __post_init__(self):
        cells = np.asarray(self.cells, dtype=np.float64)
        object.__setattr__(self, "a_values", tuple(self.a_values))
        object.__setattr__(self, "n_values", tuple(self.n_values))
        object.__setattr__(self, "cells", cells)
        if cells.shape != (len(self.a_values), len(self.n_values)):
            raise ValueError(
                f"cells shape {cells.shape} does not match "
                f"{len(self.a_values)} thresholds x {len(self.n_values)} sizes"
            )
        if np.any(cells < 0.0):
            raise ValueError("improvements cannot be negative")

    def cell(self, a, n) -> float:
        return float(self.cells[self.a_values.index(a), self.n_values.index(n)])

    def to_csv(self, decimals: int | None = None) -> str:
        """CSV text: header row of n values, first column the A values."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["A"] + [str(n) for n in self.n_values])
        for i, a in enumerate(self.a_values):
            if decimals is None:
                row = [f"{v:.6g}" for v in self.cells[i]]
            else:
                row = [f"{v:.{decimals}f}" for v in self.cells[i]]
            writer.writerow([f"{a:g}"] + row)
        return buf.getvalue()


def table1() -> ImprovementGrid:
    """The canonical equal-rate Poisson improvement grid.

    Every rate is set to the boundary index A + 1, matching the setting
    of the published reference table.
    """
    cells = np.empty((len(TABLE1_A_VALUES), len(TABLE1_N_VALUES)))
    for i, a in enumerate(TABLE1_A_VALUES):
        rule = ThresholdRule(float(a))
        fam = FamilyParam(Family.POISSON, float(rule.boundary_index))
        for j, n in enumerate(TABLE1_N_VALUES):
            cells[i, j] = exact_improvement([fam] * n, rule)
    return ImprovementGrid(TABLE1_A_VALUES, TABLE1_N_VALUES, cells)


def reference_table1() -> ImprovementGrid:
    """The published reference values (3 decimals), loaded from package data."""
    text = resources.files("thresum.data").joinpath(_REFERENCE_FILE).read_text()
    rows = list(csv.reader(io.StringIO(text)))
    n_values = tuple(int(v) for v in rows[0][1:])
    a_values = tuple(int(float(r[0])) for r in rows[1:])
    cells = np.array([[float(v) for v in r[1:]] for r in rows[1:]])
    return ImprovementGrid(a_values, n_values, cells)


@dataclass(frozen=True)
class TrendReport:
    """Outcome of the qualitative checks on an improvement grid.

    last_n_below_row_max: in every threshold row, the n = 10 cell sits
    strictly below the row maximum (improvement eventually shrinks as n
    grows). increasing_in_a_at_n1: the n = 1 column strictly increases
    with the threshold. Either check is vacuous when the grid lacks the
    relevant column.
    """

    last_n_below_row_max: bool
    last_n_vacuous: bool
    increasing_in_a_at_n1: bool
    n1_vacuous: bool

    @property
    def passed(self) -> bool:
        ok_last = self.last_n_vacuous or self.last_n_below_row_max
        ok_n1 = self.n1_vacuous or self.increasing_in_a_at_n1
        return ok_last and ok_n1


def trend_report(grid: ImprovementGrid) -> TrendReport:
    """Check the shrinking-in-n and growing-in-A trends on a grid."""
    if 10 in grid.n_values:
        col = grid.n_values.index(10)
        last_ok = bool(np.all(grid.cells[:, col] < grid.cells.max(axis=1)))
        last_vac = False
    else:
        last_ok, last_vac = True, True
    if 1 in grid.n_values and len(grid.a_values) >= 2:
        col = grid.n_values.index(1)
        n1 = grid.cells[:, col]
        n1_ok = bool(np.all(np.diff(n1) > 0.0))
        n1_vac = False
    else:
        n1_ok, n1_vac = True, True
    return TrendReport(
        last_n_below_row_max=last_ok,
        last_n_vacuous=last_vac,
        increasing_in_a_at_n1=n1_ok,
        n1_vacuous=n1_vac,
    )


def family_improvement_table(kind: Family, a_values: Sequence[float],
                             n_values: Sequence[int], theta: float) -> ImprovementGrid:
    """Improvement grid for any family at a fixed common parameter."""
    fam = FamilyParam(kind, theta)
    cells = np.empty((len(a_values), len(n_values)))
    for i, a in enumerate(a_values):
        rule = ThresholdRule(float(a))
        for j, n in enumerate(n_values):
            cells[i, j] = exact_improvement([fam] * int(n), rule)
    return ImprovementGrid(tuple(a_values), tuple(n_values), cells)
