"""The four sampling families.

Mass/density, CDF, survival, moments, deterministic stream sampling and
discrete tail truncation for:

* Poisson(theta), support {0, 1, ...}
* Geometric(theta), P(X = x) = (1 - theta) * theta**x on {0, 1, ...}
* Exponential(theta), density exp(-x/theta)/theta on (0, inf)
* UniformScale(theta), density 1/theta on (0, theta)

All operations are pure; samplers take an explicit stream value and never
touch global state, so everything here is safe to call concurrently.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import _kernels


class Family(Enum):
    """Distribution family tag."""

    POISSON = "poisson"
    GEOMETRIC = "geometric"
    EXPONENTIAL = "exponential"
    UNIFORM_SCALE = "uniform"

    @property
    def is_discrete(self) -> bool:
        return self in (Family.POISSON, Family.GEOMETRIC)


@dataclass(frozen=True)
class FamilyParam:
    """A family tag plus its scalar parameter.

    theta must be positive and finite; for Geometric it must additionally
    lie below 1. Discrete families live on {0, 1, 2, ...}; Exponential on
    (0, inf); UniformScale on (0, theta).
    """

    kind: Family
    theta: float

    def __post_init__(self):
        th = float(self.theta)
        object.__setattr__(self, "theta", th)
        if not math.isfinite(th) or th <= 0.0:
            raise ValueError(f"theta must be positive and finite, got {self.theta!r}")
        if self.kind is Family.GEOMETRIC and th >= 1.0:
            raise ValueError(f"geometric theta must lie in (0, 1), got {th}")

    @property
    def is_discrete(self) -> bool:
        return self.kind.is_discrete


@dataclass(frozen=True)
class RandomStream:
    """Identifier of one reproducible stream of draws.

    (seed, index) fully determine every value the stream will ever
    produce; sampling does not mutate the stream, so repeated calls with
    the same stream return the same sequence.
    """

    seed: int
    index: int = 0

    def __post_init__(self):
        if not isinstance(self.seed, int) or not isinstance(self.index, int):
            raise ValueError("stream seed and index must be integers")


def _check_point(kind: Family, x) -> float:
    x = float(x)
    if not math.isfinite(x) or x < 0.0:
        raise ValueError(f"support points must be finite and nonnegative, got {x}")
    if kind.is_discrete and x != math.floor(x):
        raise ValueError(f"{kind.value} support is integer valued, got {x}")
    return x


def validate_sample(kind: Family, values) -> np.ndarray:
    """Coerce observations to a float array, checking kind-level support.

    Rejects empty input, negative values, non-finite values, and
    fractional values under a discrete family.
    """
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("a sample must be a nonempty 1-d collection of observations")
    if not np.all(np.isfinite(arr)):
        raise ValueError("observations must be finite")
    if np.any(arr < 0.0):
        raise ValueError("observations must be nonnegative")
    if kind.is_discrete and np.any(arr != np.floor(arr)):
        raise ValueError(f"{kind.value} observations must be integers")
    return arr


def _poisson_pmf(x: int, theta: float) -> float:
    if x == 0:
        return math.exp(-theta)
    return math.exp(x * math.log(theta) - theta - math.lgamma(x + 1.0))


def _poisson_hi(theta: float) -> int:
    # Generous cut: the neglected tail is far below 1e-50 at desk scale.
    return int(math.ceil(theta + 20.0 * math.sqrt(theta + 1.0) + 64.0))


def mass(fam: FamilyParam, x) -> float:
    """Pmf (discrete families) or density (continuous families) at x.

    Points outside the support that are merely unreachable (a
    UniformScale x at or above theta, a continuous x of exactly 0) get
    mass 0; negative x, or fractional x under a discrete family, raise
    ValueError.
    """
    x = _check_point(fam.kind, x)
    th = fam.theta
    if fam.kind is Family.POISSON:
        return _poisson_pmf(int(x), th)
    if fam.kind is Family.GEOMETRIC:
        return (1.0 - th) * th ** int(x)
    if fam.kind is Family.EXPONENTIAL:
        return math.exp(-x / th) / th if x > 0.0 else 0.0
    return 1.0 / th if 0.0 < x < th else 0.0


def _poisson_cdf_survival(th: float, k: int) -> tuple[float, float]:
    # Sum whichever side is smaller directly (no cancellation) and take
    # the complement for the other, so cdf + survival is 1 to an ulp.
    hi = _poisson_hi(th)
    head = math.fsum(_poisson_pmf(i, th) for i in range(min(k, hi) + 1))
    if head <= 0.5:
        return head, 1.0 - head
    if k >= hi:
        return 1.0, 0.0
    tail = math.fsum(_poisson_pmf(i, th) for i in range(k + 1, hi + 1))
    return 1.0 - tail, tail


def cdf(fam: FamilyParam, x) -> float:
    """Right-continuous CDF, defined for every real x."""
    x = float(x)
    th = fam.theta
    if fam.kind.is_discrete:
        if x < 0.0:
            return 0.0
        k = int(math.floor(x))
        if fam.kind is Family.GEOMETRIC:
            return 1.0 - th ** (k + 1.0)
        return _poisson_cdf_survival(th, k)[0]
    if x <= 0.0:
        return 0.0
    if fam.kind is Family.EXPONENTIAL:
        return -math.expm1(-x / th)
    return min(x / th, 1.0)


def survival(fam: FamilyParam, x) -> float:
    """P(X > x), computed without cancellation in the discrete tails."""
    x = float(x)
    th = fam.theta
    if fam.kind.is_discrete:
        if x < 0.0:
            return 1.0
        k = int(math.floor(x))
        if fam.kind is Family.GEOMETRIC:
            return th ** (k + 1.0)
        return _poisson_cdf_survival(th, k)[1]
    if x <= 0.0:
        return 1.0
    if fam.kind is Family.EXPONENTIAL:
        return math.exp(-x / th)
    return max(1.0 - x / th, 0.0)


def mean(fam: FamilyParam) -> float:
    th = fam.theta
    if fam.kind is Family.POISSON:
        return th
    if fam.kind is Family.GEOMETRIC:
        return th / (1.0 - th)
    if fam.kind is Family.EXPONENTIAL:
        return th
    return th / 2.0


def variance(fam: FamilyParam) -> float:
    th = fam.theta
    if fam.kind is Family.POISSON:
        return th
    if fam.kind is Family.GEOMETRIC:
        return th / (1.0 - th) ** 2
    if fam.kind is Family.EXPONENTIAL:
        return th * th
    return th * th / 12.0


_SAMPLERS = {
    Family.POISSON: _kernels.sample_poisson,
    Family.GEOMETRIC: _kernels.sample_geometric,
    Family.EXPONENTIAL: _kernels.sample_exponential,
    Family.UNIFORM_SCALE: _kernels.sample_uniform_scale,
}


def sample(fam: FamilyParam, stream: RandomStream, count: int) -> np.ndarray:
    """count i.i.d. draws from fam, deterministic given the stream.

    Returns an int64 array for discrete families and float64 otherwise.
    The draws occupy counters 0 .. count-1 of the stream, so a longer
    call with the same stream extends the same sequence.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    return _SAMPLERS[fam.kind](fam.theta, stream.seed, stream.index, 0, int(count))


def tail_cutoff(fam: FamilyParam, tol: float) -> int:
    """Smallest x with P(X > x) <= tol, for discrete families.

    Used to truncate exact series sums; the default tolerance for exact
    work throughout the package is 1e-14.
    """
    if not fam.kind.is_discrete:
        raise ValueError("tail_cutoff is defined for discrete families only")
    tol = float(tol)
    if not 0.0 < tol < 1.0:
        raise ValueError(f"tol must lie strictly inside (0, 1), got {tol}")
    th = fam.theta
    if fam.kind is Family.GEOMETRIC:
        # P(X > x) = theta**(x+1); start from the log estimate, then fix
        # the boundary by direct power comparison.
        x = max(0, int(math.ceil(math.log(tol) / math.log(th))) - 1)
        while x > 0 and th ** float(x) <= tol:
            x -= 1
        while th ** (x + 1.0) > tol:
            x += 1
        return x
    # Poisson: accumulate suffix sums upward from the far tail, where the
    # neglected remainder is orders of magnitude below tol.
    hi = max(_poisson_hi(th), int(math.ceil(2.0 * th)) + 4)
    t = 0.0
    cutoff = hi
    for x in range(hi, -1, -1):
        if t > tol:
            break
        cutoff = x
        t += _poisson_pmf(x, th)
    return cutoff
