"""Independent brute-force oracles for the test suite.

Nothing here reuses the package's closed forms: discrete expectations are
direct lattice sums over scipy.stats pmfs, continuous ones are tensor
Gauss-Legendre quadrature over piecewise-smooth panels. Deliberately slow
and simple.
"""

import math

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import stats

from thresum import Direction, Family

_GL_ORDER = 24


def sp_pmf(fam, xs):
    """scipy pmf for a discrete FamilyParam."""
    xs = np.asarray(xs)
    if fam.kind is Family.POISSON:
        return stats.poisson.pmf(xs, fam.theta)
    return stats.nbinom.pmf(xs, 1, 1.0 - fam.theta)


def sp_pdf(fam, xs):
    """scipy pdf for a continuous FamilyParam."""
    xs = np.asarray(xs, dtype=float)
    if fam.kind is Family.EXPONENTIAL:
        return stats.expon.pdf(xs, scale=fam.theta)
    return stats.uniform.pdf(xs, loc=0.0, scale=fam.theta)


def indicator_values(rule, xs):
    xs = np.asarray(xs, dtype=float)
    if rule.direction is Direction.AT_MOST:
        return (xs <= rule.threshold).astype(float)
    return (xs > rule.threshold).astype(float)


def component_values(kind, rule, xs):
    """The per-observation statistic, written out independently."""
    xs = np.asarray(xs, dtype=float)
    a = rule.threshold
    m = math.floor(a) + 1
    if rule.direction is Direction.GREATER_THAN:
        return np.where(xs >= m + 1, xs, 0.0)
    if kind is Family.POISSON:
        return np.where((xs >= 1) & (xs <= m), xs, 0.0)
    if kind is Family.GEOMETRIC:
        return np.minimum(xs, m)
    if kind is Family.EXPONENTIAL:
        return np.minimum(xs, a)
    return np.where(xs <= a, 2.0 * xs, a)


def scale_of(fam):
    if fam.kind is Family.GEOMETRIC:
        return fam.theta / (1.0 - fam.theta)
    return fam.theta


def discrete_hi(fam, tol=1e-16):
    """Lattice bound with tail mass below tol."""
    if fam.kind is Family.POISSON:
        hi = int(fam.theta + 20.0 * math.sqrt(fam.theta + 1.0) + 80.0)
    else:
        hi = int(math.log(tol) / math.log(fam.theta)) + 8
    return hi


def _axis_discrete(fam, rule):
    xs = np.arange(discrete_hi(fam) + 1, dtype=float)
    return xs, sp_pmf(fam, xs)


def _panels(edges, max_len):
    out = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if hi <= lo:
            continue
        k = max(1, int(math.ceil((hi - lo) / max_len)))
        cuts = np.linspace(lo, hi, k + 1)
        out.extend(zip(cuts[:-1], cuts[1:]))
    return out


def _axis_continuous(fam, rule, tail_only=False):
    """Gauss-Legendre nodes/weights covering the support, split at A."""
    a = rule.threshold
    th = fam.theta
    if fam.kind is Family.EXPONENTIAL:
        hi = a + 45.0 * th
        edges = [0.0, min(a, hi), hi] if a > 0 else [0.0, hi]
        panels = _panels(edges, 5.0 * th)
    else:
        split = min(a, th)
        edges = [0.0, split, th] if 0.0 < split < th else [0.0, th]
        panels = _panels(edges, th)
    if tail_only:
        panels = [(lo, hi) for lo, hi in panels if lo >= a - 1e-12]
    if not panels:
        return np.empty(0), np.empty(0)
    base_x, base_w = leggauss(_GL_ORDER)
    xs, ws = [], []
    for lo, hi in panels:
        half = 0.5 * (hi - lo)
        xs.append(half * (base_x + 1.0) + lo)
        ws.append(half * base_w)
    return np.concatenate(xs), np.concatenate(ws)


def brute_risk(fams, rule):
    """n-dimensional squared-error risk of the aggregate, by direct sum
    or quadrature. n <= 3."""
    n = len(fams)
    kind = fams[0].kind
    devs, wgts = [], []
    for f in fams:
        if kind.is_discrete:
            xs, w = _axis_discrete(f, rule)
        else:
            xs, w = _axis_continuous(f, rule)
            w = w * sp_pdf(f, xs)
        devs.append(component_values(kind, rule, xs) - indicator_values(rule, xs) * scale_of(f))
        wgts.append(w)
    if n == 1:
        return float(np.sum(devs[0] ** 2 * wgts[0]))
    if n == 2:
        m = devs[0][:, None] + devs[1][None, :]
        return float(np.sum(m * m * (wgts[0][:, None] * wgts[1][None, :])))
    if n == 3:
        m2 = devs[0][:, None] + devs[1][None, :]
        w2 = wgts[0][:, None] * wgts[1][None, :]
        total = 0.0
        for d3, w3 in zip(devs[2], wgts[2]):
            m = m2 + d3
            total += w3 * float(np.sum(m * m * w2))
        return total
    raise ValueError("brute_risk handles n <= 3")


def brute_improvement(fams, rule):
    """E[aggregate^2 restricted to the zero region], by direct sum or
    quadrature over the region only. n <= 3."""
    n = len(fams)
    kind = fams[0].kind
    m = math.floor(rule.threshold) + 1
    vals, wgts = [], []
    for f in fams:
        if kind.is_discrete:
            xs, w = _axis_discrete(f, rule)
            keep = xs >= m
            xs, w = xs[keep], w[keep]
        else:
            xs, w = _axis_continuous(f, rule, tail_only=True)
            w = w * sp_pdf(f, xs)
        vals.append(component_values(kind, rule, xs))
        wgts.append(w)
    if any(v.size == 0 for v in vals):
        return 0.0
    if n == 1:
        return float(np.sum(vals[0] ** 2 * wgts[0]))
    if n == 2:
        s = vals[0][:, None] + vals[1][None, :]
        return float(np.sum(s * s * (wgts[0][:, None] * wgts[1][None, :])))
    if n == 3:
        s2 = vals[0][:, None] + vals[1][None, :]
        w2 = wgts[0][:, None] * wgts[1][None, :]
        total = 0.0
        for v3, w3 in zip(vals[2], wgts[2]):
            s = s2 + v3
            total += w3 * float(np.sum(s * s * w2))
        return total
    raise ValueError("brute_improvement handles n <= 3")


def subset_enumeration_improvement(fams, rule):
    """Poisson improvement by explicit enumeration of boundary-hit subsets."""
    import itertools

    m = math.floor(rule.threshold) + 1
    p = [float(sp_pmf(f, m)) for f in fams]
    r = [float(stats.poisson.sf(m, f.theta)) for f in fams]
    n = len(fams)
    total = 0.0
    for bits in itertools.product((0, 1), repeat=n):
        size = sum(bits)
        if size == 0:
            continue
        prob = math.prod(p[j] if b else r[j] for j, b in enumerate(bits))
        total += (size * m) ** 2 * prob
    return total


def expected_component(fam, rule):
    """E[component statistic] by direct sum or quadrature."""
    if fam.kind.is_discrete:
        xs, w = _axis_discrete(fam, rule)
    else:
        xs, w = _axis_continuous(fam, rule)
        w = w * sp_pdf(fam, xs)
    return float(np.sum(component_values(fam.kind, rule, xs) * w))


def expected_target(fam, rule):
    """E[indicator * scale] by direct sum or quadrature."""
    if fam.kind.is_discrete:
        xs, w = _axis_discrete(fam, rule)
    else:
        xs, w = _axis_continuous(fam, rule)
        w = w * sp_pdf(fam, xs)
    return scale_of(fam) * float(np.sum(indicator_values(rule, xs) * w))
