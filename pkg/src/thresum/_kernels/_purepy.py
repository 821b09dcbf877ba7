"""Vectorized numpy implementation of the sampling kernels.

This is the reference implementation; ``_core`` (Cython) mirrors it
operation for operation. The generator is counter based: the draw at
counter ``i`` of stream ``(seed, stream)`` is a pure function of those
three integers, so any partition of the counter range across threads or
processes reproduces the exact same values.
"""

import math

import numpy as np

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_STREAM_SALT = 0xD1B54A32D192ED03
# 2**-53; ((z >> 11) + 0.5) * _INV53 maps 64 random bits to (0, 1) open.
_INV53 = 1.0 / 9007199254740992.0


def _mix64(z: int) -> int:
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def stream_key(seed: int, stream: int) -> int:
    """64-bit key identifying one stream of one seed."""
    return _mix64(_mix64(seed + _GOLDEN) + stream * _STREAM_SALT)


def uniforms(seed: int, stream: int, start: int, count: int) -> np.ndarray:
    """Uniform(0, 1) draws at counters start .. start+count-1."""
    key = np.uint64(stream_key(seed, stream))
    idx = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    z = key + idx * np.uint64(_GOLDEN)
    z ^= z >> np.uint64(30)
    z *= np.uint64(_MIX1)
    z ^= z >> np.uint64(27)
    z *= np.uint64(_MIX2)
    z ^= z >> np.uint64(31)
    return ((z >> np.uint64(11)).astype(np.float64) + 0.5) * _INV53


def poisson_cap(theta: float) -> int:
    """Hard upper bound for the sequential-search inversion."""
    return int(math.ceil(theta + 12.0 * math.sqrt(theta) + 48.0))


def sample_poisson(theta: float, seed: int, stream: int, start: int, count: int) -> np.ndarray:
    """Poisson draws by sequential-search CDF inversion."""
    u = uniforms(seed, stream, start, count)
    cap = poisson_cap(theta)
    p0 = math.exp(-theta)
    x = np.zeros(count, dtype=np.int64)
    p = np.full(count, p0)
    c = p.copy()
    idx = np.nonzero(u > c)[0]
    k = 0
    while idx.size and k < cap:
        k += 1
        pk = p[idx] * (theta / k)
        ck = c[idx] + pk
        p[idx] = pk
        c[idx] = ck
        x[idx] = k
        idx = idx[u[idx] > ck]
    return x


def sample_geometric(theta: float, seed: int, stream: int, start: int, count: int) -> np.ndarray:
    """Geometric (number of failures, support {0,1,...}) by inversion."""
    u = uniforms(seed, stream, start, count)
    log_theta = math.log(theta)
    return np.floor(np.log(u) / log_theta).astype(np.int64)


def sample_exponential(theta: float, seed: int, stream: int, start: int, count: int) -> np.ndarray:
    u = uniforms(seed, stream, start, count)
    return -theta * np.log(u)


def sample_uniform_scale(theta: float, seed: int, stream: int, start: int, count: int) -> np.ndarray:
    return theta * uniforms(seed, stream, start, count)
