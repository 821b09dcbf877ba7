# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sampling kernels.

Mirrors ``_purepy`` operation for operation: same counter-based
generator, same inversion algorithms, same iteration caps. The integer
pipeline is bit-identical to the fallback; the continuous transforms can
differ from numpy's vectorized libm by an ulp.
"""

import math

import numpy as np

from libc.math cimport exp, floor, log, sqrt, ceil

ctypedef unsigned long long u64

cdef u64 _GOLDEN = 0x9E3779B97F4A7C15ULL
cdef u64 _MIX1 = 0xBF58476D1CE4E5B9ULL
cdef u64 _MIX2 = 0x94D049BB133111EBULL
cdef u64 _STREAM_SALT = 0xD1B54A32D192ED03ULL
cdef double _INV53 = 1.0 / 9007199254740992.0


cdef inline u64 _mix64(u64 z) nogil:
    z = (z ^ (z >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    return z ^ (z >> 31)


cdef inline double _u01(u64 key, u64 counter) nogil:
    cdef u64 z = _mix64(key + (counter + 1ULL) * _GOLDEN)
    return (<double>(z >> 11) + 0.5) * _INV53


cdef u64 _key_of(object seed, object stream):
    cdef u64 s = <u64>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef u64 t = <u64>(int(stream) & 0xFFFFFFFFFFFFFFFF)
    return _mix64(_mix64(s + _GOLDEN) + t * _STREAM_SALT)


def stream_key(seed, stream):
    """64-bit key identifying one stream of one seed."""
    return int(_key_of(seed, stream))


def uniforms(seed, stream, start, count):
    """Uniform(0, 1) draws at counters start .. start+count-1."""
    cdef u64 key = _key_of(seed, stream)
    cdef long long n = count
    cdef long long s0 = start
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef long long i
    with nogil:
        for i in range(n):
            o[i] = _u01(key, <u64>(s0 + i))
    return out


def poisson_cap(theta):
    """Hard upper bound for the sequential-search inversion."""
    return int(math.ceil(theta + 12.0 * math.sqrt(theta) + 48.0))


def sample_poisson(theta, seed, stream, start, count):
    """Poisson draws by sequential-search CDF inversion."""
    cdef u64 key = _key_of(seed, stream)
    cdef double th = theta
    cdef long long n = count
    cdef long long s0 = start
    cdef long long cap = poisson_cap(th)
    cdef double p0 = exp(-th)
    out = np.empty(n, dtype=np.int64)
    cdef long long[::1] o = out
    cdef long long i, x
    cdef double u, p, c
    with nogil:
        for i in range(n):
            u = _u01(key, <u64>(s0 + i))
            p = p0
            c = p0
            x = 0
            while u > c and x < cap:
                x += 1
                p *= th / x
                c += p
            o[i] = x
    return out


def sample_geometric(theta, seed, stream, start, count):
    """Geometric (number of failures, support {0,1,...}) by inversion."""
    cdef u64 key = _key_of(seed, stream)
    cdef double log_theta = log(<double>theta)
    cdef long long n = count
    cdef long long s0 = start
    out = np.empty(n, dtype=np.int64)
    cdef long long[::1] o = out
    cdef long long i
    with nogil:
        for i in range(n):
            o[i] = <long long>floor(log(_u01(key, <u64>(s0 + i))) / log_theta)
    return out


def sample_exponential(theta, seed, stream, start, count):
    cdef u64 key = _key_of(seed, stream)
    cdef double th = theta
    cdef long long n = count
    cdef long long s0 = start
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef long long i
    with nogil:
        for i in range(n):
            o[i] = -th * log(_u01(key, <u64>(s0 + i)))
    return out


def sample_uniform_scale(theta, seed, stream, start, count):
    cdef u64 key = _key_of(seed, stream)
    cdef double th = theta
    cdef long long n = count
    cdef long long s0 = start
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef long long i
    with nogil:
        for i in range(n):
            o[i] = th * _u01(key, <u64>(s0 + i))
    return out
