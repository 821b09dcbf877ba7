"""Kernel backend selection.

Prefers the compiled core when it was built, otherwise falls back to the
vectorized numpy implementation. Set THRESUM_KERNELS=python (or =cython)
to force a backend; forcing cython raises if the extension is missing.
"""

import os

_forced = os.environ.get("THRESUM_KERNELS", "").strip().lower()
if _forced not in ("", "cython", "python"):
    raise ImportError(f"THRESUM_KERNELS must be 'cython' or 'python', got {_forced!r}")

if _forced == "python":
    from . import _purepy as _impl

    BACKEND = "python"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "cython"
    except ImportError:
        if _forced == "cython":
            raise
        from . import _purepy as _impl

        BACKEND = "python"

stream_key = _impl.stream_key
uniforms = _impl.uniforms
sample_poisson = _impl.sample_poisson
sample_geometric = _impl.sample_geometric
sample_exponential = _impl.sample_exponential
sample_uniform_scale = _impl.sample_uniform_scale
poisson_cap = _impl.poisson_cap
