"""Build script for the optional compiled kernel core.

The compiled extension is an accelerator, not a requirement: when Cython
or a C compiler is missing the build degrades to a pure-python wheel and
the package selects the numpy kernels at import time.
"""

import warnings

from setuptools import setup
from setuptools.command.build_ext import build_ext


def _extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        warnings.warn("Cython unavailable; building without the compiled kernel core")
        return []
    from setuptools import Extension

    ext = Extension(
        "thresum._kernels._core",
        ["src/thresum/_kernels/_core.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


class optional_build_ext(build_ext):
    """build_ext that treats compiler failure as a soft error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"compiled kernels skipped ({exc}); numpy fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name} ({exc}); numpy fallback will be used")


setup(ext_modules=_extensions(), cmdclass={"build_ext": optional_build_ext})
