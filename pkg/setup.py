"""Builds the optional compiled kernel extension.

The package works without it: edgeflow.accel falls back to the pure-Python
kernels when the extension is missing (or when EDGEFLOW_PURE=1 is set).
"""

import sys

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("edgeflow._kernels", ["src/edgeflow/_kernels.pyx"])],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build-environment dependent
    sys.stderr.write(f"warning: building without compiled kernels ({exc})\n")

setup(ext_modules=ext_modules)
