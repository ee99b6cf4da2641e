"""Kernel backend selection.

The compiled extension (edgeflow._kernels) is preferred; the pure-Python twin
(edgeflow._kernels_py) is used when the extension is missing or when
EDGEFLOW_PURE is set to a non-empty value. Both expose the same surface and
produce bit-identical results.
"""

from __future__ import annotations

import os

if os.environ.get("EDGEFLOW_PURE"):
    from edgeflow import _kernels_py as kernels
else:
    try:
        from edgeflow import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        from edgeflow import _kernels_py as kernels  # type: ignore[no-redef]


def backend_name() -> str:
    return kernels.BACKEND


def load_backend(name: str):
    """Explicitly load one backend module ("cython" or "pure-python")."""
    if name == "cython":
        from edgeflow import _kernels

        return _kernels
    if name == "pure-python":
        from edgeflow import _kernels_py

        return _kernels_py
    raise ValueError(f"unknown kernel backend {name!r}")
