"""Kernel backend selection.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``PARTLOGIC_PURE_PYTHON`` is set to a non-empty value,
the pure-Python module is used. ``BACKEND`` names the active choice.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("PARTLOGIC_PURE_PYTHON"):
    _impl = _kernels_py
else:
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _kernels_py

BACKEND = "python" if _impl is _kernels_py else "cython"

ARBITRARY = _kernels_py.ARBITRARY
INJECTIVE = _kernels_py.INJECTIVE
SURJECTIVE = _kernels_py.SURJECTIVE

rgs_array = _impl.rgs_array
refinement_matrix = _impl.refinement_matrix
count_orbit_representatives = _impl.count_orbit_representatives


def available_backends() -> dict:
    """Map of backend name to kernel module, for benchmarks and tests."""
    found = {"python": _kernels_py}
    try:
        from . import _kernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        found["cython"] = _kernels
    return found
