"""Kernel backend selection.

The compiled extension is used when it was built; otherwise, or when
``MULTICUT_PURE_PYTHON`` is set to a non-empty value, the pure-Python
implementations are used. Both expose ``unit_max_flow`` and ``first_multicut``.
"""

import os

from multicut import _pykernels

BACKEND = "python"
unit_max_flow = _pykernels.unit_max_flow
first_multicut = _pykernels.first_multicut

if not os.environ.get("MULTICUT_PURE_PYTHON"):
    try:
        from multicut import _kernels
    except ImportError:  # extension not built
        _kernels = None
    if _kernels is not None:
        BACKEND = "cython"
        unit_max_flow = _kernels.unit_max_flow
        first_multicut = _kernels.first_multicut


def backends():
    """Map of available backend name to kernel module."""
    found = {"python": _pykernels}
    try:
        from multicut import _kernels as compiled
    except ImportError:
        return found
    found["cython"] = compiled
    return found
