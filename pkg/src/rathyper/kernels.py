"""Backend selection for hot kernels.

The compiled extension is used when it imports; setting ``RATHYPER_PURE=1``
forces the pure-Python implementation.
"""
from __future__ import annotations

import os

from . import _kernels_py

BACKEND = "python"
echelon_mod_p = _kernels_py.echelon_mod_p
DEFAULT_PRIME = _kernels_py.DEFAULT_PRIME

if os.environ.get("RATHYPER_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _fastkernels  # type: ignore[attr-defined]
    except ImportError:
        pass
    else:
        echelon_mod_p = _fastkernels.echelon_mod_p
        BACKEND = "cython"

__all__ = ["BACKEND", "DEFAULT_PRIME", "echelon_mod_p"]
