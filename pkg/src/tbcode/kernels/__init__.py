"""Hot GF(2) and bit-label kernels.

Two interchangeable backends implement the same functions: numba-compiled
loops (``_numba``) and vectorised numpy (``_numpy``).  Set
``TBCODE_BACKEND=numpy`` to force the fallback; by default numba is used
when it imports.
"""

import os

from . import _numpy

_requested = os.environ.get("TBCODE_BACKEND", "numba").strip().lower()
if _requested not in ("numba", "numpy"):
    raise ValueError(f"TBCODE_BACKEND must be 'numba' or 'numpy', got {_requested!r}")

impl = _numpy
BACKEND = "numpy"
if _requested == "numba":
    try:
        from . import _numba as impl

        BACKEND = "numba"
    except ImportError:  # pragma: no cover - numba is an optional accelerator
        pass

rref = impl.rref
matmul = impl.matmul
last_row_in_span = impl.last_row_in_span
min_rank_completion = impl.min_rank_completion
label_adjacency = impl.label_adjacency
count_odd_pairs = impl.count_odd_pairs

__all__ = [
    "BACKEND",
    "count_odd_pairs",
    "label_adjacency",
    "last_row_in_span",
    "matmul",
    "min_rank_completion",
    "rref",
]
