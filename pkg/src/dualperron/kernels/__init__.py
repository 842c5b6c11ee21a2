"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba path is used when numba imports cleanly and the environment
variable ``DUALPERRON_DISABLE_NUMBA`` is unset or falsy. Both backends are
always reachable as ``kernels.numpy_backend`` and ``kernels.numba_backend``
(the latter is None without numba) so tests and benchmarks can compare them.
"""

import os

from . import _numpy as numpy_backend
from . import status

ENV_FLAG = "DUALPERRON_DISABLE_NUMBA"


def _flag_set(value):
    return value.strip().lower() not in ("", "0", "false", "no", "off")


try:
    from . import _numba as numba_backend
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba_backend = None

USE_NUMBA = numba_backend is not None and not _flag_set(os.environ.get(ENV_FLAG, ""))
backend = numba_backend if USE_NUMBA else numpy_backend
BACKEND_NAME = "numba" if USE_NUMBA else "numpy"

dual_matmul = backend.dual_matmul
dual_matvec = backend.dual_matvec
gauss_solve = backend.gauss_solve
primitive_witness = backend.primitive_witness
power_iteration = backend.power_iteration
collatz_loop = backend.collatz_loop
decay_loop = backend.decay_loop
lemma_grid = backend.lemma_grid

__all__ = [
    "ENV_FLAG",
    "USE_NUMBA",
    "BACKEND_NAME",
    "numpy_backend",
    "numba_backend",
    "status",
    "dual_matmul",
    "dual_matvec",
    "gauss_solve",
    "primitive_witness",
    "power_iteration",
    "collatz_loop",
    "decay_loop",
    "lemma_grid",
]
