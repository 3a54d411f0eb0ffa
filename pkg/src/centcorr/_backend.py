"""Kernel backend selection.

The compiled extension is used when it imports; ``CENTCORR_PURE_PYTHON=1``
forces the pure-Python kernels (useful for parity checks and benchmarks).
"""

import os

from . import _pykernels

python_kernels = _pykernels

try:
    from . import _ckernels as compiled_kernels
except ImportError:  # extension not built
    compiled_kernels = None

if compiled_kernels is not None and not os.environ.get("CENTCORR_PURE_PYTHON"):
    kernels = compiled_kernels
    BACKEND = "cython"
else:
    kernels = _pykernels
    BACKEND = "python"
