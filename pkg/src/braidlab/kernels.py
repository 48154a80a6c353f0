"""Kernel selection.

The compiled Cython core is used when it was built; otherwise, or when the
environment variable ``BRAIDLAB_PURE_PYTHON`` is set to a non-empty value other
than ``0``, the numpy fallback is used.  ``BACKEND`` names the active choice.
"""

import os

from braidlab import _kernels_py

_force_pure = os.environ.get("BRAIDLAB_PURE_PYTHON", "") not in ("", "0")

try:
    if _force_pure:
        raise ImportError("pure python forced")
    from braidlab import _kernels as _compiled
except ImportError:
    _compiled = None

if _compiled is not None:
    cyclo_matmul = _compiled.cyclo_matmul
    BACKEND = "cython"
else:
    cyclo_matmul = _kernels_py.cyclo_matmul
    BACKEND = "python"

fallback_matmul = _kernels_py.cyclo_matmul
compiled_matmul = None if _compiled is None else _compiled.cyclo_matmul
