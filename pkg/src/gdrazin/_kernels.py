"""Select the kernel backend at import time.

Set ``GDRAZIN_PURE_PYTHON=1`` to force the pure-Python kernels.
"""

from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("GDRAZIN_PURE_PYTHON"):
    _impl = _pykernels
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "gmp"
    except ImportError:
        _impl = _pykernels
        BACKEND = "python"

matmul = _impl.matmul
rref = _impl.rref
