"""Select the compiled kernels when available, else the numpy fallback.

Set SIMPLECURRENT_PURE=1 to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("SIMPLECURRENT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        pass

bichar_table = _impl.bichar_table
form_defect = _impl.form_defect
pentagon_defect = _impl.pentagon_defect
hexagon_defect = _impl.hexagon_defect

__all__ = ["BACKEND", "bichar_table", "form_defect", "pentagon_defect", "hexagon_defect"]
