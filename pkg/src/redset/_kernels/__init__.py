"""Hot kernels: compiled extension when built, pure-numpy twin otherwise.

Set REDSET_PURE_PYTHON=1 to force the fallback (used by the benchmark and by
the backend-equivalence tests).
"""

import os

from . import _core_py

if os.environ.get("REDSET_PURE_PYTHON"):
    _impl = _core_py
    BACKEND = "python"
else:
    try:
        from . import _core as _impl
        BACKEND = "cython"
    except ImportError:
        _impl = _core_py
        BACKEND = "python"

apply_two_site = _impl.apply_two_site
chain_matvec = _impl.chain_matvec
transfer_apply = _impl.transfer_apply


def get_backend():
    """Name of the selected kernel backend: 'cython' or 'python'."""
    return BACKEND
