"""Backend selection for the dynamic-programming table fills.

The compiled extension is used when it is importable; otherwise the
pure-Python module is. Set ``NMSA_KERNELS=python`` to force the fallback.
Both backends return flat integer tables indexed the same way, with ``-1``
marking infeasible entries.
"""

import os

from . import _pykernels

INFEASIBLE = -1
# compiled kernels use int64; larger values route to the Python backend
INT64_SAFE = 2**62

_forced = os.environ.get("NMSA_KERNELS", "").lower()

_compiled = None
if _forced != "python":
    try:
        from . import _ckernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

backend = _compiled if _compiled is not None else _pykernels
BACKEND_NAME = "cython" if _compiled is not None else "python"


def available_backends():
    out = {"python": _pykernels}
    if _compiled is not None:
        out["cython"] = _compiled
    return out


def pick(bound):
    """Backend able to hold values up to ``bound`` exactly."""
    if bound >= INT64_SAFE:
        return _pykernels
    return backend
