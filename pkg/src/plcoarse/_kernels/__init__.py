"""Kernel backend selection.

``_impl`` is the pure-Python reference; the build may produce a compiled
twin ``_impl_c`` from the same source.  The compiled backend is used when
present unless ``PLCOARSE_KERNELS`` forces a choice (``c``, ``py`` or
``auto``).
"""

import os

from . import _impl as _py_impl


def _load_compiled():
    try:
        from . import _impl_c
    except ImportError:
        return None
    # the twin .py left behind by a failed extension build is not compiled
    fname = getattr(_impl_c, "__file__", "") or ""
    if fname.endswith(".py"):
        return None
    return _impl_c


_choice = os.environ.get("PLCOARSE_KERNELS", "auto").lower()
if _choice not in ("auto", "c", "py"):
    raise RuntimeError(f"PLCOARSE_KERNELS must be auto, c or py, not {_choice!r}")

_c_impl = None if _choice == "py" else _load_compiled()
if _choice == "c" and _c_impl is None:
    raise RuntimeError("PLCOARSE_KERNELS=c but the compiled kernels are not built")

active = _c_impl if _c_impl is not None else _py_impl
BACKEND = "c" if _c_impl is not None else "py"


def get_backend(name):
    """Return a kernel module by name ('py' or 'c'), for benchmarks/tests."""
    if name == "py":
        return _py_impl
    if name == "c":
        mod = _load_compiled()
        if mod is None:
            raise RuntimeError("compiled kernels are not built")
        return mod
    raise ValueError(f"unknown backend {name!r}")
