"""Kernel selection.

The compiled ``_ckernel`` extension is used when it was built; otherwise
the pure-Python ``_pykernel`` is used.  Setting ``REVSTRUCT_PURE_PYTHON=1``
forces the fallback.
"""

from __future__ import annotations

import os
from array import array
from types import ModuleType

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

COMPILED_AVAILABLE = _ckernel is not None


def _select() -> ModuleType:
    if os.environ.get("REVSTRUCT_PURE_PYTHON") or _ckernel is None:
        return _pykernel
    return _ckernel


ACTIVE: ModuleType = _select()
NAME = "compiled" if ACTIVE is _ckernel else "python"


def get(which: str | None = None) -> ModuleType:
    """Return a kernel module: ``compiled``, ``python`` or the active default."""
    if which in (None, "auto"):
        return ACTIVE
    if which == "python":
        return _pykernel
    if which == "compiled":
        if _ckernel is None:
            raise RuntimeError("compiled kernel not built; run `pip install -e .`")
        return _ckernel
    raise ValueError(f"unknown kernel {which!r}")


def buffer(values, kernel: ModuleType) -> object:
    """Integer storage in the form the kernel expects."""
    if kernel is _pykernel:
        return list(values)
    return array("q", values)
