"""Skein kernel selection.

The compiled extension is used when built; the pure-Python twin otherwise.
Override per call with kernel="pure"/"compiled" or globally with the
CONWAYLAB_KERNEL environment variable.
"""

from __future__ import annotations

import os
from types import ModuleType

from conwaylab._kernel import pure

try:
    from conwaylab._kernel import _speedups
except ImportError:  # extension not built; the pure kernel covers everything
    _speedups = None

__all__ = ["get_kernel", "available_kernels", "default_kernel_name"]

_ALIASES = {
    "pure": "pure",
    "python": "pure",
    "compiled": "compiled",
    "c": "compiled",
    "speedups": "compiled",
}


def available_kernels() -> tuple[str, ...]:
    return ("compiled", "pure") if _speedups is not None else ("pure",)


def get_kernel(name: str | None = None) -> ModuleType:
    """Resolve a kernel name ('pure', 'compiled', 'auto'/None) to a module."""
    if name in (None, "auto", ""):
        name = os.environ.get("CONWAYLAB_KERNEL") or "auto"
    if name in ("auto", ""):
        return _speedups if _speedups is not None else pure
    canon = _ALIASES.get(str(name).lower())
    if canon == "pure":
        return pure
    if canon == "compiled":
        if _speedups is None:
            raise ValueError("compiled kernel requested but the extension is not built")
        return _speedups
    raise ValueError(f"unknown kernel {name!r} (expected 'pure', 'compiled' or 'auto')")


def default_kernel_name() -> str:
    return "compiled" if get_kernel() is not pure else "pure"
