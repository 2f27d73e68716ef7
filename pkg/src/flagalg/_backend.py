"""Backend selection: compiled kernels when importable, pure Python otherwise.

Set FLAGALG_BACKEND=python to force the fallback even when the extension
is built (useful for benchmarking and debugging).
"""

from __future__ import annotations

import os

from . import _kernels_py

_kernels = None
if os.environ.get("FLAGALG_BACKEND", "").lower() != "python":
    try:
        from . import _kernels  # type: ignore[no-redef]
    except ImportError:
        _kernels = None

HAVE_EXT = _kernels is not None


def backend_name() -> str:
    return "cython" if HAVE_EXT else "python"


def extension_module():
    """The compiled module, or None when running pure."""
    return _kernels


pure = _kernels_py
