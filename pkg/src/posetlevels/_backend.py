"""Kernel backend selection.

The compiled ``_ckernels`` module is used when it imports; otherwise the
pure-Python ``_pykernels`` take over.  Setting ``POSETLEVELS_PURE_PYTHON=1``
forces the fallback.
"""
from __future__ import annotations

import os
from types import ModuleType

from posetlevels import _pykernels


def _load_compiled() -> ModuleType | None:
    try:
        from posetlevels import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = None if os.environ.get("POSETLEVELS_PURE_PYTHON") == "1" else _load_compiled()

kernels: ModuleType = _compiled if _compiled is not None else _pykernels
BACKEND = "cython" if _compiled is not None else "python"


def get_kernels(name: str) -> ModuleType:
    """Return a specific backend by name (``"cython"`` or ``"python"``)."""
    if name == "python":
        return _pykernels
    if name == "cython":
        mod = _load_compiled()
        if mod is None:
            raise ImportError("compiled kernels are not built; run `pip install -e .`")
        return mod
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> list[str]:
    return ["python"] + (["cython"] if _load_compiled() is not None else [])
