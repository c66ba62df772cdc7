"""Hot kernels with a numba path and a pure-NumPy fallback.

Set ``BATHENT_BACKEND=numpy`` to bypass numba; the default uses numba when it
imports cleanly.
"""
from __future__ import annotations

import importlib
import os
from types import ModuleType

ENV_FLAG = "BATHENT_BACKEND"
BACKENDS = ("numba", "numpy")


def _default() -> str:
    name = os.environ.get(ENV_FLAG, "").strip().lower() or "numba"
    if name not in BACKENDS:
        raise ValueError(f"{ENV_FLAG} must be one of {BACKENDS}, got {name!r}")
    return name


def load(name: str) -> ModuleType:
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}")
    return importlib.import_module(f"{__name__}.{name}_impl")


_active_name = _default()
try:
    _active = load(_active_name)
except ImportError:  # numba missing
    _active_name, _active = "numpy", load("numpy")


def active() -> ModuleType:
    return _active


def active_name() -> str:
    return _active_name


def use(name: str) -> None:
    """Switch the process-wide backend."""
    global _active, _active_name
    _active, _active_name = load(name), name
