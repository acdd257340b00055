"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise the
pure-Python ``_fallback`` module takes over. Setting ``CYCLOREP_PURE=1`` in
the environment forces the fallback.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _fallback

_compiled: ModuleType | None
try:
    from . import _kernels as _compiled  # type: ignore[attr-defined,no-redef]
except ImportError:  # pragma: no cover - depends on the build
    _compiled = None

BACKENDS: dict[str, ModuleType] = {"python": _fallback}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

if _compiled is not None and os.environ.get("CYCLOREP_PURE", "") not in ("1", "true", "yes"):
    backend: ModuleType = _compiled
    BACKEND_NAME = "compiled"
else:
    backend = _fallback
    BACKEND_NAME = "python"


def get_backend(name: str | None = None) -> ModuleType:
    if name is None:
        return backend
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} is not available; have {sorted(BACKENDS)}") from None
