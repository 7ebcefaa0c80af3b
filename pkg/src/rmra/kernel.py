"""Backend selection for the candidate scanner.

Prefers the compiled extension, falls back to the pure-Python scanner.
Set RMRA_KERNEL=py or RMRA_KERNEL=c to force a backend (forcing ``c`` raises
if the extension was not built).
"""

from __future__ import annotations

import os

_forced = os.environ.get("RMRA_KERNEL", "").lower()
if _forced == "py":
    from . import _kernel_py as _impl

    BACKEND = "python"
elif _forced == "c":
    from . import _kernel_c as _impl  # type: ignore[no-redef]

    BACKEND = "c"
else:
    try:
        from . import _kernel_c as _impl  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        from . import _kernel_py as _impl  # type: ignore[no-redef]

        BACKEND = "python"

scan = _impl.scan


def available_backends() -> dict[str, object]:
    """Importable scan callables keyed by backend name."""
    from . import _kernel_py

    backends: dict[str, object] = {"python": _kernel_py.scan}
    try:
        from . import _kernel_c

        backends["c"] = _kernel_c.scan
    except ImportError:
        pass
    return backends
