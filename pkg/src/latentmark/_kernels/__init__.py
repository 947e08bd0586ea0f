"""Kernel backend selection.

Imports the compiled extension when available, otherwise the pure-Python
fallback. Set LATENTMARK_FORCE_FALLBACK=1 to skip the extension (used by the
cross-backend tests and the benchmark).
"""

import os

from . import _pyfallback

if os.environ.get("LATENTMARK_FORCE_FALLBACK") == "1":
    _impl = _pyfallback
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pyfallback

BACKEND = _impl.BACKEND_NAME

fill_uint64 = _impl.fill_uint64
fill_uniform = _impl.fill_uniform
fill_normal = _impl.fill_normal
fisher_yates = _impl.fisher_yates
enhance_inplace = _impl.enhance_inplace
