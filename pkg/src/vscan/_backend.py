"""Pick the compiled kernels when importable, else the NumPy fallback.

Set ``VSCAN_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _fallback

if os.environ.get("VSCAN_PURE_PYTHON", "") not in ("", "0"):
    kernels = _fallback
else:
    try:
        from . import _kernels as kernels
    except ImportError:
        kernels = _fallback

#: "compiled" or "python"
BACKEND = "python" if kernels is _fallback else "compiled"

hsv_histogram = kernels.hsv_histogram
expand_clusters = kernels.expand_clusters
