"""Kernel selection: compiled extension when available, pure Python otherwise.

Set REFSPECT_PURE=1 to force the Python kernel (useful for benchmarking and
for verifying that both kernels agree).
"""

from __future__ import annotations

import os

if os.environ.get("REFSPECT_PURE") == "1":
    from . import _fallback as kernel

    BACKEND = "python"
else:
    try:
        from . import _speedups as kernel  # type: ignore[no-redef]

        BACKEND = "c"
    except ImportError:
        from . import _fallback as kernel  # type: ignore[no-redef]

        BACKEND = "python"

levenshtein = kernel.levenshtein
similarity = kernel.similarity
link_limit = kernel.link_limit
pairwise_links = kernel.pairwise_links

__all__ = ["BACKEND", "levenshtein", "similarity", "link_limit", "pairwise_links"]
