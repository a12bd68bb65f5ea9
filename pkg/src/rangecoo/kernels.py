"""Kernel lane selection: compiled extension if available, else pure Python.

Set RANGECOO_PURE=1 to force the pure-Python lane (used by the benchmark
and the parity tests).
"""

from __future__ import annotations

import os

if os.environ.get("RANGECOO_PURE") == "1":
    from rangecoo import _kernels_py as _impl

    COMPILED = False
else:
    try:
        from rangecoo import _speedups as _impl  # type: ignore[attr-defined]

        COMPILED = True
    except ImportError:
        from rangecoo import _kernels_py as _impl

        COMPILED = False

kasai_lcp = _impl.kasai_lcp
suffix_tree_arrays = _impl.suffix_tree_arrays
heavy_path_assign = _impl.heavy_path_assign
extract_segments = _impl.extract_segments
segtree_assign = _impl.segtree_assign
