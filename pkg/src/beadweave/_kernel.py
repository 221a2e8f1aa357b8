"""Pick the canonical-labelling kernel at import time.

The compiled ``_canon`` extension is used when it was built; otherwise
the pure-Python ``_canon_py`` module.  Setting ``BEADWEAVE_PURE=1`` in the
environment forces the pure-Python kernel.
"""

from __future__ import annotations

import os

from . import _canon_py

python_search = _canon_py.canonical_search

try:
    from ._canon import canonical_search as compiled_search
except ImportError:  # extension not built
    compiled_search = None

if compiled_search is not None and os.environ.get("BEADWEAVE_PURE", "") != "1":
    canonical_search = compiled_search
    BACKEND = "cython"
else:
    canonical_search = python_search
    BACKEND = "python"

__all__ = ["canonical_search", "python_search", "compiled_search", "BACKEND"]
