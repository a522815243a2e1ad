"""Kernel backend selection.

The compiled extension is preferred when importable; the numpy fallback keeps
the package fully functional from a plain source checkout. Set
``ORDBOOST_KERNEL=ref`` to force the fallback (used by the benchmark and by
tests that compare the two).
"""

from __future__ import annotations

import os

from . import _ref

if os.environ.get("ORDBOOST_KERNEL", "").lower() == "ref":
    _impl = _ref
else:
    try:
        from . import _fast as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _ref

BACKEND: str = _impl.BACKEND
support_words = _impl.support_words
masked_stats = _impl.masked_stats
eval_candidates = _impl.eval_candidates

__all__ = ["BACKEND", "support_words", "masked_stats", "eval_candidates"]
