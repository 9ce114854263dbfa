"""Keyphrase extraction benchmark toolkit.

Five extraction models (TF*IDF, Kea, TopicRank, KP-Miner, WINGNUS), a
four-level document preprocessing pipeline and SemEval-2010-style
evaluation, backed by a C++ core.
"""

from kpbench._core import *  # noqa: F401,F403
from kpbench._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
