"""Repetition-aware compressed suffix tree over a Block Tree topology."""
from .bitvector import BitVector, ParenSeq
from .blocktree import BlockTree
from .btct import BTCT
from .csa import CsaIndex
from .cst import BtCst
from .suffix import Text

__all__ = ["BitVector", "ParenSeq", "BlockTree", "BTCT", "CsaIndex", "BtCst", "Text"]
__version__ = "0.1.0"
