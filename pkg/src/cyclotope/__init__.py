"""Permutation polytopes of cyclic groups.

The polytope of a cyclic permutation group with cycle type
``(l_1, ..., l_t)`` is the convex hull of the permutation matrices of its
elements. This package works with its projection onto the first rows of
the cycle blocks, where the k-th vertex has a single 1 at offset
``k mod l_i`` in block ``i``.
"""

from .errors import InvalidInputError, ParseError, ResourceLimitError
from .group import CycleType

__all__ = ["CycleType", "InvalidInputError", "ParseError", "ResourceLimitError"]
__version__ = "0.1.0"
