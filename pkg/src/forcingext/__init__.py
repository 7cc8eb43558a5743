"""Exact one-step forcing extensions of a countable atomless Boolean algebra.

The ground algebra is the algebra of finite unions of half-open dyadic
intervals of [0, 1), read as subsets of omega through a fixed enumeration of
the dyadic rationals.  A generic set is built lazily along a descending chain
of forcing conditions, and every claim about the extension comes with finite
witnesses that can be re-checked independently.
"""

from .dyadic import Dyadic, decode, encode
from .errors import (
    ForcingError,
    InvalidCondition,
    OracleError,
    ParseError,
    PreconditionError,
    SessionError,
    TowerAborted,
)
from .intervals import EMPTY, FULL, IntervalSet, format_set, parse_set
from .ultrafilter import PointUltrafilter, atomless_split, in_ultrafilter

__version__ = "0.1.0"
