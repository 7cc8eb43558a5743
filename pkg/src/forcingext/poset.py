"""Conditions of the forcing poset P(A, u).

A condition is a pair ``(p0, p1)`` of disjoint sets, neither in ``u``.
``p`` is stronger than ``q`` (``leq(p, q)``) when it extends both
coordinates.  The generic set is the union of the first coordinates along a
filter; second coordinates record points promised to stay out of it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvalidCondition, PreconditionError
from .intervals import EMPTY, IntervalSet, format_set, parse_set
from .ultrafilter import PointUltrafilter

__all__ = ["Condition", "DerivedParts", "ROOT", "leq", "star_extend", "derived_parts"]


@dataclass(frozen=True)
class Condition:
    p0: IntervalSet
    p1: IntervalSet

    def __post_init__(self):
        if not self.p0.isdisjoint(self.p1):
            raise InvalidCondition(f"coordinates overlap: {self.p0} and {self.p1}")

    def validate(self, u: PointUltrafilter) -> Condition:
        """Raise unless both coordinates avoid ``u``; returns self for chaining."""
        if self.p0 in u:
            raise InvalidCondition(f"p0 = {self.p0} is in the ultrafilter")
        if self.p1 in u:
            raise InvalidCondition(f"p1 = {self.p1} is in the ultrafilter")
        return self

    def is_valid(self, u: PointUltrafilter) -> bool:
        return self.p0 not in u and self.p1 not in u and self.p0.isdisjoint(self.p1)

    @property
    def support(self) -> IntervalSet:
        return self.p0 | self.p1

    def to_json(self) -> dict:
        return {"p0": format_set(self.p0), "p1": format_set(self.p1)}

    @classmethod
    def from_json(cls, obj: dict) -> Condition:
        return cls(parse_set(obj["p0"]), parse_set(obj["p1"]))

    def __str__(self) -> str:
        return f"({self.p0}, {self.p1})"


ROOT = Condition(EMPTY, EMPTY)


def leq(p: Condition, q: Condition) -> bool:
    """True when ``p`` is stronger than (extends) ``q``."""
    return q.p0 <= p.p0 and q.p1 <= p.p1


def star_extend(p: Condition, x: IntervalSet, u: PointUltrafilter) -> Condition:
    """Strengthen ``p`` so that its support covers ``x``.

    Points of ``x`` not already in ``p1`` join ``p0``; ``p1`` takes what is
    left.  Needs ``x`` outside ``u``.
    """
    if x in u:
        raise PreconditionError(f"cannot cover {x}: it is in the ultrafilter")
    q0 = p.p0 | (x - p.p1)
    q1 = p.p1 | (x - q0)
    return Condition(q0, q1).validate(u)


@dataclass(frozen=True)
class DerivedParts:
    """The sets a density argument reads off a condition for a pair ``(e, f)``.

    ``p_star`` is where the glued element ``(g & e) | (f - g)`` is already
    determined to be true; ``a_p`` is the part the condition leaves open.
    """

    p_star: IntervalSet
    a_p: IntervalSet
    e_p: IntervalSet
    f_p: IntervalSet


def derived_parts(p: Condition, e: IntervalSet, f: IntervalSet) -> DerivedParts:
    a_p = ~(p.p0 | p.p1)
    return DerivedParts(
        p_star=(p.p0 & e) | (p.p1 & f),
        a_p=a_p,
        e_p=a_p & e,
        f_p=a_p & f,
    )
