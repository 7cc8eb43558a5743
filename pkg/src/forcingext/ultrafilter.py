"""Nonprincipal ultrafilters on the interval algebra given by a real point.

A set belongs to the ultrafilter at ``p`` exactly when ``p`` lies in the
union of its real intervals.  Taking ``p`` rational but not dyadic keeps it
off every interval endpoint, so the filter is an ultrafilter, contains no
minimal member, and membership is decided by one comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .intervals import IntervalSet

__all__ = ["PointUltrafilter", "in_ultrafilter", "atomless_split", "parse_point"]


def _is_dyadic(q: Fraction) -> bool:
    d = q.denominator
    return d & (d - 1) == 0


@dataclass(frozen=True)
class PointUltrafilter:
    point: Fraction = Fraction(1, 3)

    def __post_init__(self):
        q = Fraction(self.point)
        object.__setattr__(self, "point", q)
        if not 0 < q < 1:
            raise ValueError(f"ultrafilter point {q} must lie strictly inside (0, 1)")
        if _is_dyadic(q):
            raise ValueError(f"ultrafilter point {q} is dyadic; it would sit on a cell boundary")

    def __contains__(self, a: IntervalSet) -> bool:
        return a.contains_fraction(self.point)

    def cell(self, rank: int) -> IntervalSet:
        """The rank-``rank`` dyadic cell that contains the point."""
        q = self.point
        return IntervalSet.cell((q.numerator << rank) // q.denominator, rank)

    def shrink(self, a: IntervalSet) -> IntervalSet:
        """A member strictly inside ``a``; witnesses that ``u`` has no least element."""
        if a not in self:
            raise PreconditionError(f"{a} is not in the ultrafilter")
        comp = a.component(self.point)
        rank = 1
        while True:
            c = self.cell(rank)
            if c < comp:
                return a - (comp - c)
            rank += 1


def parse_point(text: str) -> Fraction:
    """Parse ``"num/den"`` (or any Fraction literal) as an ultrafilter point."""
    return Fraction(text.strip())


def in_ultrafilter(a: IntervalSet, u: PointUltrafilter) -> bool:
    return a in u


def atomless_split(c: IntervalSet, u: PointUltrafilter) -> tuple[IntervalSet, IntervalSet]:
    """Two disjoint nonempty pieces of ``c`` that both avoid the ultrafilter.

    Find the least rank ``k >= 1`` at which both dyadic neighbours of the
    point's rank-``k`` cell exist and sit inside the component of ``c`` that
    holds the point; return (left neighbour, right neighbour).
    """
    if c not in u:
        raise PreconditionError(f"atomless_split needs a member of the ultrafilter, got {c}")
    comp = c.component(u.point)
    lo, hi = comp.bounds
    kc = comp.exp
    q = u.point
    k = 1
    while True:
        j = (q.numerator << k) // q.denominator
        if j >= 1 and j + 2 <= (1 << k):
            # compare at the finer of the two grids
            m = max(k, kc)
            left = (j - 1) << (m - k)
            right = (j + 2) << (m - k)
            if left >= lo << (m - kc) and right <= hi << (m - kc):
                return IntervalSet.cell(j - 1, k), IntervalSet.cell(j + 1, k)
        k += 1
