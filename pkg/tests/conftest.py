"""Shared strategies and independent reference implementations.

The references here deliberately avoid the package's own arithmetic: sets are
modelled as bitmasks over a fixed dyadic grid, and points are located by
exact ``Fraction`` comparisons against the interval list.
"""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from forcingext.intervals import IntervalSet

GRID = 8  # every sampled set lives on the 2**-8 grid or coarser


def ref_encode(n: int) -> Fraction:
    """Dyadics in order 0, 1/2, 1/4, 3/4, 1/8, 3/8, ... by direct enumeration."""
    if n == 0:
        return Fraction(0)
    level = 1
    seen = 1
    while True:
        count = 1 << (level - 1)
        if n < seen + count:
            t = n - seen
            return Fraction(2 * t + 1, 1 << level)
        seen += count
        level += 1


def ref_member(a: IntervalSet, q: Fraction) -> bool:
    return any(l.to_fraction() <= q < r.to_fraction() for l, r in a.intervals)


def to_mask(a: IntervalSet, grid: int = GRID) -> int:
    """Bitmask of the grid cells covered by ``a`` (``a`` must be on the grid)."""
    assert a.exp <= grid
    mask = 0
    shift = grid - a.exp
    b = a.bounds
    for i in range(0, len(b), 2):
        lo, hi = b[i] << shift, b[i + 1] << shift
        mask |= ((1 << hi) - 1) ^ ((1 << lo) - 1)
    return mask


def from_mask(mask: int, grid: int = GRID) -> IntervalSet:
    pairs = []
    n = 1 << grid
    i = 0
    while i < n:
        if mask >> i & 1:
            j = i
            while j < n and mask >> j & 1:
                j += 1
            pairs.append((Fraction(i, n), Fraction(j, n)))
            i = j
        else:
            i += 1
    return IntervalSet.from_intervals(pairs)


FULL_MASK = (1 << (1 << GRID)) - 1


@st.composite
def interval_sets(draw, max_exp: int = 6, max_intervals: int = 4):
    k = draw(st.integers(0, max_exp))
    pts = draw(st.lists(st.integers(0, 1 << k), max_size=2 * max_intervals, unique=True))
    pts.sort()
    if len(pts) % 2:
        pts.pop()
    return IntervalSet.make(k, pts)


def S(text: str) -> IntervalSet:
    from forcingext.intervals import parse_set

    return parse_set(text)


# -- acceptance reporting -----------------------------------------------------

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> bool:
    ACCEPTANCE[criterion] = (ok, detail)
    return ok


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
