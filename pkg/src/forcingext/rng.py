"""Seeded sampling of sets, conditions and pairs.

Reports must be reproducible by any implementation, so sampling uses a fully
specified generator rather than the interpreter's own:

* ``splitmix64``: state advances by ``0x9E3779B97F4A7C15`` mod 2**64 and each
  output is the standard splitmix64 finalizer of the new state;
* ``below(n)``: rejection sampling, discard outputs ``>= 2**64 - (2**64 % n)``
  and return ``r % n``.

Every sampler below consumes draws in a fixed, documented order.
"""

from __future__ import annotations

from .intervals import IntervalSet
from .poset import Condition
from .ultrafilter import PointUltrafilter

ALGORITHM = "splitmix64/rejection-v1"

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            r = self.next_u64()
            if r < limit:
                return r % n


def random_set(rng: SplitMix64, max_intervals: int = 4, max_exp: int = 6) -> IntervalSet:
    """Draw ``m`` then ``K``, then ``2m`` distinct grid points in ``[0, 2**K]``.

    Duplicate grid points are redrawn; ``m`` is capped so that enough
    distinct points exist.
    """
    m = rng.below(max_intervals + 1)
    k = 1 + rng.below(max_exp)
    m = min(m, ((1 << k) + 1) // 2)
    pts: set[int] = set()
    while len(pts) < 2 * m:
        pts.add(rng.below((1 << k) + 1))
    return IntervalSet.make(k, sorted(pts))


def random_set_outside(rng: SplitMix64, u: PointUltrafilter, **kw) -> IntervalSet:
    """A random set not in ``u``: a draw, complemented if it lands in ``u``."""
    s = random_set(rng, **kw)
    return ~s if s in u else s


def random_condition(rng: SplitMix64, u: PointUltrafilter, **kw) -> Condition:
    p0 = random_set_outside(rng, u, **kw)
    t = random_set(rng, **kw)
    # ~p0 is in u, so exactly one of ~p0 & t, ~p0 - t avoids u
    p1 = ~p0 & t if t not in u else ~p0 - t
    return Condition(p0, p1).validate(u)
