"""Finite unions of half-open dyadic intervals of [0, 1).

An :class:`IntervalSet` stands for the subset of omega whose encoded points
(see :mod:`forcingext.dyadic`) fall inside it.  These sets form a countable
atomless Boolean algebra, closed under every operation below.

Internally a set is stored as a common exponent ``K`` and a strictly
increasing tuple of integer boundaries ``b0 < b1 < ...`` of even length; the
set is ``[b0, b1) u [b2, b3) u ...`` scaled by ``2**-K``.  The exponent is
kept minimal, so equal sets always have identical representations and
dataclass equality is set equality.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .dyadic import Dyadic, decode, encode
from .errors import ParseError

__all__ = [
    "IntervalSet",
    "EMPTY",
    "FULL",
    "union",
    "intersect",
    "complement",
    "difference",
    "symdiff",
    "is_subset",
    "is_empty",
    "contains_point",
    "parse_set",
    "format_set",
]


def _reduce(exp: int, bounds: list[int] | tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    if not bounds:
        return 0, ()
    acc = 0
    for b in bounds:
        acc |= b
    # acc == 0 cannot happen: bounds are strictly increasing and even in length
    shift = min((acc & -acc).bit_length() - 1, exp)
    if shift:
        return exp - shift, tuple(b >> shift for b in bounds)
    return exp, tuple(bounds)


@dataclass(frozen=True)
class IntervalSet:
    exp: int
    bounds: tuple[int, ...]

    def __post_init__(self):
        b = self.bounds
        if len(b) % 2:
            raise ValueError("odd number of boundaries")
        top = 1 << self.exp
        prev = -1
        for x in b:
            if x <= prev:
                raise ValueError("boundaries must be strictly increasing")
            prev = x
        if b and (b[0] < 0 or b[-1] > top):
            raise ValueError("interval outside [0, 1)")
        if _reduce(self.exp, b) != (self.exp, b):
            raise ValueError("representation is not reduced; use IntervalSet.make")

    # -- construction -------------------------------------------------------

    @classmethod
    def make(cls, exp: int, bounds: Iterable[int]) -> IntervalSet:
        """Build from strictly increasing boundaries at any exponent."""
        exp, bounds = _reduce(exp, list(bounds))
        obj = object.__new__(cls)
        object.__setattr__(obj, "exp", exp)
        object.__setattr__(obj, "bounds", bounds)
        return obj

    @classmethod
    def checked(cls, exp: int, bounds: Iterable[int]) -> IntervalSet:
        """Like :meth:`make` but validates ordering and range first."""
        exp, bounds = _reduce(exp, list(bounds))
        return cls(exp, bounds)

    @classmethod
    def from_intervals(cls, pairs: Iterable[tuple]) -> IntervalSet:
        """Union of arbitrary ``[l, r)`` pairs (Fractions, Dyadics or ints).

        Pairs may overlap, touch or come in any order; empty pairs are
        dropped.
        """
        out = EMPTY
        for l, r in pairs:
            out = out | cls.interval(l, r)
        return out

    @classmethod
    def interval(cls, l, r) -> IntervalSet:
        dl, dr = _as_dyadic(l), _as_dyadic(r)
        if not dl < dr:
            return EMPTY
        k = max(dl.exponent, dr.exponent)
        return cls.make(k, (dl.scaled(k), dr.scaled(k)))

    @classmethod
    def cell(cls, index: int, rank: int) -> IntervalSet:
        """The rank-``rank`` dyadic cell ``[index/2**rank, (index+1)/2**rank)``."""
        if not 0 <= index < (1 << rank):
            raise ValueError(f"no cell {index} at rank {rank}")
        return cls.make(rank, (index, index + 1))

    # -- views --------------------------------------------------------------

    @property
    def intervals(self) -> list[tuple[Dyadic, Dyadic]]:
        b, k = self.bounds, self.exp
        return [(Dyadic.of(b[i], k), Dyadic.of(b[i + 1], k)) for i in range(0, len(b), 2)]

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self) -> int:
        return len(self.bounds) // 2

    def __bool__(self) -> bool:
        return bool(self.bounds)

    def __str__(self) -> str:
        return format_set(self)

    def __repr__(self) -> str:
        return f"IntervalSet({format_set(self)!r})"

    # -- Boolean operations -------------------------------------------------

    def __or__(self, other: IntervalSet) -> IntervalSet:
        return _combine(self, other, _OR)

    def __and__(self, other: IntervalSet) -> IntervalSet:
        return _combine(self, other, _AND)

    def __sub__(self, other: IntervalSet) -> IntervalSet:
        return _combine(self, other, _SUB)

    def __xor__(self, other: IntervalSet) -> IntervalSet:
        return _combine(self, other, _XOR)

    def __invert__(self) -> IntervalSet:
        b = list(self.bounds)
        top = 1 << self.exp
        if b and b[0] == 0:
            del b[0]
        else:
            b.insert(0, 0)
        if b and b[-1] == top:
            b.pop()
        else:
            b.append(top)
        return IntervalSet.make(self.exp, b)

    def __le__(self, other: IntervalSet) -> bool:
        return not (self - other)

    def __ge__(self, other: IntervalSet) -> bool:
        return other <= self

    def __lt__(self, other: IntervalSet) -> bool:
        return self != other and self <= other

    def isdisjoint(self, other: IntervalSet) -> bool:
        return not (self & other)

    # -- points -------------------------------------------------------------

    def __contains__(self, n: int) -> bool:
        # inlined encode(n): hot path of every prefix scan
        if n == 0:
            return bool(self.bounds) and self.bounds[0] == 0
        level = n.bit_length()
        num = 2 * (n - (1 << (level - 1))) + 1
        k = self.exp
        if level <= k:
            v = num << (k - level)
        else:
            v = num >> (level - k)
        return bisect_right(self.bounds, v) % 2 == 1

    def contains_dyadic(self, d: Dyadic) -> bool:
        k = self.exp
        if d.exponent <= k:
            v = d.numerator << (k - d.exponent)
        else:
            # d lies strictly between two grid points at exponent k
            v = d.numerator >> (d.exponent - k)
        return bisect_right(self.bounds, v) % 2 == 1

    def contains_fraction(self, q: Fraction) -> bool:
        """Membership of an arbitrary rational in the union of real intervals."""
        # floor(q * 2^K) lands in the same boundary slot as q itself
        v = (q.numerator << self.exp) // q.denominator
        return bisect_right(self.bounds, v) % 2 == 1

    def component(self, q: Fraction) -> IntervalSet:
        """The maximal interval of this set containing the real point ``q``."""
        v = (q.numerator << self.exp) // q.denominator
        i = bisect_right(self.bounds, v)
        if i % 2 == 0:
            raise ValueError(f"{q} is not in {self}")
        return IntervalSet.make(self.exp, self.bounds[i - 1 : i + 1])

    def component_of_point(self, n: int) -> IntervalSet:
        d = encode(n)
        if not self.contains_dyadic(d):
            raise ValueError(f"point {n} is not in {self}")
        return self.component(d.to_fraction())

    def first_point(self) -> int | None:
        """The least natural number whose encoded point lies in this set."""
        best = None
        b, k = self.bounds, self.exp
        for i in range(0, len(b), 2):
            n = _least_index_in(b[i], b[i + 1], k)
            if best is None or n < best:
                best = n
        return best

    def points(self, limit: int):
        """Members of this set among ``0 .. limit`` in increasing order."""
        return (n for n in range(limit + 1) if n in self)


def _least_index_in(lo: int, hi: int, k: int) -> int:
    # least n with lo/2^k <= enc(n) < hi/2^k: smallest level first, leftmost within it
    if lo == 0:
        return 0
    for level in range(1, k + 1):
        shift = k - level
        m = -(-lo // (1 << shift))  # ceil(lo / 2^shift): first grid point at this level
        if m % 2 == 0:
            m += 1
        if m << shift < hi:
            return decode(Dyadic(m, level))
    raise AssertionError("unreachable: every nonempty interval has a grid point")


def _as_dyadic(x) -> Dyadic:
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, int):
        return Dyadic.of(x, 0)
    return Dyadic.from_fraction(Fraction(x))


def _OR(a, b):
    return a or b


def _AND(a, b):
    return a and b


def _SUB(a, b):
    return a and not b


def _XOR(a, b):
    return a != b


def _combine(x: IntervalSet, y: IntervalSet, op) -> IntervalSet:
    k = max(x.exp, y.exp)
    sx, sy = k - x.exp, k - y.exp
    xs = [b << sx for b in x.bounds] if sx else x.bounds
    ys = [b << sy for b in y.bounds] if sy else y.bounds
    out: list[int] = []
    i = j = 0
    nx, ny = len(xs), len(ys)
    ina = inb = cur = False
    while i < nx or j < ny:
        if j >= ny or (i < nx and xs[i] <= ys[j]):
            v = xs[i]
        else:
            v = ys[j]
        if i < nx and xs[i] == v:
            ina = not ina
            i += 1
        if j < ny and ys[j] == v:
            inb = not inb
            j += 1
        new = op(ina, inb)
        if new != cur:
            out.append(v)
            cur = new
    return IntervalSet.make(k, out)


EMPTY = IntervalSet(0, ())
FULL = IntervalSet(0, (0, 1))


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a | b


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a & b


def complement(a: IntervalSet) -> IntervalSet:
    return ~a


def difference(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a - b


def symdiff(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return a ^ b


def is_subset(a: IntervalSet, b: IntervalSet) -> bool:
    return a <= b


def is_empty(a: IntervalSet) -> bool:
    return not a


def contains_point(a: IntervalSet, n: int) -> bool:
    return n in a


def union_all(sets: Iterable[IntervalSet]) -> IntervalSet:
    out = EMPTY
    for s in sets:
        out = out | s
    return out


# -- text format ------------------------------------------------------------
#
#   set      := "{}" | interval ("u" interval)*
#   interval := "[" rational "," rational ")"
#   rational := digits ["/" digits]        (denominator a power of two)


def format_set(a: IntervalSet) -> str:
    if not a:
        return "{}"
    return "u".join(f"[{l},{r})" for l, r in a.intervals)


def parse_set(text: str) -> IntervalSet:
    """Parse the textual form; non-canonical unions are accepted and merged."""
    p = _Parser(text)
    result = p.parse()
    return result


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, msg: str):
        raise ParseError(msg, len(self.text[: self.pos].encode()), self.text)

    def expect(self, ch: str):
        if self.text.startswith(ch, self.pos):
            self.pos += len(ch)
        else:
            found = self.text[self.pos : self.pos + 1] or "end of input"
            self.fail(f"expected {ch!r}, found {found!r}")

    def parse(self) -> IntervalSet:
        if self.text == "{}":
            return EMPTY
        pairs = [self.interval()]
        while self.pos < len(self.text):
            self.expect("u")
            pairs.append(self.interval())
        return IntervalSet.from_intervals(pairs)

    def interval(self):
        self.expect("[")
        start = self.pos
        l = self.rational()
        self.expect(",")
        r = self.rational()
        self.expect(")")
        if not l < r:
            self.pos = start
            self.fail(f"empty interval [{l},{r})")
        return l, r

    def digits(self) -> int:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.fail("expected digits")
        return int(self.text[start : self.pos])

    def rational(self) -> Dyadic:
        start = self.pos
        num = self.digits()
        if self.text.startswith("/", self.pos):
            self.pos += 1
            den = self.digits()
        else:
            den = 1  # bare "0" or "1"
        if den == 0 or den & (den - 1):
            self.pos = start
            self.fail(f"denominator {den} is not a power of two")
        k = den.bit_length() - 1
        if num > den:
            self.pos = start
            self.fail(f"{num}/{den} lies outside [0, 1]")
        return Dyadic.of(num, k)
