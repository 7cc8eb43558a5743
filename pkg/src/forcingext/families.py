"""Ideal-independent families, free sequences, and their maximality oracles.

The density arguments only ever use maximality of a family through a
finite dichotomy about one element ``a`` of the algebra:

* ideal-independent family ``X``: either ``a`` is covered by finitely many
  pieces (:class:`Cover`), or some piece is covered by ``a`` together with
  finitely many other pieces (:class:`Absorb`);
* decreasing free sequence ``C``: ``a`` misses some ``c_i``
  (:class:`Avoid`), or contains some ``c_i - c_j`` with ``i < j``
  (:class:`Between`), or contains the complement of ``c_0``
  (:class:`CoversTop`).

The oracles below return such answers and check the stated inclusion before
returning it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Sequence, Union

from .errors import OracleError
from .intervals import EMPTY, FULL, IntervalSet, union_all

__all__ = [
    "IdealFamily",
    "FreeSeq",
    "Cover",
    "Absorb",
    "Avoid",
    "Between",
    "CoversTop",
    "canonical_ideal_family",
    "canonical_free_sequence",
    "is_ideal_independent",
    "is_free_sequence",
    "free_violation",
    "ideal_oracle",
    "free_oracle",
    "answer_holds",
]


@dataclass(frozen=True)
class IdealFamily:
    """An indexed family ``x_0, x_1, ...`` given by a generator."""

    generator: Callable[[int], IntervalSet]
    name: str = "custom"
    search_bound: int = 32

    def __getitem__(self, n: int) -> IntervalSet:
        return self.generator(n)

    def prefix(self, n: int) -> list[IntervalSet]:
        return [self.generator(i) for i in range(n)]

    @property
    def canonical(self) -> bool:
        return self.name == "annuli"


@dataclass(frozen=True)
class FreeSeq:
    """A sequence ``c_0, c_1, ...`` with ``c_j`` strictly inside ``c_i`` for ``i < j``."""

    generator: Callable[[int], IntervalSet]
    name: str = "custom"
    search_bound: int = 32

    def __getitem__(self, i: int) -> IntervalSet:
        return self.generator(i)

    def prefix(self, n: int) -> list[IntervalSet]:
        return [self.generator(i) for i in range(n)]

    @property
    def canonical(self) -> bool:
        return self.name == "initial"


def _annulus(n: int) -> IntervalSet:
    # [2^-(n+1), 2^-n)
    return IntervalSet.make(n + 1, (1, 2))


def _initial(i: int) -> IntervalSet:
    # [0, 2^-(i+1))
    return IntervalSet.make(i + 1, (0, 1))


def canonical_ideal_family() -> IdealFamily:
    return IdealFamily(_annulus, "annuli")


def canonical_free_sequence() -> FreeSeq:
    return FreeSeq(_initial, "initial")


# -- oracle answers -----------------------------------------------------------


@dataclass(frozen=True)
class Cover:
    """``a`` is contained in the union of the listed pieces."""

    witnesses: tuple[int, ...]

    def to_json(self) -> dict:
        return {"kind": "Cover", "witnesses": list(self.witnesses)}


@dataclass(frozen=True)
class Absorb:
    """Piece ``head`` is contained in ``a`` together with the ``rest`` pieces."""

    head: int
    rest: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"kind": "Absorb", "head": self.head, "rest": list(self.rest)}


@dataclass(frozen=True)
class Avoid:
    """``a`` is disjoint from ``c_i``."""

    i: int

    def to_json(self) -> dict:
        return {"kind": "Avoid", "i": self.i}


@dataclass(frozen=True)
class Between:
    """``c_i - c_j`` is contained in ``a``, with ``i < j``."""

    i: int
    j: int

    def to_json(self) -> dict:
        return {"kind": "Between", "i": self.i, "j": self.j}


@dataclass(frozen=True)
class CoversTop:
    """The complement of ``c_0`` is contained in ``a``."""

    def to_json(self) -> dict:
        return {"kind": "CoversTop"}


IdealAnswer = Union[Cover, Absorb]
FreeAnswer = Union[Avoid, Between, CoversTop]


def answer_holds(a: IntervalSet, ans, family) -> bool:
    """Check an oracle answer about ``a`` using kernel operations only."""
    if isinstance(ans, Cover):
        return a <= union_all(family[n] for n in ans.witnesses)
    if isinstance(ans, Absorb):
        return family[ans.head] <= a | union_all(family[n] for n in ans.rest)
    if isinstance(ans, Avoid):
        return a.isdisjoint(family[ans.i])
    if isinstance(ans, Between):
        return ans.i < ans.j and family[ans.i] - family[ans.j] <= a
    if isinstance(ans, CoversTop):
        return ~family[0] <= a
    raise TypeError(f"not an oracle answer: {ans!r}")


# -- predicates ---------------------------------------------------------------


def is_ideal_independent(family: Sequence[IntervalSet]) -> bool:
    """No member lies below the union of the others.

    For a finite family the ideal generated by the others is the down-set of
    their union, so this is the full definition.
    """
    for i, x in enumerate(family):
        others = union_all(y for j, y in enumerate(family) if j != i)
        if x <= others:
            return False
    return True


def free_violation(seq: Sequence[IntervalSet]):
    """A pair ``(F, G)`` of index tuples whose product is empty, or None.

    Products only shrink as ``F`` and ``G`` grow, so it is enough to look at
    the maximal pair ``F = [0, s)``, ``G = [s, n)`` for each split ``s``; a
    violation found there is then shrunk greedily to a minimal one.
    """
    n = len(seq)
    for s in range(n + 1):
        F, G = list(range(s)), list(range(s, n))
        if not _product(seq, F, G):
            for idx in list(F) + list(G):
                F2 = [i for i in F if i != idx]
                G2 = [j for j in G if j != idx]
                if not _product(seq, F2, G2):
                    F, G = F2, G2
            return tuple(F), tuple(G)
    return None


def _product(seq, F, G) -> IntervalSet:
    out = FULL
    for i in F:
        out = out & seq[i]
    for j in G:
        out = out - seq[j]
    return out


def is_free_sequence(seq: Sequence[IntervalSet]) -> bool:
    return free_violation(seq) is None


# -- oracles ------------------------------------------------------------------


def ideal_oracle(a: IntervalSet, X: IdealFamily) -> IdealAnswer:
    ans = _ideal_canonical(a) if X.canonical else _ideal_search(a, X)
    if not answer_holds(a, ans, X):
        raise OracleError(f"ideal oracle produced an unverifiable answer {ans} for {a}")
    return ans


def _ideal_canonical(a: IntervalSet) -> IdealAnswer:
    if not a:
        return Cover(())
    if a.bounds[0] == 0:
        k = 0
        while not _annulus(k) <= a:
            k += 1
        return Absorb(k, ())
    # a stays above inf(a) > 0, so only annuli down to the one holding inf(a) can meet it
    lo = IntervalSet.make(a.exp, (0, a.bounds[0]))
    hits = []
    n = 0
    while True:
        piece = _annulus(n)
        if not piece.isdisjoint(a):
            hits.append(n)
        if not piece - lo:
            # piece lies entirely below inf(a); so do all later ones
            break
        n += 1
    return Cover(tuple(hits))


def _ideal_search(a: IntervalSet, X: IdealFamily) -> IdealAnswer:
    N = X.search_bound
    pieces = X.prefix(N)
    meeting = tuple(n for n in range(N) if not pieces[n].isdisjoint(a))
    if a <= union_all(pieces[n] for n in meeting):
        return Cover(meeting)
    for k in range(N):
        rest = tuple(n for n in range(N) if n != k and not pieces[n].isdisjoint(pieces[k]))
        if pieces[k] <= a | union_all(pieces[n] for n in rest):
            # keep only the pieces actually needed
            needed = tuple(n for n in rest if not pieces[n].isdisjoint(pieces[k] - a))
            return Absorb(k, needed)
    raise OracleError(f"no maximality witness for {a} within {N} pieces of {X.name}")


def free_oracle(a: IntervalSet, C: FreeSeq) -> FreeAnswer:
    ans = _free_canonical(a) if C.canonical else _free_search(a, C)
    if not answer_holds(a, ans, C):
        raise OracleError(f"free oracle produced an unverifiable answer {ans} for {a}")
    return ans


def _free_canonical(a: IntervalSet) -> FreeAnswer:
    if not a or a.bounds[0] > 0:
        i = 0
        while not a.isdisjoint(_initial(i)):
            i += 1
        return Avoid(i)
    i = 0
    while not _initial(i) - _initial(i + 1) <= a:
        i += 1
    return Between(i, i + 1)


def _free_search(a: IntervalSet, C: FreeSeq) -> FreeAnswer:
    N = C.search_bound
    terms = C.prefix(N)
    for i in range(N):
        if a.isdisjoint(terms[i]):
            return Avoid(i)
    for i, j in combinations(range(N), 2):
        if terms[i] - terms[j] <= a:
            return Between(i, j)
    if ~terms[0] <= a:
        return CoversTop()
    raise OracleError(f"no maximality witness for {a} within {N} terms of {C.name}")
