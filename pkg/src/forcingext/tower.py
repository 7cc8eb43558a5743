"""Finite towers of extension steps (experimental beyond depth 1).

Depth 0 is the ground algebra with its point ultrafilter and the canonical
families.  Depth 1 adds one generic set through a :class:`ChainState` and is
fully verified by :mod:`forcingext.verifier`.

Going further needs an ultrafilter on the extension algebra.  Elements of
that algebra are pairs ``(e, f)`` standing for ``(g & e) | (f - g)``; the
Boolean operations act coordinatewise, but emptiness depends on ``g`` and is
only known where the chain has decided it.  Strategies and kernel questions
therefore answer with :class:`Tri`, and a depth-2 step that meets
``UNRESOLVED`` aborts with :class:`~forcingext.errors.TowerAborted`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Protocol

from .dyadic import encode
from .errors import TowerAborted
from .families import FreeSeq, IdealFamily, canonical_free_sequence, canonical_ideal_family
from .generic import ChainState
from .intervals import EMPTY, FULL, IntervalSet
from .rng import SplitMix64, random_set, random_set_outside
from .ultrafilter import PointUltrafilter
from .verifier import (
    Verdict,
    verify_free_preserved,
    verify_g_differs,
    verify_ideal_preserved,
    verify_ultra_destroyed,
)


class Tri(Enum):
    TRUE = "true"
    FALSE = "false"
    UNRESOLVED = "unresolved"

    @classmethod
    def of(cls, flag: bool) -> Tri:
        return cls.TRUE if flag else cls.FALSE


@dataclass(frozen=True)
class Pair:
    """An element ``(g & e) | (f - g)`` of the one-step extension algebra."""

    e: IntervalSet
    f: IntervalSet

    @classmethod
    def ground(cls, a: IntervalSet) -> Pair:
        return cls(a, a)

    def __or__(self, other: Pair) -> Pair:
        return Pair(self.e | other.e, self.f | other.f)

    def __and__(self, other: Pair) -> Pair:
        return Pair(self.e & other.e, self.f & other.f)

    def __sub__(self, other: Pair) -> Pair:
        return Pair(self.e - other.e, self.f - other.f)

    def __invert__(self) -> Pair:
        return Pair(~self.e, ~self.f)


ZERO = Pair(EMPTY, EMPTY)


def is_zero(state: ChainState, b: Pair) -> Tri:
    """Whether ``b`` is empty, judged from the chain without extending it."""
    q = state.bottom
    if b.e & q.p0 or b.f & q.p1:
        return Tri.FALSE
    if b.e <= q.p1 and b.f <= q.p0:
        return Tri.TRUE
    return Tri.UNRESOLVED


class UltrafilterStrategy(Protocol):
    name: str

    def member(self, b: Pair) -> Tri: ...


@dataclass(frozen=True)
class GSide:
    """The filter generated by ``u`` and ``g``: ``b`` is in iff ``e`` is in ``u``."""

    u: PointUltrafilter
    name: str = "g-side"

    def member(self, b: Pair) -> Tri:
        return Tri.of(b.e in self.u)


@dataclass(frozen=True)
class ComplementSide:
    """The filter generated by ``u`` and ``-g``: ``b`` is in iff ``f`` is in ``u``."""

    u: PointUltrafilter
    name: str = "complement-side"

    def member(self, b: Pair) -> Tri:
        return Tri.of(b.f in self.u)


@dataclass
class TowerStage:
    depth: int
    u: PointUltrafilter
    X: IdealFamily
    C: FreeSeq
    state: ChainState | None = None
    verdicts: list[Verdict] = field(default_factory=list)
    # depth >= 2 only
    strategy: UltrafilterStrategy | None = None
    chain2: list[tuple[Pair, Pair]] = field(default_factory=list)


class Tower:
    """Build stages one extension at a time."""

    def __init__(self, u: PointUltrafilter | None = None, seed: int = 0, samples: int = 5,
                 prefix: int = 256, strategy=GSide):
        u = u or PointUltrafilter()
        self.rng = SplitMix64(seed)
        self.samples = samples
        self.prefix = prefix
        self.strategy_factory = strategy
        self.stages = [TowerStage(0, u, canonical_ideal_family(), canonical_free_sequence())]

    @property
    def top(self) -> TowerStage:
        return self.stages[-1]

    def advance(self, requests: int = 4) -> TowerStage:
        if self.top.depth == 0:
            stage = self._first_step()
        elif self.top.depth == 1:
            stage = self._second_step(requests)
        else:
            raise TowerAborted("depths beyond 2 are not implemented")
        self.stages.append(stage)
        return stage

    def _first_step(self) -> TowerStage:
        base = self.top
        state = ChainState(base.u, base.X, base.C)
        stage = TowerStage(1, base.u, base.X, base.C, state)
        rng = self.rng
        for _ in range(self.samples):
            stage.verdicts.append(verify_ultra_destroyed(state, random_set_outside(rng, base.u)))
            stage.verdicts.append(verify_g_differs(state, random_set(rng)))
            e, f = random_set(rng), random_set(rng)
            stage.verdicts.append(verify_ideal_preserved(state, e, f, prefix=self.prefix))
            stage.verdicts.append(verify_free_preserved(state, e, f, prefix=self.prefix))
        return stage

    def _second_step(self, requests: int) -> TowerStage:
        """Meet ``E_0 .. E_{requests-1}`` in ``P(<A u {g}>, u')`` for the chosen ``u'``."""
        base = self.top
        strategy = self.strategy_factory(base.u)
        stage = TowerStage(2, base.u, base.X, base.C, base.state, strategy=strategy)
        q = (ZERO, ZERO)
        stage.chain2.append(q)
        for i in range(requests):
            q = self._meet_point(base.state, strategy, q, i)
            stage.chain2.append(q)
        return stage

    def _meet_point(self, state: ChainState, strategy, q: tuple[Pair, Pair], i: int):
        q0, q1 = q
        g_has_i = state.g_contains(i)
        covered = q0 | q1
        if i in (covered.e if g_has_i else covered.f):
            return q
        d = encode(i)
        for k in range(1, 64):
            cell = Pair.ground(IntervalSet.cell((d.numerator << k) >> d.exponent, k))
            grown = q0 | cell
            member = strategy.member(grown)
            clash = is_zero(state, cell & q1)
            if Tri.UNRESOLVED in (member, clash):
                raise TowerAborted(
                    f"depth 2, E_{i}: {strategy.name} membership={member.value}, "
                    f"disjointness={clash.value} at rank {k}; the chain has not decided this"
                )
            if member is Tri.FALSE and clash is Tri.TRUE:
                return grown, q1
        raise TowerAborted(f"depth 2, E_{i}: no admissible cell up to rank 63")
