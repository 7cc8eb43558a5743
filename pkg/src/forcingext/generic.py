"""Lazy Rasiowa-Sikorski construction of a generic set.

A :class:`ChainState` holds a descending chain of conditions starting at the
empty condition.  Dense sets are met only when something asks for them:
membership of ``n`` in the generic set meets ``E_n``, a verification meets
``D_a`` or ``D_{e,f}``, and so on.  Because later conditions only extend
earlier ones, an answer published once never changes.

Sessions
--------
The requests that actually extended a chain can be written to a text file
and replayed.  The format is line based, one ``key=value`` per line; blank
lines and lines starting with ``#`` are ignored::

    # forcingext session v1
    point=1/3
    Ei=0
    Da=[1/2,3/4)
    Def=[0/1,1/2);{}
    Eef=[0/1,1/2);{}
    Cov=[1/8,1/4)

``point`` is optional and must precede every request.  Pairs are separated
by ``;``.  Replaying a session on the canonical families reproduces the
chain exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Union

from .dense import (
    Certificate,
    extend_into_Cov,
    extend_into_Da,
    extend_into_Def,
    extend_into_Eef,
    extend_into_Ei,
)
from .errors import ForcingError, ParseError, SessionError
from .families import FreeSeq, IdealFamily, canonical_free_sequence, canonical_ideal_family
from .intervals import IntervalSet, format_set, parse_set
from .poset import ROOT, Condition
from .ultrafilter import PointUltrafilter

__all__ = [
    "Da",
    "Ei",
    "Def",
    "Eef",
    "Cov",
    "ChainState",
    "GenericSet",
    "ExtElement",
    "NotNormalizable",
    "try_normalize",
    "load_session",
    "parse_session",
]


@dataclass(frozen=True)
class Da:
    a: IntervalSet

    def to_line(self) -> str:
        return f"Da={format_set(self.a)}"


@dataclass(frozen=True)
class Ei:
    i: int

    def to_line(self) -> str:
        return f"Ei={self.i}"


@dataclass(frozen=True)
class Def:
    e: IntervalSet
    f: IntervalSet

    def to_line(self) -> str:
        return f"Def={format_set(self.e)};{format_set(self.f)}"


@dataclass(frozen=True)
class Eef:
    e: IntervalSet
    f: IntervalSet

    def to_line(self) -> str:
        return f"Eef={format_set(self.e)};{format_set(self.f)}"


@dataclass(frozen=True)
class Cov:
    x: IntervalSet

    def to_line(self) -> str:
        return f"Cov={format_set(self.x)}"


Request = Union[Da, Ei, Def, Eef, Cov]


class ChainState:
    """A descending chain of conditions with the certificates that built it.

    ``chain[0]`` is the empty condition and ``log[k]`` is the certificate whose
    result is ``chain[k + 1]``.  Not thread safe: callers serialize access.
    """

    def __init__(self, u: PointUltrafilter | None = None, X: IdealFamily | None = None,
                 C: FreeSeq | None = None):
        self.u = u or PointUltrafilter()
        self.X = X or canonical_ideal_family()
        self.C = C or canonical_free_sequence()
        self.chain: list[Condition] = [ROOT]
        self.log: list[Certificate] = []
        self.requests: list[Request] = []
        self.met: dict[Request, int] = {}
        self._g: dict[int, bool] = {}

    @property
    def bottom(self) -> Condition:
        return self.chain[-1]

    @property
    def g(self) -> GenericSet:
        return GenericSet(self)

    def meet(self, request: Request) -> Certificate:
        """Extend the chain into the requested dense set (cached per request)."""
        idx = self.met.get(request)
        if idx is not None:
            return self.log[idx]
        p, u = self.bottom, self.u
        if isinstance(request, Ei):
            cert = extend_into_Ei(p, request.i, u)
        elif isinstance(request, Da):
            cert = extend_into_Da(p, request.a, u)
        elif isinstance(request, Def):
            cert = extend_into_Def(p, request.e, request.f, self.X, u)
        elif isinstance(request, Eef):
            cert = extend_into_Eef(p, request.e, request.f, self.C, u)
        elif isinstance(request, Cov):
            cert = extend_into_Cov(p, request.x, u)
        else:
            raise TypeError(f"unknown request {request!r}")
        self.chain.append(cert.result)
        self.log.append(cert)
        self.requests.append(request)
        self.met[request] = len(self.log) - 1
        return cert

    def g_contains(self, n: int) -> bool:
        ans = self._g.get(n)
        if ans is None:
            ans = n in self.meet(Ei(n)).result.p0
            self._g[n] = ans
        return ans

    def ext(self, e: IntervalSet, f: IntervalSet) -> ExtElement:
        return ExtElement(e, f, self.g)

    # -- sessions -------------------------------------------------------------

    def session_text(self) -> str:
        lines = ["# forcingext session v1", f"point={self.u.point}"]
        lines.extend(r.to_line() for r in self.requests)
        return "\n".join(lines) + "\n"

    def save_session(self, path) -> None:
        Path(path).write_text(self.session_text(), encoding="utf-8")

    def dump(self) -> list[dict]:
        """One JSON-ready object per chain entry."""
        rows = [{"index": 0, "condition": ROOT.to_json(), "certificate": None}]
        for k, cert in enumerate(self.log, start=1):
            rows.append({"index": k, "condition": self.chain[k].to_json(), "certificate": cert.to_json()})
        return rows


class GenericSet:
    """Membership view of the generic set: the union of first coordinates."""

    def __init__(self, state: ChainState):
        self.state = state

    def __contains__(self, n: int) -> bool:
        return self.state.g_contains(n)


@dataclass(frozen=True, eq=False)
class ExtElement:
    """The element ``(g & e) | (f - g)`` of the algebra generated by ``A`` and ``g``."""

    e: IntervalSet
    f: IntervalSet
    g: GenericSet

    def __contains__(self, n: int) -> bool:
        return n in (self.e if n in self.g else self.f)

    def members(self, limit: int):
        return [n for n in range(limit + 1) if n in self]

    def known_member(self) -> int | None:
        """A member found from the chain alone, or None when undecided.

        A point of ``e`` outside the current ``p1`` joins ``g`` once ``E_n``
        is met (it is in ``p0`` already or gets a cell there), so it is a
        member.  Failing that, any point of ``f & p1`` is a member.
        """
        bottom = self.g.state.bottom
        n = (self.e - bottom.p1).first_point()
        if n is not None and n in self.g:
            return n
        return (self.f & bottom.p1).first_point()


class NotNormalizable:
    """``e ^ f`` is in ``u``, so no single condition can decide the element."""

    def __init__(self, e: IntervalSet, f: IntervalSet):
        self.e, self.f = e, f

    def __repr__(self) -> str:
        return f"NotNormalizable({format_set(self.e)}, {format_set(self.f)})"


def try_normalize(state: ChainState, e: IntervalSet, f: IntervalSet):
    """Rewrite ``(g & e) | (f - g)`` as a ground set when the chain allows it."""
    d = e ^ f
    if d in state.u:
        return NotNormalizable(e, f)
    if not d <= state.bottom.support:
        state.meet(Cov(d))
    q = state.bottom
    return (e & f) | (q.p0 & (e - f)) | (q.p1 & (f - e))


# -- session parsing ------------------------------------------------------------


def _parse_pair(value: str, lineno: int):
    parts = value.split(";")
    if len(parts) != 2:
        raise SessionError(f"expected two sets separated by ';', got {value!r}", lineno)
    return _parse_one(parts[0], lineno), _parse_one(parts[1], lineno)


def _parse_one(value: str, lineno: int) -> IntervalSet:
    try:
        return parse_set(value)
    except ParseError as exc:
        raise SessionError(str(exc), lineno) from None


def parse_session(text: str, X: IdealFamily | None = None, C: FreeSeq | None = None) -> ChainState:
    point = None
    requests: list[tuple[int, Request]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise SessionError(f"expected key=value, got {line!r}", lineno)
        if key == "point":
            if requests:
                raise SessionError("point must precede all requests", lineno)
            try:
                point = Fraction(value)
            except (ValueError, ZeroDivisionError):
                raise SessionError(f"bad point {value!r}", lineno) from None
        elif key == "Ei":
            if not value.isdigit():
                raise SessionError(f"Ei needs a natural number, got {value!r}", lineno)
            requests.append((lineno, Ei(int(value))))
        elif key == "Da":
            requests.append((lineno, Da(_parse_one(value, lineno))))
        elif key == "Cov":
            requests.append((lineno, Cov(_parse_one(value, lineno))))
        elif key in ("Def", "Eef"):
            e, f = _parse_pair(value, lineno)
            requests.append((lineno, Def(e, f) if key == "Def" else Eef(e, f)))
        else:
            raise SessionError(f"unknown key {key!r}", lineno)
    try:
        u = PointUltrafilter(point) if point is not None else PointUltrafilter()
    except ValueError as exc:
        raise SessionError(str(exc), 0) from None
    state = ChainState(u, X, C)
    for lineno, req in requests:
        try:
            state.meet(req)
        except ForcingError as exc:
            raise SessionError(f"request cannot be met: {exc}", lineno) from None
    return state


def load_session(path, X: IdealFamily | None = None, C: FreeSeq | None = None) -> ChainState:
    return parse_session(Path(path).read_text(encoding="utf-8"), X, C)
