"""Constructive density: map any condition into a named dense set.

Each ``extend_into_*`` function strengthens a condition until it satisfies
one defining clause of a dense set and returns a :class:`Certificate` naming
that clause and its finite witnesses.  :func:`check_certificate` re-checks a
certificate from kernel operations alone.

Dense sets (``u`` the ultrafilter, ``p* = (p0 & e) | (p1 & f)``,
``a_p = ~(p0 | p1)``):

``Da``   ``a <= p0 | p1`` and ``p0 - a``, ``p1 - a`` both nonempty (``a`` not in ``u``)
``Ei``   the encoded point ``i`` lies in ``p0 | p1``
``Cov``  ``x <= p0 | p1`` (``x`` not in ``u``)
``Def``  for an ideal-independent family ``X``, one of
         1. ``e ^ f <= p0 | p1``
         2. ``x_h <= p* | x_r1 | ... | x_rn``
         3. ``p* | a_p <= x_c0 | ... | x_cn``
``Eef``  for a decreasing free sequence ``C``, one of
         1. ``e ^ f <= p0 | p1``
         2. ``c_i - c_j <= p*`` with ``i < j``
         3. ``p* | a_p <= ~c_i``
         4. ``~c_0 <= p*``
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from .dyadic import encode
from .errors import ForcingError, PreconditionError
from .families import (
    Absorb,
    Avoid,
    Between,
    Cover,
    CoversTop,
    FreeSeq,
    IdealFamily,
    free_oracle,
    ideal_oracle,
)
from .intervals import IntervalSet, format_set, parse_set, union_all
from .poset import Condition, derived_parts, leq, star_extend
from .ultrafilter import PointUltrafilter, atomless_split

__all__ = [
    "Certificate",
    "extend_into_Da",
    "extend_into_Ei",
    "extend_into_Cov",
    "extend_into_Def",
    "extend_into_Eef",
    "check_certificate",
    "clause_holds",
]


@dataclass(frozen=True, eq=False)
class Certificate:
    """A strengthened condition plus the clause it satisfies and why.

    ``path`` is a trace for humans.  For ``Def``/``Eef`` it starts with the
    case ``i``-``iv`` (which of ``e_p & f_p``, ``~(e_p | f_p)``, ``e_p - f_p``,
    ``f_p - e_p`` is in ``u``), followed by the oracle branches taken; case
    ``iv`` is handled as ``iii`` with the sides swapped and sets ``mirrored``.
    """

    dense_set: str
    clause: int
    witnesses: dict[str, Any]
    result: Condition
    mirrored: bool = False
    path: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "dense_set": self.dense_set,
            "clause": self.clause,
            "witnesses": {k: _jsonable(v) for k, v in self.witnesses.items()},
            "result": self.result.to_json(),
            "mirrored": self.mirrored,
            "path": list(self.path),
        }

    @classmethod
    def from_json(cls, obj: dict) -> Certificate:
        wit = {}
        for k, v in obj["witnesses"].items():
            wit[k] = parse_set(v) if k in _SET_KEYS else (tuple(v) if isinstance(v, list) else v)
        return cls(
            obj["dense_set"],
            obj["clause"],
            wit,
            Condition.from_json(obj["result"]),
            obj.get("mirrored", False),
            tuple(obj.get("path", ())),
        )


_SET_KEYS = {"a", "x", "e", "f"}


def _jsonable(v):
    if isinstance(v, IntervalSet):
        return format_set(v)
    if isinstance(v, tuple):
        return list(v)
    return v


# -- clause relations ---------------------------------------------------------


def clause_holds(cert: Certificate, u: PointUltrafilter, X: IdealFamily | None = None,
                 C: FreeSeq | None = None) -> bool:
    """Whether ``cert.result`` satisfies the clause the certificate names."""
    r, w = cert.result, cert.witnesses
    support = r.p0 | r.p1
    ds, cl = cert.dense_set, cert.clause
    if ds == "Da":
        a = w["a"]
        return cl == 1 and a not in u and a <= support and bool(r.p0 - a) and bool(r.p1 - a)
    if ds == "Ei":
        return cl == 1 and w["i"] in support
    if ds == "Cov":
        return cl == 1 and w["x"] <= support
    if ds not in ("Def", "Eef"):
        return False
    e, f = w["e"], w["f"]
    if cl == 1:
        return (e ^ f) <= support
    parts = derived_parts(r, e, f)
    if ds == "Def":
        if cl == 2:
            return X[w["head"]] <= parts.p_star | union_all(X[n] for n in w["rest"])
        if cl == 3:
            return parts.p_star | parts.a_p <= union_all(X[n] for n in w["cover"])
        return False
    if cl == 2:
        return w["i"] < w["j"] and C[w["i"]] - C[w["j"]] <= parts.p_star
    if cl == 3:
        return parts.p_star | parts.a_p <= ~C[w["i"]]
    if cl == 4:
        return ~C[0] <= parts.p_star
    return False


def check_certificate(cert: Certificate, p: Condition, u: PointUltrafilter,
                      X: IdealFamily | None = None, C: FreeSeq | None = None) -> bool:
    """Full re-check: valid result, stronger than ``p``, clause relation holds."""
    return cert.result.is_valid(u) and leq(cert.result, p) and clause_holds(cert, u, X, C)


def _certify(cert: Certificate, p: Condition, u, X=None, C=None) -> Certificate:
    if not check_certificate(cert, p, u, X, C):
        raise ForcingError(f"extender produced a certificate that does not check: {cert.to_json()}")
    return cert


# -- Da, Ei, Cov ----------------------------------------------------------------


def extend_into_Da(p: Condition, a: IntervalSet, u: PointUltrafilter) -> Certificate:
    if a in u:
        raise PreconditionError(f"D_a is only defined for a outside u; got {a}")
    if a <= p.p0 | p.p1 and p.p0 - a and p.p1 - a:
        return Certificate("Da", 1, {"a": a}, p, path=("already",))
    b = p.p0 | p.p1 | a
    x0, x1 = atomless_split(~b, u)
    q = Condition(p.p0 | x0, p.p1 | x1 | (a - p.p0)).validate(u)
    return _certify(Certificate("Da", 1, {"a": a}, q, path=("split",)), p, u)


def extend_into_Ei(p: Condition, i: int, u: PointUltrafilter) -> Certificate:
    if i in p.p0 or i in p.p1:
        return Certificate("Ei", 1, {"i": i}, p, path=("already",))
    comp = (~(p.p0 | p.p1)).component_of_point(i)
    d = encode(i)
    k = 1
    while True:
        cell = IntervalSet.cell((d.numerator << k) >> d.exponent, k)
        if cell <= comp and cell not in u:
            break
        k += 1
    q = Condition(p.p0 | cell, p.p1).validate(u)
    return _certify(Certificate("Ei", 1, {"i": i}, q, path=("cell",)), p, u)


def extend_into_Cov(p: Condition, x: IntervalSet, u: PointUltrafilter) -> Certificate:
    q = star_extend(p, x, u)
    return _certify(Certificate("Cov", 1, {"x": x}, q), p, u)


# -- Def and Eef --------------------------------------------------------------


class _Sides:
    """Adds sets to a condition relative to the branch being followed.

    In the unmirrored branch the open part ``a_q`` lies inside ``e - f``:
    adding to ``p0`` puts a set into ``p*`` ("loud") and adding to ``p1``
    leaves ``p*`` unchanged ("quiet").  The mirrored branch swaps the roles.
    """

    def __init__(self, mirrored: bool):
        self.mirrored = mirrored

    def quiet(self, q: Condition, s: IntervalSet) -> Condition:
        if self.mirrored:
            return Condition(q.p0 | s, q.p1)
        return Condition(q.p0, q.p1 | s)

    def loud(self, q: Condition, s: IntervalSet) -> Condition:
        if self.mirrored:
            return Condition(q.p0, q.p1 | s)
        return Condition(q.p0 | s, q.p1)


def _split_case(p: Condition, e: IntervalSet, f: IntervalSet, u: PointUltrafilter):
    """Which of the four u-cases holds for the open parts of ``e`` and ``f``."""
    parts = derived_parts(p, e, f)
    ep, fp = parts.e_p, parts.f_p
    if (ep & fp) in u:
        return "i"
    if ~(ep | fp) in u:
        return "ii"
    if (ep - fp) in u:
        return "iii"
    if (fp - ep) in u:
        return "iv"
    raise AssertionError("the four cases partition [0, 1)")


def _clause1(kind, p, e, f, u, case, X=None, C=None) -> Certificate:
    # e_p ^ f_p and p0 | p1 are outside u, hence so is e ^ f
    q = star_extend(p, e ^ f, u)
    cert = Certificate(kind, 1, {"e": e, "f": f}, q, path=(case,))
    return _certify(cert, p, u, X, C)


def extend_into_Def(p: Condition, e: IntervalSet, f: IntervalSet, X: IdealFamily,
                    u: PointUltrafilter) -> Certificate:
    p.validate(u)
    case = _split_case(p, e, f, u)
    if case in ("i", "ii"):
        return _clause1("Def", p, e, f, u, case, X=X)
    mirrored = case == "iv"
    sides = _Sides(mirrored)
    own, other = (f, e) if mirrored else (e, f)
    q = star_extend(p, ~(own - other), u)
    qp = derived_parts(q, e, f)
    base = {"e": e, "f": f}

    def done(clause, r, extra, *path):
        r.validate(u)
        cert = Certificate("Def", clause, {**base, **extra}, r, mirrored, (case,) + path)
        return _certify(cert, p, u, X=X)

    first = ideal_oracle(qp.p_star, X)
    if isinstance(first, Absorb):
        return done(2, q, {"head": first.head, "rest": first.rest}, "v")
    xs = first.witnesses
    second = ideal_oracle(qp.a_p, X)
    if isinstance(second, Cover):
        cover = tuple(dict.fromkeys(xs + second.witnesses))
        return done(3, q, {"cover": cover}, "vi", "vii")
    y0 = X[second.head]
    if (qp.a_p & y0) in u:
        r = sides.quiet(q, qp.a_p - y0)
        cover = tuple(dict.fromkeys((second.head,) + xs))
        return done(3, r, {"cover": cover}, "vi", "viii", "case1")
    r = sides.loud(q, qp.a_p & y0)
    return done(2, r, {"head": second.head, "rest": second.rest}, "vi", "viii", "case2")


def extend_into_Eef(p: Condition, e: IntervalSet, f: IntervalSet, C: FreeSeq,
                    u: PointUltrafilter) -> Certificate:
    p.validate(u)
    case = _split_case(p, e, f, u)
    if case in ("i", "ii"):
        return _clause1("Eef", p, e, f, u, case, C=C)
    mirrored = case == "iv"
    sides = _Sides(mirrored)
    own, other = (f, e) if mirrored else (e, f)
    q = star_extend(p, ~(own - other), u)
    qp = derived_parts(q, e, f)
    base = {"e": e, "f": f}

    def done(clause, r, extra, *path):
        r.validate(u)
        cert = Certificate("Eef", clause, {**base, **extra}, r, mirrored, (case,) + path)
        return _certify(cert, p, u, C=C)

    first = free_oracle(qp.p_star, C)
    if isinstance(first, Between):
        return done(2, q, {"i": first.i, "j": first.j}, "vi")
    if isinstance(first, CoversTop):
        return done(4, q, {}, "vii")
    assert isinstance(first, Avoid)
    i = first.i
    second = free_oracle(qp.a_p, C)
    if isinstance(second, Avoid):
        return done(3, q, {"i": max(i, second.i)}, "v", "viii")
    if isinstance(second, Between):
        j, k = second.i, second.j
        gap = C[j] - C[k]
        if gap in u:
            r = sides.quiet(q, qp.a_p - gap)
            return done(3, r, {"i": max(i, k)}, "v", "ix", "case1")
        r = sides.loud(q, gap)
        return done(2, r, {"i": j, "j": k}, "v", "ix", "case2")
    assert isinstance(second, CoversTop)
    c0 = C[0]
    if (qp.a_p & c0) not in u:
        r = sides.quiet(q, qp.a_p & c0)
        return done(3, r, {"i": i}, "v", "x", "case1")
    r = sides.loud(q, qp.a_p - c0)
    return done(4, r, {}, "v", "x", "case2")
