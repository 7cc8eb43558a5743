"""Checkable verdicts about one generic extension step.

Each ``verify_*`` function drives a :class:`ChainState`, reads its witnesses
off chain conditions, and returns a :class:`Verdict`.  :func:`recheck`
re-verifies a verdict from its recorded witnesses with kernel operations
only; it never consults the chain.

Facts about the generic set ``g`` enter through conditions of the chain:
for any chain condition ``p``, ``p0`` lies inside ``g`` and ``p1`` outside it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .dense import Certificate, clause_holds
from .dyadic import encode
from .errors import PreconditionError
from .families import (
    Absorb,
    Avoid,
    Between,
    Cover,
    CoversTop,
    FreeSeq,
    IdealFamily,
    answer_holds,
    free_oracle,
    ideal_oracle,
)
from .generic import ChainState, Da, Def, Eef, NotNormalizable, try_normalize
from .intervals import EMPTY, FULL, IntervalSet, format_set
from .poset import Condition, derived_parts
from .rng import ALGORITHM, SplitMix64, random_set, random_set_outside
from .ultrafilter import PointUltrafilter

__all__ = [
    "Verdict",
    "VERIFIED",
    "FAILED",
    "INCONCLUSIVE",
    "verify_g_differs",
    "verify_ultra_destroyed",
    "verify_ideal_preserved",
    "verify_free_preserved",
    "verify_not_atom",
    "recheck",
    "run_step_demo",
]

VERIFIED = "verified"
FAILED = "failed"
INCONCLUSIVE = "inconclusive"

DEFAULT_PREFIX = 2048


@dataclass
class Verdict:
    claim: str
    inputs: dict[str, Any]
    witnesses: dict[str, Any] = field(default_factory=dict)
    status: str = FAILED
    reason: str = ""

    @property
    def verified(self) -> bool:
        return self.status == VERIFIED

    def to_json(self) -> dict:
        out = {
            "claim": self.claim,
            "status": self.status,
            "verified": self.verified,
            "inputs": _jsonify(self.inputs),
            "witnesses": _jsonify(self.witnesses),
        }
        if self.reason:
            out["reason"] = self.reason
        return out


def _jsonify(obj):
    if isinstance(obj, IntervalSet):
        return format_set(obj)
    if isinstance(obj, Condition):
        return obj.to_json()
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if hasattr(obj, "to_json"):
        return obj.to_json()
    return obj


def _settle(v: Verdict, ok: bool, reason: str = "") -> Verdict:
    v.status = VERIFIED if ok else FAILED
    if not ok:
        v.reason = reason or "a witness failed to check"
    return v


# -- g differs from every ground element ----------------------------------------


def verify_g_differs(state: ChainState, a: IntervalSet) -> Verdict:
    """Exhibit ``n`` in the symmetric difference of ``g`` and ``a``."""
    u = state.u
    v = Verdict("NotInA", {"a": a})
    if a not in u:
        p = state.meet(Da(a)).result
        n = (p.p0 - a).first_point()
        side = "g-a"
    else:
        p = state.meet(Da(~a)).result
        n = (p.p1 & a).first_point()
        side = "a-g"
    v.witnesses = {"n": n, "side": side, "condition": p}
    if n is None:
        return _settle(v, False, "dense set D_a left no witness region")
    engine = state.g_contains(n) == (side == "g-a")
    return _settle(v, engine and _recheck_not_in_a(v, u), "g-membership disagrees with the witness")


def _recheck_not_in_a(v: Verdict, u) -> bool:
    a, w = v.inputs["a"], v.witnesses
    p, n = w["condition"], w["n"]
    if not p.is_valid(u):
        return False
    if w["side"] == "g-a":
        return a not in u and n in p.p0 and n not in a
    return a in u and n in p.p1 and n in a


# -- u no longer generates an ultrafilter ------------------------------------------


def verify_ultra_destroyed(state: ChainState, a: IntervalSet) -> Verdict:
    """For ``a`` outside ``u``: neither ``g`` nor its complement lies below ``a``."""
    if a in state.u:
        raise PreconditionError(f"{a} is in the ultrafilter")
    v = Verdict("UltraDestroyed", {"a": a})
    p = state.meet(Da(a)).result
    n0, n1 = (p.p0 - a).first_point(), (p.p1 - a).first_point()
    v.witnesses = {"n0": n0, "n1": n1, "condition": p}
    if n0 is None or n1 is None:
        return _settle(v, False, "D_a clause left an empty witness region")
    engine = state.g_contains(n0) and not state.g_contains(n1)
    return _settle(v, engine and _recheck_ultra(v, state.u), "g-membership disagrees with the witnesses")


def _recheck_ultra(v: Verdict, u) -> bool:
    a, w = v.inputs["a"], v.witnesses
    p = w["condition"]
    return (a not in u and p.is_valid(u)
            and w["n0"] in p.p0 and w["n0"] not in a
            and w["n1"] in p.p1 and w["n1"] not in a)


# -- shared pieces of the two preservation verdicts ------------------------------


def _glued(p: Condition, e: IntervalSet, f: IntervalSet) -> IntervalSet:
    return (e & f) | (p.p0 & (e - f)) | (p.p1 & (f - e))


def _structural_scan(state: ChainState, p: Condition, e, f, prefix: int) -> int | None:
    """First ``n <= prefix`` breaking ``p* <= b <= p* | a_p``, or None."""
    parts = derived_parts(p, e, f)
    star, upper = parts.p_star, parts.p_star | parts.a_p
    b = state.ext(e, f)
    for n in range(prefix + 1):
        m = n in b
        if n in star and not m:
            return n
        if m and n not in upper:
            return n
    return None


def _same_family(given, bound):
    if given is not None and given is not bound:
        raise PreconditionError("the chain was built for a different family; pass it to ChainState")
    return bound


def _cert_witnesses(cert: Certificate) -> dict:
    return {k: v for k, v in cert.witnesses.items() if k not in ("e", "f")}


def verify_ideal_preserved(state: ChainState, e: IntervalSet, f: IntervalSet,
                           X: IdealFamily | None = None, prefix: int = DEFAULT_PREFIX) -> Verdict:
    """The glued element ``b = (g & e) | (f - g)`` cannot join ``X`` independently."""
    X = _same_family(X, state.X)
    cert = state.meet(Def(e, f))
    p = cert.result
    v = Verdict("IdealPreserved", {"e": e, "f": f},
                {"clause": cert.clause, "condition": p, **_cert_witnesses(cert), "prefix": prefix})
    if cert.clause == 1:
        b = try_normalize(state, e, f)
        if isinstance(b, NotNormalizable):
            return _settle(v, False, "clause 1 certified but e ^ f is in u")
        ans = ideal_oracle(b, X)
        v.witnesses.update(normalized=b, oracle=ans)
    bad = _structural_scan(state, p, e, f, prefix)
    v.witnesses["structural_ok"] = bad is None
    if bad is not None:
        return _settle(v, False, f"structural bound fails at n={bad}")
    return _settle(v, _recheck_ideal(v, state.u, X), "clause inclusion does not check")


def _recheck_ideal(v: Verdict, u, X: IdealFamily) -> bool:
    e, f, w = v.inputs["e"], v.inputs["f"], v.witnesses
    p = w["condition"]
    if not p.is_valid(u):
        return False
    if w["clause"] == 1:
        b = w["normalized"]
        return (e ^ f) <= p.support and b == _glued(p, e, f) and answer_holds(b, w["oracle"], X)
    cert = Certificate("Def", w["clause"], {"e": e, "f": f, **_pick(w, "head", "rest", "cover")}, p)
    return clause_holds(cert, u, X=X)


def _pick(d: dict, *keys) -> dict:
    return {k: d[k] for k in keys if k in d}


def _free_violation(clause: int, w: dict, ans=None) -> dict:
    # "b" marks the appended element, which comes after every c_i
    if clause == 2:
        return {"F": [w["i"]], "G": [w["j"], "b"]}
    if clause == 3:
        return {"F": [w["i"], "b"], "G": []}
    if clause == 4:
        return {"F": [], "G": [0, "b"]}
    if isinstance(ans, Avoid):
        return {"F": [ans.i, "b"], "G": []}
    if isinstance(ans, Between):
        return {"F": [ans.i], "G": [ans.j, "b"]}
    return {"F": [], "G": [0, "b"]}


def _product(C: FreeSeq, violation: dict, b: IntervalSet) -> IntervalSet:
    out = FULL
    for i in violation["F"]:
        out = out & (b if i == "b" else C[i])
    for j in violation["G"]:
        out = out - (b if j == "b" else C[j])
    return out


def verify_free_preserved(state: ChainState, e: IntervalSet, f: IntervalSet,
                          C: FreeSeq | None = None, prefix: int = DEFAULT_PREFIX) -> Verdict:
    """Appending the glued element ``b`` to ``C`` breaks freeness."""
    C = _same_family(C, state.C)
    cert = state.meet(Eef(e, f))
    p = cert.result
    w = {"clause": cert.clause, "condition": p, **_cert_witnesses(cert), "prefix": prefix}
    v = Verdict("FreePreserved", {"e": e, "f": f}, w)
    ans = None
    if cert.clause == 1:
        b = try_normalize(state, e, f)
        if isinstance(b, NotNormalizable):
            return _settle(v, False, "clause 1 certified but e ^ f is in u")
        ans = free_oracle(b, C)
        w.update(normalized=b, oracle=ans)
    w["violation"] = _free_violation(cert.clause, w, ans)
    bad = _structural_scan(state, p, e, f, prefix)
    w["structural_ok"] = bad is None
    if bad is not None:
        return _settle(v, False, f"structural bound fails at n={bad}")
    if cert.clause != 1:
        # the violated product involves b itself; check it pointwise as well
        b_el = state.ext(e, f)
        viol = w["violation"]
        for n in range(prefix + 1):
            inF = all((n in b_el) if i == "b" else (n in C[i]) for i in viol["F"])
            inG = any((n in b_el) if j == "b" else (n in C[j]) for j in viol["G"])
            if inF and not inG:
                return _settle(v, False, f"point {n} lies in the claimed empty product")
    return _settle(v, _recheck_free(v, state.u, C), "clause inclusion does not check")


def _recheck_free(v: Verdict, u, C: FreeSeq) -> bool:
    e, f, w = v.inputs["e"], v.inputs["f"], v.witnesses
    p = w["condition"]
    if not p.is_valid(u):
        return False
    if w["clause"] == 1:
        b = w["normalized"]
        if not ((e ^ f) <= p.support and b == _glued(p, e, f) and answer_holds(b, w["oracle"], C)):
            return False
        return not _product(C, w["violation"], b)
    cert = Certificate("Eef", w["clause"], {"e": e, "f": f, **_pick(w, "i", "j")}, p)
    if not clause_holds(cert, u, C=C):
        return False
    # b's trace on the support is p*, and b stays inside p* | a_p; bound the product accordingly
    parts = derived_parts(p, e, f)
    low, high = parts.p_star, parts.p_star | parts.a_p
    viol = w["violation"]
    out = FULL
    for i in viol["F"]:
        out = out & (high if i == "b" else C[i])
    for j in viol["G"]:
        out = out - (low if j == "b" else C[j])
    return not out


# -- atomlessness -----------------------------------------------------------------


def _separator(n: int, m: int) -> IntervalSet:
    """The coarsest dyadic cell holding ``enc(n)`` but not ``enc(m)``."""
    dn, dm = encode(n), encode(m)
    k = 0
    while True:
        cell = IntervalSet.cell((dn.numerator << k) >> dn.exponent, k)
        if not cell.contains_dyadic(dm):
            return cell
        k += 1


def verify_not_atom(state: ChainState, e: IntervalSet, f: IntervalSet, bound: int = 1 << 16) -> Verdict:
    """Split ``b = (g & e) | (f - g)`` by a ground cell, using two members of ``b``."""
    v = Verdict("NotAtom", {"e": e, "f": f, "bound": bound})
    b = state.ext(e, f)
    found = []
    for n in range(bound + 1):
        if n in b:
            found.append(n)
            if len(found) == 2:
                break
    if len(found) < 2:
        v.status = INCONCLUSIVE
        v.witnesses = {"members": found}
        v.reason = f"fewer than two members below {bound}"
        return v
    n, m = found
    sep = _separator(n, m)
    v.witnesses = {"n": n, "m": m, "separator": sep, "condition": state.bottom}
    engine = n in b and m in b and n in sep and m not in sep
    return _settle(v, engine and _recheck_not_atom(v, state.u), "separator does not split b")


def _recheck_not_atom(v: Verdict, u) -> bool:
    e, f, w = v.inputs["e"], v.inputs["f"], v.witnesses
    p, n, m, sep = w["condition"], w["n"], w["m"], w["separator"]
    if not p.is_valid(u):
        return False

    def member(k):
        if k in p.p0:
            return k in e
        if k in p.p1:
            return k in f
        return None

    return member(n) is True and member(m) is True and n in sep and m not in sep


# -- recheck and demo ----------------------------------------------------------------


def recheck(v: Verdict, u: PointUltrafilter, X: IdealFamily, C: FreeSeq) -> bool:
    """Re-verify a verdict from its witnesses alone (no chain access)."""
    if v.status == INCONCLUSIVE:
        return True
    if v.claim == "NotInA":
        return _recheck_not_in_a(v, u)
    if v.claim == "UltraDestroyed":
        return _recheck_ultra(v, u)
    if v.claim == "IdealPreserved":
        return _recheck_ideal(v, u, X)
    if v.claim == "FreePreserved":
        return _recheck_free(v, u, C)
    if v.claim == "NotAtom":
        return _recheck_not_atom(v, u)
    raise ValueError(f"unknown claim {v.claim!r}")


def summarize(verdicts) -> dict:
    counts = {VERIFIED: 0, FAILED: 0, INCONCLUSIVE: 0}
    for v in verdicts:
        counts[v.status] += 1
    return {"summary": True, "total": sum(counts.values()), **counts}


def run_step_demo(seed: int = 42, samples: int = 10, prefix: int = DEFAULT_PREFIX,
                  point: Fraction = Fraction(1, 3), bound: int = 1 << 16) -> dict:
    """Run every verifier on seeded samples against a single fresh chain.

    Per sample: one ``a`` outside ``u`` for the destruction claim, one ``a``
    of either side for the newness claim, and one pair ``(e, f)`` for both
    preservation claims and the atomlessness claim.
    """
    u = PointUltrafilter(point)
    state = ChainState(u)
    rng = SplitMix64(seed)
    header = {"header": True, "rng": ALGORITHM, "seed": seed, "samples": samples,
              "prefix": prefix, "point": str(u.point), "bound": bound}
    verdicts: list[Verdict] = []
    for _ in range(samples):
        a = random_set_outside(rng, u)
        verdicts.append(verify_ultra_destroyed(state, a))
        verdicts.append(verify_g_differs(state, random_set(rng)))
        e, f = random_set(rng), random_set(rng)
        verdicts.append(verify_ideal_preserved(state, e, f, prefix=prefix))
        verdicts.append(verify_free_preserved(state, e, f, prefix=prefix))
        verdicts.append(verify_not_atom(state, e, f, bound=bound))
    return {"header": header, "verdicts": verdicts, "summary": summarize(verdicts), "state": state}
