"""Command-line front end.

Every command prints JSON lines (one object per line, UTF-8) and ends with a
summary object carrying ``"summary": true``.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
from fractions import Fraction

from .errors import ForcingError, ParseError, SessionError
from .families import canonical_free_sequence, canonical_ideal_family, free_oracle, ideal_oracle
from .generic import ChainState, load_session
from .intervals import parse_set
from .rng import ALGORITHM
from .ultrafilter import PointUltrafilter
from .verifier import (
    DEFAULT_PREFIX,
    FAILED,
    run_step_demo,
    summarize,
    verify_free_preserved,
    verify_g_differs,
    verify_ideal_preserved,
    verify_not_atom,
    verify_ultra_destroyed,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, separators=(",", ":"), sort_keys=False) + "\n")


def _point(text: str) -> Fraction:
    try:
        q = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None
    try:
        PointUltrafilter(q)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    return q


def _natural(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {n}")
    return n


def _set(text: str):
    try:
        return parse_set(text)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="forcingext", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    step = sub.add_parser("step", help="run every verifier on seeded random samples")
    step.add_argument("--seed", type=int, default=42)
    step.add_argument("--samples", type=_natural, default=10)
    step.add_argument("--prefix", type=_natural, default=DEFAULT_PREFIX)
    step.add_argument("--point", type=_point, default=Fraction(1, 3))
    step.add_argument("--bound", type=_natural, default=1 << 16)
    step.add_argument("--session", help="write the chain's request log here")
    step.add_argument("--out", help="write the report here instead of stdout")

    ver = sub.add_parser("verify", help="verify a single claim")
    ver.add_argument("claim", choices=["ultra", "differs", "ideal", "free", "atom"])
    ver.add_argument("--a", type=_set)
    ver.add_argument("--e", type=_set)
    ver.add_argument("--f", type=_set)
    ver.add_argument("--prefix", type=_natural, default=DEFAULT_PREFIX)
    ver.add_argument("--bound", type=_natural, default=1 << 16)
    ver.add_argument("--point", type=_point, default=None)
    ver.add_argument("--session", help="replay this session first, and save it back afterwards")

    orc = sub.add_parser("oracle", help="print both maximality oracle answers for a set")
    orc.add_argument("set", help="e.g. '[0/1,1/8)u[1/2,5/8)' or '{}'")

    show = sub.add_parser("show-chain", help="replay a session file and dump the chain")
    show.add_argument("session")
    return ap


def cmd_step(args, out) -> int:
    report = run_step_demo(args.seed, args.samples, args.prefix, args.point, args.bound)
    sink = open(args.out, "w", encoding="utf-8") if args.out else out
    try:
        _emit(report["header"], sink)
        for v in report["verdicts"]:
            _emit(v.to_json(), sink)
        _emit(report["summary"], sink)
    finally:
        if args.out:
            sink.close()
    if args.session:
        report["state"].save_session(args.session)
    return EXIT_FAIL if report["summary"][FAILED] else EXIT_OK


def cmd_verify(args, out, err) -> int:
    if args.session:
        try:
            state = load_session(args.session)
        except FileNotFoundError:
            state = ChainState(PointUltrafilter(args.point or Fraction(1, 3)))
        except SessionError as exc:
            err.write(f"forcingext: malformed session: {exc}\n")
            return EXIT_USAGE
    else:
        state = ChainState(PointUltrafilter(args.point or Fraction(1, 3)))
    needs = {"ultra": ("a",), "differs": ("a",), "ideal": ("e", "f"), "free": ("e", "f"), "atom": ("e", "f")}
    missing = [k for k in needs[args.claim] if getattr(args, k) is None]
    if missing:
        err.write(f"forcingext: verify {args.claim} needs --{' --'.join(missing)}\n")
        return EXIT_USAGE
    try:
        if args.claim == "ultra":
            v = verify_ultra_destroyed(state, args.a)
        elif args.claim == "differs":
            v = verify_g_differs(state, args.a)
        elif args.claim == "ideal":
            v = verify_ideal_preserved(state, args.e, args.f, prefix=args.prefix)
        elif args.claim == "free":
            v = verify_free_preserved(state, args.e, args.f, prefix=args.prefix)
        else:
            v = verify_not_atom(state, args.e, args.f, bound=args.bound)
    except ForcingError as exc:
        err.write(f"forcingext: {exc}\n")
        return EXIT_USAGE
    _emit(v.to_json(), out)
    summary = summarize([v])
    _emit(summary, out)
    if args.session:
        state.save_session(args.session)
    return EXIT_FAIL if summary[FAILED] else EXIT_OK


def cmd_oracle(args, out, err) -> int:
    try:
        a = parse_set(args.set)
    except ParseError as exc:
        err.write(f"forcingext: cannot parse set: {exc}\n")
        return EXIT_USAGE
    _emit({"oracle": "ideal", **ideal_oracle(a, canonical_ideal_family()).to_json()}, out)
    _emit({"oracle": "free", **free_oracle(a, canonical_free_sequence()).to_json()}, out)
    _emit({"summary": True, "set": str(a)}, out)
    return EXIT_OK


def cmd_show_chain(args, out, err) -> int:
    try:
        state = load_session(args.session)
    except OSError as exc:
        err.write(f"forcingext: cannot read session: {exc}\n")
        return EXIT_USAGE
    except SessionError as exc:
        err.write(f"forcingext: malformed session: {exc}\n")
        return EXIT_USAGE
    for row in state.dump():
        _emit(row, out)
    _emit({"summary": True, "entries": len(state.chain), "point": str(state.u.point),
           "rng": ALGORITHM}, out)
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command == "step":
        return cmd_step(args, out)
    if args.command == "verify":
        return cmd_verify(args, out, err)
    if args.command == "oracle":
        return cmd_oracle(args, out, err)
    return cmd_show_chain(args, out, err)


if __name__ == "__main__":
    sys.exit(main())
