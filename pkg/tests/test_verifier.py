import json

import pytest

from conftest import S
from forcingext.errors import PreconditionError
from forcingext.families import FreeSeq, IdealFamily, canonical_free_sequence, canonical_ideal_family
from forcingext.generic import ChainState
from forcingext.intervals import EMPTY, FULL, IntervalSet
from forcingext.poset import Condition
from forcingext.verifier import (
    FAILED,
    INCONCLUSIVE,
    VERIFIED,
    recheck,
    run_step_demo,
    verify_free_preserved,
    verify_g_differs,
    verify_ideal_preserved,
    verify_not_atom,
    verify_ultra_destroyed,
)

X = canonical_ideal_family()
C = canonical_free_sequence()


def test_g_differs_examples():
    st = ChainState()
    v = verify_g_differs(st, EMPTY)
    assert v.verified and v.witnesses["side"] == "g-a"
    assert st.g_contains(v.witnesses["n"])
    v = verify_g_differs(ChainState(), FULL)
    assert v.verified and v.witnesses["side"] == "a-g"
    assert v.witnesses["n"] in v.witnesses["condition"].p1
    v = verify_g_differs(ChainState(), S("[1/2,3/4)"))
    # p0 - a = [1/8,1/4), whose first point is enc(4) = 1/8
    assert v.verified and v.witnesses["n"] == 4


def test_ultra_destroyed_examples():
    v = verify_ultra_destroyed(ChainState(), S("[1/2,3/4)"))
    assert v.verified and (v.witnesses["n0"], v.witnesses["n1"]) == (4, 5)
    st = ChainState()
    v = verify_ultra_destroyed(st, EMPTY)
    assert v.verified and st.g_contains(v.witnesses["n0"]) and not st.g_contains(v.witnesses["n1"])
    v = verify_ultra_destroyed(ChainState(), S("[3/4,1)"))
    p = v.witnesses["condition"]
    assert v.verified and v.witnesses["n0"] in p.p0 - S("[3/4,1)")
    with pytest.raises(PreconditionError):
        verify_ultra_destroyed(ChainState(), S("[1/4,1/2)"))


def test_ideal_preserved_examples():
    v = verify_ideal_preserved(ChainState(), S("[0,1/2)"), EMPTY)
    assert v.verified and v.witnesses["clause"] == 3 and v.witnesses["cover"] == (1,)
    v = verify_ideal_preserved(ChainState(), S("[0,1/2)"), S("[0,1/2)"))
    assert v.verified and v.witnesses["clause"] == 1 and v.witnesses["normalized"] == S("[0,1/2)")
    v = verify_ideal_preserved(ChainState(), EMPTY, S("[0,1/2)"))
    assert v.verified and v.witnesses["clause"] == 3


def test_free_preserved_examples():
    v = verify_free_preserved(ChainState(), S("[0,1/2)"), EMPTY)
    assert v.verified and v.witnesses["clause"] == 3 and v.witnesses["i"] == 1
    assert v.witnesses["violation"] == {"F": [1, "b"], "G": []}
    v = verify_free_preserved(ChainState(), S("[0,1/4)"), S("[0,1/4)"))
    assert v.verified and v.witnesses["clause"] == 1
    assert v.witnesses["violation"] == {"F": [1], "G": [2, "b"]}
    v = verify_free_preserved(ChainState(), EMPTY, EMPTY)
    assert v.verified and v.witnesses["violation"] == {"F": [0, "b"], "G": []}


def test_not_atom_examples():
    v = verify_not_atom(ChainState(), S("[0,1/2)"), S("[0,1/2)"))
    assert v.verified and (v.witnesses["n"], v.witnesses["m"]) == (0, 2)
    # half-open [0,1/4) already leaves out enc(2) = 1/4
    assert v.witnesses["separator"] == S("[0,1/4)")
    v = verify_not_atom(ChainState(), EMPTY, EMPTY, bound=64)
    assert v.status == INCONCLUSIVE
    st = ChainState()
    v = verify_not_atom(st, FULL, EMPTY, bound=64)
    assert v.verified and st.g_contains(v.witnesses["n"]) and st.g_contains(v.witnesses["m"])


def test_not_atom_one_member_is_inconclusive():
    # only enc(0) = 0 lies in [0,1/1024) among the first 512 points
    v = verify_not_atom(ChainState(), S("[0,1/1024)"), S("[0,1/1024)"), bound=512)
    assert v.status == INCONCLUSIVE and v.witnesses["members"] == [0]


def test_recheck_accepts_real_and_rejects_tampered_verdicts():
    st = ChainState()
    good = [
        verify_ultra_destroyed(st, S("[1/2,3/4)")),
        verify_g_differs(st, S("[0,1/2)")),
        verify_ideal_preserved(st, S("[0,1/2)"), EMPTY),
        verify_free_preserved(st, S("[1/8,1/2)"), S("[1/2,1)")),
        verify_not_atom(st, S("[0,1/2)"), S("[0,1/2)")),
    ]
    for v in good:
        assert v.verified and recheck(v, st.u, X, C)
    bad = good[0]
    bad.witnesses["n1"] = bad.witnesses["n0"]
    assert not recheck(bad, st.u, X, C)
    bad = good[2]
    bad.witnesses["condition"] = Condition(EMPTY, EMPTY)
    assert not recheck(bad, st.u, X, C)
    bad = good[4]
    bad.witnesses["separator"] = FULL
    assert not recheck(bad, st.u, X, C)


def test_foreign_family_is_rejected():
    other = IdealFamily(lambda n: IntervalSet.make(n + 1, (1, 2)))
    with pytest.raises(PreconditionError):
        verify_ideal_preserved(ChainState(), EMPTY, EMPTY, X=other)
    with pytest.raises(PreconditionError):
        verify_free_preserved(ChainState(), EMPTY, EMPTY, C=FreeSeq(lambda i: EMPTY))


def test_custom_sequence_on_its_own_chain():
    top = FreeSeq(lambda i: IntervalSet.make(i + 2, (0, 1)), search_bound=2)
    st = ChainState(C=top)
    v = verify_free_preserved(st, S("[0,1/32)u[1/4,1)"), EMPTY, prefix=512)
    assert v.verified and recheck(v, st.u, st.X, top)


def test_verdict_json_is_plain():
    v = verify_ideal_preserved(ChainState(), S("[0,1/2)"), EMPTY)
    obj = json.loads(json.dumps(v.to_json()))
    assert obj["claim"] == "IdealPreserved" and obj["status"] == VERIFIED
    assert obj["witnesses"]["condition"] == {"p0": "[1/2,1/1)", "p1": "[0/1,1/4)"}


def test_step_demo_is_deterministic_and_clean():
    a = run_step_demo(seed=42, samples=4, prefix=256, bound=4096)
    b = run_step_demo(seed=42, samples=4, prefix=256, bound=4096)
    lines = lambda r: [json.dumps(v.to_json()) for v in r["verdicts"]]  # noqa: E731
    assert lines(a) == lines(b)
    assert a["summary"]["total"] == 20 and a["summary"][FAILED] == 0
    assert a["header"]["rng"] == "splitmix64/rejection-v1"
    assert all(recheck(v, a["state"].u, X, C) for v in a["verdicts"])


def test_step_demo_with_no_samples():
    r = run_step_demo(samples=0)
    assert r["verdicts"] == [] and r["summary"]["total"] == 0
