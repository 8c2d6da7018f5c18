import io

from typedtrees import verify
from typedtrees.cli import run
from typedtrees.verify import CheckResult, Tally, run_suites


def test_tally_keeps_first_counterexample():
    tally = Tally("demo", "check")
    tally(True, lambda: "never")
    tally(False, lambda: "first")
    tally(False, lambda: "second")
    r = tally.result()
    assert not r.ok and r.count == 3
    assert r.line() == "FAIL demo/check: 3 instances; counterexample: first"
    assert CheckResult("demo", "x", 4).line() == "PASS demo/x: 4 instances"


def test_small_suites_pass_and_order_is_fixed():
    names = ["cointeraction", "hopf", "duality"]
    serial = run_suites(names, max_size=3, jobs=1)
    parallel = run_suites(names, max_size=3, jobs=2)
    assert [r.line() for r in serial] == [r.line() for r in parallel]
    assert all(r.ok for r in serial)
    suites = [r.suite for r in serial]
    assert suites == sorted(suites, key=names.index)


def test_verify_exits_one_and_stops_at_first_failure(monkeypatch):
    def broken(max_size):
        return [CheckResult("hopf", "good", 1), CheckResult("hopf", "bad", 2, "x=a"),
                CheckResult("hopf", "later", 1)]

    monkeypatch.setitem(verify.SUITES, "hopf", broken)
    out, err = io.StringIO(), io.StringIO()
    assert run(["verify", "--suite", "hopf"], out, err) == 1
    assert out.getvalue().splitlines() == ["PASS hopf/good: 1 instances",
                                           "FAIL hopf/bad: 2 instances; counterexample: x=a"]


def test_ideal_oracle_agrees_with_cuts():
    from typedtrees import hopf
    from typedtrees.trees import generate_basis

    for n in range(1, 5):
        for f in generate_basis("forests", n, verify.UNIVERSE):
            for _, lam in verify.LAMBDAS:
                assert verify.ck_by_ideals(f, lam) == hopf.ck_coproduct(f, lam)
