"""Acceptance criteria 1-11, one PASS/FAIL line each.

Run under pytest (the lines are repeated in the terminal summary) or
directly: ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import io
import sys
import tempfile
import time
from pathlib import Path
from typing import Callable

from golden_cases import GOLDEN, MATRIX, materialize
from typedtrees import series, verify
from typedtrees.cli import run
from typedtrees.trees import Alphabet, generate_basis

LINES: list[str] = []


def _checks(suite: str, *prefixes: str) -> tuple[bool, str]:
    # the whole suite runs every time, so the reported time is an upper bound
    results = [r for r in verify.SUITES[suite](None) if not prefixes or r.name.startswith(prefixes)]
    assert results, f"no checks matched {prefixes} in {suite}"
    bad = [r for r in results if not r.ok]
    if bad:
        return False, bad[0].line()
    return True, f"{sum(r.count for r in results)} instances in {len(results)} checks"


def enumeration_values() -> tuple[bool, str]:
    expected = {(1, 1): [1, 1, 2, 4, 9, 20, 48, 115], (1, 2): [1, 2, 7, 26, 107, 458]}
    for (D, T), values in expected.items():
        N = len(values)
        by_series = series.tree_series(D, T, N)[1:]
        by_generation = [len(generate_basis("trees", n, Alphabet.sized(D, T))) for n in range(1, N + 1)]
        by_transport = [x // T for x in series.tree_series(T * D, 1, N)[1:]]
        if not by_series == by_generation == by_transport == values:
            return False, f"D={D} T={T}: {by_series} / {by_generation} / {by_transport}"
    ok, detail = _checks("enumeration", "tree counts")
    return ok, "t_{1,1}(1..8) and t_{1,2}(1..6) by series, generation, transport; " + detail


def closed_forms() -> tuple[bool, str]:
    flagged = {d.n: d.printed for d in series.discrepancy_report()}
    want = {2: "D**2*t", 3: "(3*D+1)", 4: "8*S**2*T**2"}
    if sorted(flagged) != [2, 3, 4] or any(w not in flagged[n] for n, w in want.items()):
        return False, f"flagged {flagged}"
    return _checks("enumeration", "corrected closed forms", "discrepancy report")


def restricted() -> tuple[bool, str]:
    values = series.restricted_tree_series(1, 2, 6)[1:]
    ok, detail = _checks("enumeration", "restricted counts")
    return ok, f"t'_(1,2)(1..6) = {values}; {detail}"


def prelie_identity() -> tuple[bool, str]:
    return _checks("prelie", "multiple pre-Lie identity")


def nap() -> tuple[bool, str]:
    return _checks("prelie", "NAP", "kernel")


def golden() -> tuple[bool, str]:
    with tempfile.TemporaryDirectory() as tmp:
        matrix = Path(tmp) / "m.txt"
        matrix.write_text(MATRIX)
        for name, args, expected in GOLDEN:
            out, err = io.StringIO(), io.StringIO()
            status = run(materialize(args, str(matrix)), out, err)
            if status != 0 or out.getvalue() != expected + "\n":
                return False, f"{name}: got {out.getvalue()!r} (exit {status}, {err.getvalue()!r})"
    return True, f"{len(GOLDEN)} worked examples byte-exact"


CRITERIA: dict[int, tuple[str, float, Callable[[], tuple[bool, str]]]] = {
    1: ("enumeration", 10, enumeration_values),
    2: ("closed forms", 5, closed_forms),
    3: ("restricted counts", 10, restricted),
    4: ("multiple pre-Lie identity", 60, prelie_identity),
    5: ("NAP suite", 60, nap),
    6: ("Hopf suite", 120, lambda: _checks("hopf")),
    7: ("duality", 120, lambda: _checks("duality")),
    8: ("cointeraction", 60, lambda: _checks("cointeraction")),
    9: ("operad suite", 120, lambda: _checks("operad")),
    10: ("morphism suite", 120, lambda: _checks("morphisms")),
    11: ("worked-example golden tests", 5, golden),
}


def evaluate(number: int) -> tuple[bool, str]:
    title, limit, check = CRITERIA[number]
    start = time.perf_counter()
    ok, detail = check()
    elapsed = time.perf_counter() - start
    in_time = elapsed < limit
    status = "PASS" if ok and in_time else "FAIL"
    line = f"{status} criterion {number} ({title}): {detail} [{elapsed:.1f}s, limit {limit:g}s]"
    if ok and not in_time:
        line += " time limit exceeded"
    LINES.append(line)
    print(line)
    return ok and in_time, line


def test_criterion_1():
    assert evaluate(1)[0], LINES[-1]


def test_criterion_2():
    assert evaluate(2)[0], LINES[-1]


def test_criterion_3():
    assert evaluate(3)[0], LINES[-1]


def test_criterion_4():
    assert evaluate(4)[0], LINES[-1]


def test_criterion_5():
    assert evaluate(5)[0], LINES[-1]


def test_criterion_6():
    assert evaluate(6)[0], LINES[-1]


def test_criterion_7():
    assert evaluate(7)[0], LINES[-1]


def test_criterion_8():
    assert evaluate(8)[0], LINES[-1]


def test_criterion_9():
    assert evaluate(9)[0], LINES[-1]


def test_criterion_10():
    assert evaluate(10)[0], LINES[-1]


def test_criterion_11():
    assert evaluate(11)[0], LINES[-1]


if __name__ == "__main__":
    results = [evaluate(n)[0] for n in CRITERIA]
    sys.exit(0 if all(results) else 1)
