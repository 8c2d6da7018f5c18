"""Generating-function counts of typed decorated trees and forests.

All series are plain lists of Python integers indexed by degree and
truncated at ``N`` (length ``N + 1``).
"""

from __future__ import annotations

import ast
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

IntSeries = list


def _divisor_sums(counts: Sequence[int], N: int, mult: int = 1) -> list[int]:
    # c(k) = sum_{d | k} d * mult * counts[d]
    c = [0] * (N + 1)
    for d in range(1, N + 1):
        if d < len(counts) and counts[d]:
            w = d * mult * counts[d]
            for k in range(d, N + 1, d):
                c[k] += w
    return c


def euler_transform(counts: Sequence[int], N: int, power: int = 1) -> IntSeries:
    """Coefficients of prod_n (1 - X^n)^(-power * counts[n]) up to X^N."""
    c = _divisor_sums(counts, N, power)
    f = [0] * (N + 1)
    f[0] = 1
    for n in range(1, N + 1):
        f[n] = sum(c[k] * f[n - k] for k in range(1, n + 1)) // n
    return f


def forest_series(tree_counts: Sequence[int], N: int) -> IntSeries:
    if tree_counts and tree_counts[0]:
        raise ValueError("tree series must have zero constant term")
    return euler_transform(tree_counts, N)


def decorated_tree_series(root_weights: Sequence[int], T: int, N: int) -> IntSeries:
    """Trees whose roots carry weighted decorations.

    ``root_weights[k]`` counts root decorations of weight ``k``; branches hang
    off the root along any of ``T`` edge types, so the tree series solves
    ``t = P(X) * F(X)^T`` with ``F`` the Euler transform of ``t``.  The
    recursion is degree-synchronous: ``t[n]`` only needs ``F^T`` below ``n``.
    """
    t = [0] * (N + 1)
    g = [0] * (N + 1)  # F^T, built incrementally
    c = [0] * (N + 1)  # divisor sums of T * t
    if N >= 0:
        g[0] = 1
    for n in range(1, N + 1):
        t[n] = sum(root_weights[j] * g[n - j] for j in range(1, min(n, len(root_weights) - 1) + 1))
        if t[n]:
            w = n * T * t[n]
            for k in range(n, N + 1, n):
                c[k] += w
        g[n] = sum(c[k] * g[n - k] for k in range(1, n + 1)) // n
    return t


def tree_series(D: int, T: int, N: int) -> IntSeries:
    if D < 1 or T < 1:
        raise ValueError("D and T must be positive")
    return decorated_tree_series([0, D], T, N)


def restricted_tree_series(D: int, T: int, N: int) -> IntSeries:
    """Counts of trees with no root edge of one fixed type: D X F^(T-1)."""
    if T < 1:
        raise ValueError("T must be positive")
    full = tree_series(D, T, N)
    g = euler_transform(full, N, T - 1)
    return [0] + [D * g[n - 1] for n in range(1, N + 1)]


# --------------------------------------------------------------------------
# closed forms

# one-type polynomials t_{D,1}(n); the typed forms follow by t_{D,T}(n) = t_{TD,1}(n) / T
ONE_TYPE_FORMS = {
    1: "D",
    2: "D**2",
    3: "D**2*(3*D+1)/2",
    4: "D**2*(8*D**2+3*D+1)/3",
    5: "D**2*(125*D**3+54*D**2+31*D+6)/24",
    6: "D**2*(162*D**4+80*D**3+45*D**2+10*D+3)/15",
    7: "D**2*(16807*D**5+9375*D**4+5395*D**3+2025*D**2+838*D+120)/720",
}

# as printed in the source table, symbols and all
PRINTED_FORMS = {
    1: "D",
    2: "D**2*t",
    3: "D**2*T*(3*D+1)/2",
    4: "D**2*T*(8*S**2*T**2+3*D*T+1)/3",
    5: "D**2*T*(125*D**3*T**3+54*D**2*T**2+31*D*T+6)/24",
    6: "D**2*T*(162*D**4*T**4+80*D**3*T**3+45*D**2*T**2+10*D*T+3)/15",
    7: "D**2*T*(16807*D**5*T**5+9375*D**4*T**4+5395*D**3*T**3+2025*D**2*T**2+838*D*T+120)/720",
}

RESTRICTED_FORMS = {
    1: "D",
    2: "D**2*(T-1)",
    3: "D**2*(T-1)*(3*D*T-D+1)/2",
    4: "D**2*(T-1)*(16*D**2*T**2-8*D**2*T+D**2+6*D*T-3*D+2)/6",
}


class UndefinedSymbol(NameError):
    pass


class FormulaDiscrepancy(AssertionError):
    pass


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def evaluate(expr: str, **symbols: int) -> Fraction:
    """Exact value of an arithmetic expression over the given symbols."""

    def ev(node: ast.AST) -> Fraction:
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node, ast.Name):
            if node.id not in symbols:
                raise UndefinedSymbol(node.id)
            return Fraction(symbols[node.id])
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return -ev(node.operand)
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ValueError(f"unsupported expression {ast.dump(node)}")

    return ev(ast.parse(expr, mode="eval"))


def transport_form(n: int, D: int, T: int) -> Fraction:
    """Typed closed form obtained from the one-type polynomial: t_{DT,1}(n) / T."""
    return evaluate(ONE_TYPE_FORMS[n], D=D * T) / T


def closed_form_check(D: int, T: int, n: int) -> int:
    """Corrected closed form at (D, T, n), asserted equal to the series value."""
    if not 1 <= n <= 7:
        raise ValueError("closed forms are tabulated for 1 <= n <= 7")
    value = transport_form(n, D, T)
    expected = tree_series(D, T, n)[n]
    if value != expected:
        raise FormulaDiscrepancy(f"closed form t({n}) at D={D}, T={T} gives {value}, series gives {expected}")
    return int(value)


@dataclass(frozen=True)
class Discrepancy:
    n: int
    printed: str
    reason: str


def discrepancy_report(grid: Sequence[int] = (1, 2, 3), max_n: int = 7) -> list[Discrepancy]:
    """Compare the printed closed forms with the series on ``grid`` x ``grid``.

    Corrected forms must agree everywhere (a mismatch raises); printed forms
    that reference unknown symbols or disagree are reported.
    """
    report = []
    series = {(D, T): tree_series(D, T, max_n) for D in grid for T in grid}
    for n in range(1, max_n + 1):
        for D in grid:
            for T in grid:
                closed_form_check(D, T, n)
        try:
            bad = [(D, T) for D in grid for T in grid
                   if evaluate(PRINTED_FORMS[n], D=D, T=T) != series[D, T][n]]
        except UndefinedSymbol as exc:
            report.append(Discrepancy(n, PRINTED_FORMS[n], f"undefined symbol {exc.args[0]!r}"))
            continue
        if bad:
            D, T = bad[0]
            got = evaluate(PRINTED_FORMS[n], D=D, T=T)
            report.append(Discrepancy(
                n, PRINTED_FORMS[n],
                f"disagrees at D={D}, T={T}: {got} != {series[D, T][n]} ({len(bad)} grid points)"))
    return report
