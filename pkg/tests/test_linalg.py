from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from typedtrees.linalg import (
    LinComb,
    Tensor,
    parse_lambda,
    parse_lincomb,
    permute,
    rank,
    tensor,
    tensor_map,
)
from typedtrees.trees import Alphabet, parse_tree, render_tree

A = Alphabet.of(["a", "b", "x", "y", "z"], ["red", "green"])
KEYS = [parse_tree(s, A) for s in ("a", "b", "a[red:b]", "a[green:b]", "x[red:y,green:z]")]

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=7)
combs = st.dictionaries(st.sampled_from(KEYS), fractions, max_size=4).map(LinComb)


def fmt(t):
    return render_tree(t, A)


def test_examples():
    x, y = KEYS[0], KEYS[1]
    assert LinComb({x: 1, y: 0}) == LinComb.basis(x)
    assert LinComb.basis(x) - LinComb.basis(x) == 0
    assert LinComb.basis(x) + LinComb.basis(x, 2) == LinComb.basis(x, 3)
    xy = LinComb.basis(x) + LinComb.basis(y)
    z = LinComb.basis(KEYS[2])
    assert tensor(xy, z) == tensor(LinComb.basis(x), z) + tensor(LinComb.basis(y), z)
    assert tensor(LinComb(), z) == 0
    assert tensor(LinComb.basis(x, 2), LinComb.basis(y, 3)) == LinComb.basis(Tensor((x, y)), 6)


@given(combs, combs, combs, fractions, fractions)
def test_module_axioms(u, v, w, a, b):
    assert (u + v) + w == u + (v + w)
    assert u + v == v + u
    assert u + LinComb() == u
    assert u - u == 0
    assert (u + v) * a == u * a + v * a
    assert u * (a + b) == u * a + u * b
    assert (u * a) * b == u * (a * b)
    assert u * 1 == u


@given(combs, combs)
def test_tensor_bilinear_and_permute(u, v):
    uv = tensor(u, v)
    assert permute(permute(uv, (1, 0)), (1, 0)) == uv
    assert tensor_map(uv, None, None) == uv
    assert tensor(u * 3, v) == uv * 3


@given(combs)
def test_render_parse_round_trip(u):
    text = u.render(fmt)
    assert parse_lincomb(text, lambda s: parse_tree(s, A)) == u


def test_render_is_sorted_and_exact():
    u = LinComb({KEYS[0]: Fraction(-2, 3), KEYS[2]: 1})
    assert u.render(fmt) == "1 * a[red:b] + -2/3 * a"
    assert LinComb().render(fmt) == "0"


def test_parse_lambda_defaults_to_zero():
    lam = parse_lambda("red=2/3", A.types.id)
    assert lam.get(0) == Fraction(2, 3) and lam.get(1, 0) == 0
    with pytest.raises(Exception):
        parse_lambda("blue=1", A.types.id)


def test_rank():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 2], [3, 4]]) == 2
    assert rank([[0, 0]]) == 0
