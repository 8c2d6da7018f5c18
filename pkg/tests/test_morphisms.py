import itertools
import random
from fractions import Fraction

import pytest

from typedtrees import hopf, series
from typedtrees.linalg import LinComb, Tensor
from typedtrees.morphisms import (
    DomainError,
    TypeMatrix,
    change_matrix,
    phi,
    psi,
    psi_star,
    psi_star_matrix_rank,
    restricted_alphabet,
    restricted_basis,
)
from typedtrees.trees import Alphabet, generate_basis, parse_forest, parse_tree

A12 = Alphabet.sized(1, 2)
R = restricted_alphabet(A12)
RED, GREEN = 0, 1
M = TypeMatrix.of([[2, 3], [5, 7]])


def random_matrix(rng):
    return TypeMatrix.of([[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2)] for _ in range(2)])


def forests_upto(n):
    return [f for k in range(1, n + 1) for f in generate_basis("forests", k, A12)]


def test_phi_examples(rg):
    got = phi(parse_tree("x[red:y]", rg), M)
    assert got == LinComb({parse_tree("x[red:y]", rg): 2, parse_tree("x[green:y]", rg): 5})
    got = phi(parse_tree("x[red:z,green:y]", rg), M)
    assert got == LinComb({
        parse_tree("x[red:y,red:z]", rg): 6, parse_tree("x[red:z,green:y]", rg): 14,
        parse_tree("x[red:y,green:z]", rg): 15, parse_tree("x[green:y,green:z]", rg): 35})


def test_phi_functorial():
    rng = random.Random(7)
    for _ in range(5):
        m1, m2 = random_matrix(rng), random_matrix(rng)
        for f in forests_upto(4):
            assert phi(phi(f, m2), m1) == phi(f, m1 @ m2)
    for f in forests_upto(3):
        assert phi(f, TypeMatrix.identity(2)) == LinComb.basis(f)


def test_phi_transports_ck():
    rng = random.Random(11)
    lam = {RED: Fraction(2, 3), GREEN: -5}
    for _ in range(3):
        m = random_matrix(rng)
        source = m.apply_transpose(lam)
        for f in forests_upto(4):
            lhs = LinComb()
            for k, c in hopf.ck_coproduct(f, source).items():
                a, b = phi(k[0], m), phi(k[1], m)
                for (x, cx), (y, cy) in itertools.product(a.items(), b.items()):
                    lhs = lhs + LinComb.basis(Tensor((x, y)), c * cx * cy)
            rhs = hopf.ck_coproduct(phi(f, m), lam)
            assert lhs == rhs


def test_psi_examples():
    lam = {RED: 2, GREEN: 3}
    tree = parse_tree("a[green:a]", A12)
    assert psi(parse_tree("{a[green:a]}", R), RED, lam) == LinComb.basis(tree)
    got = psi(parse_tree("{a}[black:{a}]", R), RED, lam)
    assert got == LinComb({parse_tree("a[red:a]", A12): 2, parse_tree("a[green:a]", A12): 3})
    with pytest.raises(DomainError):
        psi(parse_tree("{a[red:a]}", R), RED, lam)


def test_psi_star_examples():
    lam = {RED: 2, GREEN: 3}
    assert psi_star(parse_forest("a", A12), RED, lam) == LinComb.basis(parse_forest("{a}", R))
    assert psi_star(parse_forest("a[red:a]", A12), RED, lam) == LinComb.basis(parse_forest("{a}[black:{a}]", R), 2)
    assert psi_star(parse_forest("a[green:a]", A12), RED, lam) == LinComb(
        {parse_forest("{a}[black:{a}]", R): 3, parse_forest("{a[green:a]}", R): 1})


def test_psi_star_kernel_witness():
    assert psi_star(parse_forest("a[red:a]", A12), RED, {GREEN: 1}) == 0


def test_psi_star_bijective_in_low_degree():
    for n in range(1, 5):
        dim, r = psi_star_matrix_rank(n, A12, RED, {RED: 1, GREEN: 1})
        assert dim == len(restricted_basis("forests", n, A12, RED)) == r


def test_restricted_basis_counts_match_series():
    forests = series.forest_series(series.tree_series(1, 2, 5), 5)
    for n in range(1, 6):
        assert len(restricted_basis("forests", n, A12, RED)) == forests[n]


def test_adjointness():
    lam = {RED: Fraction(2, 3), GREEN: -5}
    for v in forests_upto(4):
        image = psi_star(v, RED, lam)
        for u in restricted_basis("forests", v.size, A12, RED):
            lhs = hopf.pairing(psi(u, RED, lam), LinComb.basis(v))
            rhs = hopf.pairing(LinComb.basis(u), image)
            assert lhs == rhs


def test_change_matrix_examples():
    assert change_matrix({RED: 1}, {RED: 1}, 2, "general") == TypeMatrix.identity(2)
    m = change_matrix({RED: 1}, {GREEN: 1}, 2, "general")
    assert m.apply_transpose({RED: 1}) == {GREEN: 1}
    assert m == TypeMatrix.of([[0, 1], [1, 0]])
    assert change_matrix({RED: 1}, {RED: 1}, 2, "pointed", RED) == TypeMatrix.identity(2)


def test_change_matrix_properties():
    rng = random.Random(3)
    for _ in range(50):
        lam = {t: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for t in range(3)}
        mu = {t: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for t in range(3)}
        if not any(lam.values()) or not any(mu.values()):
            with pytest.raises(DomainError):
                change_matrix(lam, mu, 3, "general")
            continue
        m = change_matrix(lam, mu, 3, "general")
        assert m.is_invertible()
        got = m.apply_transpose(lam)
        assert all(got.get(t, 0) == mu[t] for t in range(3))
        mu[1] = Fraction(1)
        m = change_matrix({1: 1}, mu, 3, "pointed", 1)
        assert m.is_invertible()
        assert m.apply({1: 1}) == {1: 1}
        got = m.apply_transpose(mu)
        assert all(got.get(t, 0) == (t == 1) for t in range(3))


def test_change_matrix_preconditions():
    with pytest.raises(DomainError):
        change_matrix({RED: 1, GREEN: 1}, {RED: 1}, 2, "pointed", RED)
    with pytest.raises(DomainError):
        change_matrix({RED: 1}, {RED: 2}, 2, "pointed", RED)


def test_matrix_parse_errors():
    with pytest.raises(DomainError):
        TypeMatrix.parse("1 2\n3")
    with pytest.raises(DomainError):
        TypeMatrix.parse("1 x")
