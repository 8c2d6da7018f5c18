import itertools
from fractions import Fraction

from typedtrees import prelie
from typedtrees.linalg import Accumulator, Branch, LinComb, Tensor
from typedtrees.trees import Alphabet, Forest, as_forest, generate_basis, parse_forest, parse_tree

A12 = Alphabet.sized(1, 2)
RED, GREEN = 0, 1


def trees_upto(n):
    return [t for k in range(1, n + 1) for t in generate_basis("trees", k, A12)]


def brute_product(x, y, t):
    """Sum of graftings of y on every vertex address of x."""
    acc = Accumulator()
    for addr, _ in x.vertices():
        acc.add_term(prelie.graft_at(x, addr, y, t), 1)
    return acc.result()


def test_graft_examples(rg):
    a, b, c = (parse_tree(s, rg) for s in "abc")
    assert prelie.graft_at(a, (), b, RED) == parse_tree("a[red:b]", rg)
    ab = parse_tree("a[red:b]", rg)
    assert prelie.graft_at(ab, (), c, RED) == parse_tree("a[red:b,red:c]", rg)
    assert prelie.graft_at(ab, (0,), c, GREEN) == parse_tree("a[red:b[green:c]]", rg)


def test_product_examples(rg):
    ab, c = parse_tree("a[red:b]", rg), parse_tree("c", rg)
    expected = LinComb.basis(parse_tree("a[red:b,red:c]", rg)) + LinComb.basis(parse_tree("a[red:b[red:c]]", rg))
    assert prelie.prelie_product(ab, c, RED) == expected
    for t in (RED, GREEN):
        assert prelie.prelie_product(parse_tree("a", rg), parse_tree("b", rg), t) == LinComb.basis(
            prelie.graft_root(parse_tree("a", rg), parse_tree("b", rg), t))
    lam = {RED: Fraction(2), GREEN: Fraction(-1, 3)}
    weighted = prelie.prelie_product(ab, c, lam)
    assert weighted == prelie.prelie_product(ab, c, RED) * 2 + prelie.prelie_product(ab, c, GREEN) * Fraction(-1, 3)


def test_product_matches_brute_force():
    for x in trees_upto(4):
        for y in trees_upto(2):
            for t in (RED, GREEN):
                assert prelie.prelie_product(x, y, t) == brute_product(x, y, t)


def test_multiple_prelie_identity_small():
    def p(u, v, t):
        return prelie.prelie_product(u, v, t)

    ts = trees_upto(2)
    for x, y, z in itertools.product(ts, repeat=3):
        for t, t2 in itertools.product((RED, GREEN), repeat=2):
            lhs = p(x, p(y, z, t), t2) - p(p(x, y, t2), z, t)
            rhs = p(x, p(z, y, t2), t) - p(p(x, z, t), y, t2)
            assert lhs == rhs


def test_nap_examples(rg):
    assert prelie.nap_coproduct(parse_tree("a", rg), RED) == 0
    x = parse_tree("a[red:b,green:c]", rg)
    assert prelie.nap_coproduct(x, RED) == LinComb.basis(
        Tensor((parse_tree("a[green:c]", rg), Branch(parse_tree("b", rg), RED))))
    y = parse_tree("a[red:b,red:b]", rg)
    assert prelie.nap_coproduct(y, RED) == LinComb.basis(
        Tensor((parse_tree("a[red:b]", rg), Branch(parse_tree("b", rg), RED))), 2)


def test_nap_matches_brute_force_over_child_indices():
    for x in trees_upto(5):
        for t in (RED, GREEN):
            acc = Accumulator()
            for i, (ty, branch) in enumerate(x.children):
                if ty == t:
                    rest = x.children[:i] + x.children[i + 1:]
                    acc.add_term(Tensor((prelie.Tree(x.dec, rest), Branch(branch, t))), 1)
            assert prelie.nap_coproduct(x, t) == acc.result()


def test_action_examples(rg):
    F = parse_forest("a b", rg)
    assert prelie.guin_oudom_action(F, prelie.DeltaWord()) == LinComb.basis(F)
    word = prelie.DeltaWord([(parse_tree("b", rg), RED), (parse_tree("c[green:d]", rg), GREEN)])
    got = prelie.guin_oudom_action(parse_tree("a", rg), word)
    assert got == LinComb.basis(as_forest(prelie.b_plus(0, word)))
    # (a b) •_λ c sums graftings on a and on b
    lam = {RED: 1, GREEN: 3}
    c = parse_forest("c", rg)
    expected = Accumulator()
    for t, w in lam.items():
        expected.add_term(parse_forest(f"a[{rg.types.name(t)}:c] b", rg), w)
        expected.add_term(parse_forest(f"a b[{rg.types.name(t)}:c]", rg), w)
    assert prelie.guin_oudom_action(F, c, lam) == expected.result()


def test_b_plus_examples(rg):
    assert prelie.b_plus(rg.decorations.id("a"), []) == parse_tree("a", rg)
    b, c = parse_tree("b", rg), parse_tree("c", rg)
    assert prelie.b_plus(0, [(b, RED)]) == parse_tree("a[red:b]", rg)
    assert prelie.b_plus(0, [(b, RED), (c, GREEN)]) == parse_tree("a[red:b,green:c]", rg)


def test_universal_morphism_identity_and_morphism_property():
    ctx = prelie.tree_context()
    ts = trees_upto(3)
    for x in ts:
        assert prelie.universal_morphism(x, lambda d: LinComb.basis(prelie.Tree(d)), ctx) == LinComb.basis(x)
    # sending the vertex to a two-vertex tree is a morphism of multiple pre-Lie algebras
    image = LinComb.basis(parse_tree("a[green:a]", A12)) + LinComb.basis(parse_tree("a", A12), 2)

    def phi(z):
        return prelie.universal_morphism(z, lambda d: image, ctx)

    for x, y in itertools.product(trees_upto(2), repeat=2):
        for t in (RED, GREEN):
            lhs = LinComb()
            for z, c in prelie.prelie_product(x, y, t).items():
                lhs = lhs + phi(z) * c
            assert lhs == prelie.prelie_product(phi(x), phi(y), t)


def test_kernel_and_upsilon():
    for x in trees_upto(4):
        for t0 in (RED, GREEN):
            alpha = x.root_types().count(t0)
            assert prelie.upsilon(prelie.nap_coproduct(x, t0), t0) == LinComb.basis(x, alpha)
