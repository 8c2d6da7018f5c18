import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from typedtrees import series
from typedtrees.trees import (
    Alphabet,
    AlphabetError,
    Forest,
    ParseError,
    Tree,
    admissible_cuts,
    canonicalize,
    connected_partitions,
    flatten,
    generate_basis,
    is_restricted,
    parse_forest,
    parse_tree,
    render_forest,
    render_tree,
    symmetry_factor,
)

A12 = Alphabet.sized(1, 2)
A22 = Alphabet.sized(2, 2)


def raw_trees(max_leaves: int = 6):
    base = st.tuples(st.integers(0, 1), st.just([]))
    return st.recursive(
        base,
        lambda kids: st.tuples(st.integers(0, 1), st.lists(st.tuples(st.integers(0, 1), kids), max_size=3)),
        max_leaves=max_leaves,
    )


def shuffled(raw, rng):
    dec, kids = raw
    kids = [(t, shuffled(c, rng)) for t, c in kids]
    rng.shuffle(kids)
    return (dec, kids)


def test_canonical_order_of_children(rg):
    assert parse_tree("a[red:b,green:c]", rg) == parse_tree("a[green:c,red:b]", rg)
    assert parse_tree("a[red:b,red:c]", rg) == parse_tree("a[red:c,red:b]", rg)
    assert canonicalize(("a", []), rg) == parse_tree("a", rg)


@given(raw_trees(), st.integers(0, 10_000))
def test_canonical_form_ignores_child_order(raw, seed):
    a = canonicalize(raw)
    b = canonicalize(shuffled(raw, random.Random(seed)))
    assert a == b and a.key == b.key and hash(a) == hash(b)


@given(raw_trees())
def test_render_parse_round_trip(raw):
    t = canonicalize(raw)
    assert parse_tree(render_tree(t, A22), A22) == t


def test_unknown_names_raise(rg):
    with pytest.raises(AlphabetError):
        canonicalize(("q", []), rg)
    with pytest.raises(ParseError) as err:
        parse_tree("a[blue:b]", rg)
    assert "column" in str(err.value)
    with pytest.raises(ParseError):
        parse_tree("a[red:b", rg)


def test_forest_literals(rg):
    f = parse_forest("b a[red:b] a", rg)
    assert f.size == 4 and len(f.trees) == 3
    assert parse_forest(render_forest(f, rg), rg) == f
    assert parse_forest("1", rg) == Forest()


# ---- symmetry factor against brute-force automorphism counting

def brute_automorphisms(f: Forest) -> int:
    flat = flatten(f)
    n = flat.n
    edges = {(v, flat.parent[v], flat.etype[v]) for v in flat.edges()}
    count = 0
    for perm in itertools.permutations(range(n)):
        if any(flat.decs[perm[v]] != flat.decs[v] for v in range(n)):
            continue
        if {(perm[c], perm[p], t) for c, p, t in edges} == edges:
            count += 1
    return count


def test_symmetry_examples(rg):
    assert symmetry_factor(parse_tree("a", rg)) == 1
    assert symmetry_factor(parse_forest("a a", rg)) == 2
    assert symmetry_factor(parse_tree("a[red:b,red:b]", rg)) == 2
    assert symmetry_factor(parse_tree("a[red:b,green:b]", rg)) == 1


def test_symmetry_matches_brute_force():
    for n in range(1, 6):
        for f in generate_basis("forests", n, A12):
            assert symmetry_factor(f) == brute_automorphisms(f), render_forest(f, A12)


# ---- admissible cuts against filtering all edge subsets

def brute_cuts(tree: Tree) -> set:
    edges = [addr for addr, _ in tree.edges()]
    out = set()
    for k in range(1, len(edges) + 1):
        for subset in itertools.combinations(edges, k):
            if any(a != b and b[: len(a)] == a for a in subset for b in subset):
                continue
            out.add(frozenset(subset))
    return out


def test_cut_examples(rg):
    assert admissible_cuts(parse_tree("a", rg)) == []
    (cut,) = admissible_cuts(parse_tree("a[red:b]", rg))
    assert cut.root_part == parse_tree("a", rg) and cut.pruned == parse_forest("b", rg) and cut.types == (0,)
    cuts = admissible_cuts(parse_tree("a[red:b,red:c]", rg))
    assert len(cuts) == 3
    double = next(c for c in cuts if len(c.cut.edges) == 2)
    assert double.root_part == parse_tree("a", rg) and double.pruned == parse_forest("b c", rg)


def test_cuts_are_exactly_the_antichains():
    for n in range(1, 7):
        for t in generate_basis("trees", n, A12):
            got = [c.cut.edges for c in admissible_cuts(t)]
            assert len(got) == len(set(got))
            assert set(got) == brute_cuts(t)
            for c in admissible_cuts(t):
                assert c.root_part.size + c.pruned.size == t.size


# ---- connected partitions

def test_partition_examples(rg):
    assert len(connected_partitions(parse_tree("a", rg))) == 1
    assert len(connected_partitions(parse_tree("a[red:a]", rg))) == 2
    assert len(connected_partitions(parse_tree("a[red:a,red:a]", rg))) == 4


def test_partition_count_is_two_to_the_edges():
    # every edge is either kept inside a block or cut, independently
    for n in range(1, 6):
        for f in generate_basis("forests", n, A12):
            edges = len(flatten(f).edges())
            parts = connected_partitions(f)
            assert len(parts) == 2 ** edges
            assert all(sum(b.size for b in p.blocks) == n for p in parts)


# ---- generation

def test_generation_examples(rg):
    assert len(generate_basis("trees", 3, Alphabet.sized(1, 1))) == 2
    A = Alphabet.of(["a"], ["red", "green"])
    forests = generate_basis("forests", 2, A)
    assert sorted(render_forest(f, A) for f in forests) == ["a a", "a[green:a]", "a[red:a]"]
    (only,) = generate_basis("restricted", 2, A, 0)
    assert render_tree(only, A) == "a[green:a]"


def test_generation_is_duplicate_free_and_sized():
    for n in range(1, 6):
        trees = generate_basis("trees", n, A22)
        assert len(set(trees)) == len(trees)
        assert all(t.size == n for t in trees)


def test_restricted_generation_equals_filter():
    for n in range(1, 6):
        for t0 in (0, 1):
            filtered = [t for t in generate_basis("trees", n, A12) if is_restricted(t, t0)]
            assert set(generate_basis("restricted", n, A12, t0)) == set(filtered)


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 2), st.integers(1, 3))
def test_generation_matches_series(D, T):
    N = 4
    s = series.tree_series(D, T, N)
    f = series.forest_series(s, N)
    A = Alphabet.sized(D, T)
    for n in range(1, N + 1):
        assert len(generate_basis("trees", n, A)) == s[n]
        assert len(generate_basis("forests", n, A)) == f[n]
