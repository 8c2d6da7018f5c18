"""Grossman–Larson and Connes–Kreimer Hopf algebras on typed forests.

Both live on the span of forests.  ``gl_product`` with the unshuffle
coproduct gives the cocommutative side; disjoint union with
``ck_coproduct`` gives the commutative side.  ``pairing`` puts them in
duality.  ``contraction_coproduct`` is the extraction–contraction coproduct
that coacts on the Connes–Kreimer side.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Any, Iterable, Sequence

from .linalg import Accumulator, Lambda, LinComb, Tensor, tensor
from .prelie import _type_weights
from .trees import (
    UNIT,
    Alphabet,
    AlphabetError,
    Forest,
    Tree,
    admissible_cuts,
    as_forest,
    connected_partitions,
    flatten,
    symmetry_factor,
)


def _forests(x: Forest | Tree | LinComb) -> LinComb:
    if isinstance(x, LinComb):
        return x.map_keys(as_forest)
    return LinComb.basis(as_forest(x))


def _lam_key(lam: Lambda) -> tuple:
    return tuple(sorted((t, Fraction(c)) for t, c in lam.items() if c))


# --------------------------------------------------------------------------
# unit, counit, products of tensors

def counit(x: Forest | LinComb) -> Fraction:
    return _forests(x).coefficient(UNIT)


def multiply(x: LinComb, y: LinComb) -> LinComb:
    """Disjoint-union product extended bilinearly (factor-wise on tensors)."""
    acc = Accumulator()
    for kx, cx in x.items():
        for ky, cy in y.items():
            if isinstance(kx, Tensor):
                key = Tensor(a * b for a, b in zip(kx, ky))
            else:
                key = kx * ky
            acc.add_term(key, cx * cy)
    return acc.result()


def mult_tensor(x: LinComb) -> LinComb:
    """m: H ⊗ H -> H."""
    return x.map_keys(lambda k: k[0] * k[1])


# --------------------------------------------------------------------------
# unshuffle coproduct and GL product

def _sub_multisets(items: Sequence[Any]) -> list[tuple[tuple[Any, ...], tuple[Any, ...], int]]:
    """(I, complement, multiplicity) over subsets of positions, merged by value."""
    groups = [(v, len(list(g))) for v, g in itertools.groupby(items)]
    out = []
    for choice in itertools.product(*(range(m + 1) for _, m in groups)):
        left, right, mult = [], [], 1
        for (v, m), k in zip(groups, choice):
            left += [v] * k
            right += [v] * (m - k)
            mult *= _binom(m, k)
        out.append((tuple(left), tuple(right), mult))
    return out


def _binom(n: int, k: int) -> int:
    from math import comb
    return comb(n, k)


def unshuffle_coproduct(x: Forest | Tree | LinComb) -> LinComb:
    """Δ(T_1...T_n) = Σ_I ∏_{i∈I} T_i ⊗ ∏_{i∉I} T_i."""
    acc = Accumulator()
    for f, c in _forests(x).items():
        for left, right, mult in _sub_multisets(f.trees):
            acc.add_term(Tensor((Forest(left), Forest(right))), c * mult)
    return acc.result()


def gl_product(x: Forest | Tree | LinComb, y: Forest | Tree | LinComb, lam: Lambda) -> LinComb:
    """F ⋆_λ (T_1...T_n) = Σ_I (F •_λ ∏_{i∈I} T_i) ∏_{i∉I} T_i.

    Each factor of the right forest either stays a separate tree or is
    grafted (type-weighted by λ) onto a vertex of the left forest.
    """
    weights = _type_weights(lam)
    acc = Accumulator()
    for f, cf in _forests(x).items():
        flat = flatten(f)
        for g, cg in _forests(y).items():
            opts = [None] + [(v, t, w) for v in range(flat.n) for t, w in weights]
            for choice in itertools.product(opts, repeat=len(g.trees)):
                coeff = cf * cg
                extra: dict[int, list[tuple[int, Tree]]] = {}
                free = []
                for tree, opt in zip(g.trees, choice):
                    if opt is None:
                        free.append(tree)
                    else:
                        v, t, w = opt
                        coeff *= w
                        extra.setdefault(v, []).append((t, tree))
                acc.add_term(flat.forest(extra=extra) * Forest(free), coeff)
    return acc.result()


# --------------------------------------------------------------------------
# Connes–Kreimer coproduct

@lru_cache(maxsize=None)
def _ck_tree_cuts(tree: Tree, lam: tuple) -> LinComb:
    weights = dict(lam)
    acc = Accumulator()
    acc.add_term(Tensor((as_forest(tree), UNIT)), 1)
    acc.add_term(Tensor((UNIT, as_forest(tree))), 1)
    for cut in admissible_cuts(tree):
        c = Fraction(1)
        for t in cut.types:
            c *= weights.get(t, 0)
            if not c:
                break
        if c:
            acc.add_term(Tensor((as_forest(cut.root_part), cut.pruned)), c)
    return acc.result()


@lru_cache(maxsize=None)
def _reduced_recursive(tree: Tree, lam: tuple) -> LinComb:
    """Δ(T) - 1⊗T, built from the root decomposition T = B_d(∏ T_i δ_{t_i}).

    Each branch either stays attached (contributing its own reduced
    coproduct, whose left factor is a tree) or is cut off whole with weight
    λ_{t_i}.  Left factors are kept as (tree-word) lists until B_d is applied.
    """
    weights = dict(lam)
    # partial: {(tuple of (type, left tree)), right forest) -> coeff}
    partial: dict[tuple[tuple[tuple[int, Tree], ...], Forest], Fraction] = {((), UNIT): Fraction(1)}
    for t, child in tree.children:
        options: list[tuple[tuple[int, Tree] | None, Forest, Fraction]] = []
        for (left, right), c in _reduced_recursive(child, lam).items():
            options.append(((t, left.trees[0]), right, c))
        lt = weights.get(t, 0)
        if lt:
            options.append((None, as_forest(child), Fraction(lt)))
        nxt: dict = {}
        for (word, right), c in partial.items():
            for item, r, co in options:
                key = (word + ((item,) if item else ()), right * r)
                nxt[key] = nxt.get(key, 0) + c * co
        partial = nxt
    acc = Accumulator()
    for (word, right), c in partial.items():
        acc.add_term(Tensor((as_forest(Tree(tree.dec, word)), right)), c)
    return acc.result()


def _ck_tree(tree: Tree, lam: tuple, algorithm: str) -> LinComb:
    if algorithm == "cuts":
        return _ck_tree_cuts(tree, lam)
    if algorithm == "recursive":
        return _reduced_recursive(tree, lam) + LinComb.basis(Tensor((UNIT, as_forest(tree))))
    raise ValueError(f"unknown algorithm {algorithm!r}")


def ck_coproduct(x: Forest | Tree | LinComb, lam: Lambda, algorithm: str = "cuts") -> LinComb:
    """Δ^{CK_λ}, computed tree by tree and multiplied out over forest factors."""
    key = _lam_key(lam)
    acc = Accumulator()
    for f, c in _forests(x).items():
        part = LinComb.basis(Tensor((UNIT, UNIT)))
        for tree in f.trees:
            part = multiply(part, _ck_tree(tree, key, algorithm))
        acc.add(part, c)
    return acc.result()


def reduced_ck(x: Forest | Tree | LinComb, lam: Lambda) -> LinComb:
    """Δ(x) - x⊗1 - 1⊗x."""
    full = ck_coproduct(x, lam)
    xs = _forests(x)
    return full - tensor(xs, LinComb.basis(UNIT)) - tensor(LinComb.basis(UNIT), xs)


# --------------------------------------------------------------------------
# antipode

@lru_cache(maxsize=None)
def _antipode_tree(tree: Tree, lam: tuple) -> LinComb:
    weights = dict(lam)
    out = LinComb.basis(as_forest(tree), -1)
    acc = Accumulator()
    for cut in admissible_cuts(tree):
        c = Fraction(1)
        for t in cut.types:
            c *= weights.get(t, 0)
        if c:
            s_root = _antipode_tree(cut.root_part, lam)
            acc.add(multiply(s_root, LinComb.basis(cut.pruned)), -c)
    return out + acc.result()


def antipode(x: Forest | Tree | LinComb, lam: Lambda) -> LinComb:
    """S(T) = -T - Σ_c λ^c S(R^c) P^c, extended multiplicatively."""
    key = _lam_key(lam)
    acc = Accumulator()
    for f, c in _forests(x).items():
        part = LinComb.basis(UNIT)
        for tree in f.trees:
            part = multiply(part, _antipode_tree(tree, key))
        acc.add(part, c)
    return acc.result()


# --------------------------------------------------------------------------
# pairing

def pairing(x: Forest | Tree | LinComb, y: Forest | Tree | LinComb) -> Fraction:
    """⟨F, F'⟩ = δ_{F,F'} s_F, extended bilinearly (also to tensors)."""
    xs = x if isinstance(x, LinComb) else _forests(x)
    ys = y if isinstance(y, LinComb) else _forests(y)
    total = Fraction(0)
    for k, c in xs.items():
        d = ys.coefficient(k)
        if d:
            total += c * d * _sym(k)
    return total


def _sym(key: Any) -> int:
    if isinstance(key, Tensor):
        s = 1
        for f in key:
            s *= symmetry_factor(f)
        return s
    return symmetry_factor(as_forest(key))


# --------------------------------------------------------------------------
# contraction coproduct

def _block_sum(block: Tree, alphabet: Alphabet) -> Any:
    total = None
    stack = [block]
    while stack:
        node = stack.pop()
        total = node.dec if total is None else alphabet.decorations.add(total, node.dec)
        stack.extend(c for _, c in node.children)
    return total


def contraction_coproduct(x: Forest | Tree | LinComb, alphabet: Alphabet) -> LinComb:
    """δ(F) = Σ_{partitions} F/{T_1..T_k} ⊗ T_1...T_k (semigroup decorations).

    A contracted vertex carries the semigroup sum of its block's
    decorations; surviving edges keep their types.
    """
    if alphabet.decorations.table is None:
        raise AlphabetError("contraction coproduct needs a semigroup law on decorations")
    acc = Accumulator()
    for f, c in _forests(x).items():
        for part in connected_partitions(f):
            sums = [_block_sum(b, alphabet) for b in part.blocks]
            left = part.contract(sums.__getitem__)
            acc.add_term(Tensor((left, Forest(part.blocks))), c)
    return acc.result()


def contraction_full(f: Forest | Tree, d: Any, alphabet: Alphabet) -> LinComb:
    """δ(F, d) on pairs: every re-decoration of the contracted blocks.

    Keys are ``Tensor(((forest, d), pairs))`` where ``pairs`` is a sorted
    tuple of ``(block tree, decoration)``.
    """
    f = as_forest(f)
    acc = Accumulator()
    for part in connected_partitions(f):
        k = len(part.blocks)
        for decs in itertools.product(alphabet.dec_ids(), repeat=k):
            left = (part.contract(decs.__getitem__), d)
            right = tuple(sorted(zip(part.blocks, decs), key=lambda p: (p[0].key, p[1])))
            acc.add_term(Tensor((PairKey(left), PairForest(right))), 1)
    return acc.result()


def contraction_coaction(tree: Tree, alphabet: Alphabet) -> LinComb:
    """δ̄(T): full-mode coaction on a tree (left factor is a plain forest)."""
    acc = Accumulator()
    for part in connected_partitions(tree):
        k = len(part.blocks)
        for decs in itertools.product(alphabet.dec_ids(), repeat=k):
            right = tuple(sorted(zip(part.blocks, decs), key=lambda p: (p[0].key, p[1])))
            acc.add_term(Tensor((part.contract(decs.__getitem__), PairForest(right))), 1)
    return acc.result()


class PairKey(tuple):
    """``(forest, decoration)`` generator of the pair algebra."""

    __slots__ = ()

    @property
    def degree(self) -> int:
        return self[0].size

    @property
    def ntrees(self) -> int:
        return self[0].ntrees

    def sort_key(self) -> tuple:
        return (*self[0].sort_key(), self[1])


class PairForest(tuple):
    """Commutative monomial of ``(tree, decoration)`` pairs."""

    __slots__ = ()

    @property
    def degree(self) -> int:
        return sum(t.size for t, _ in self)

    @property
    def ntrees(self) -> int:
        return len(self)

    def sort_key(self) -> tuple:
        return (-self.degree, len(self), tuple((t.key, d) for t, d in self))


def project_pairs(x: LinComb, alphabet: Alphabet) -> LinComb:
    """ϖ ⊗ ϖ: keep pairs whose decoration is the sum over their tree, drop the labels."""

    def ok(tree_or_forest: Tree | Forest, d: Any) -> bool:
        trees = as_forest(tree_or_forest).trees
        if not trees:
            return False
        total = None
        for t in trees:
            s = _block_sum(t, alphabet)
            total = s if total is None else alphabet.decorations.add(total, s)
        return total == d

    acc = Accumulator()
    for key, c in x.items():
        (left, d), right = key
        if not ok(left, d) or not all(ok(t, e) for t, e in right):
            continue
        acc.add_term(Tensor((left, Forest(t for t, _ in right))), c)
    return acc.result()
