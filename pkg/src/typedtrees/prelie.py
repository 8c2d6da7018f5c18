"""Multiple pre-Lie structure on typed trees.

Products ``•_t`` graft one tree onto every vertex of another; ``•_λ`` is the
λ-weighted sum.  The NAP coproducts remove one root branch.  The
Guin–Oudom action grafts a whole word of trees onto the vertices of a
forest, and :func:`universal_morphism` evaluates the free-algebra morphism
into any caller-supplied multiple pre-Lie algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from operator import attrgetter
from typing import Any, Callable, Iterable, Mapping, Sequence, Union

from .linalg import Accumulator, Branch, Lambda, LinComb, Tensor, weight
from .trees import Forest, Tree, as_forest, flatten

TypeWeight = Union[int, Mapping[int, Any]]


def _type_weights(w: TypeWeight) -> list[tuple[int, Fraction]]:
    if isinstance(w, int):
        return [(w, Fraction(1))]
    return [(t, Fraction(c)) for t, c in sorted(w.items()) if c]


@total_ordering
class DeltaWord:
    """Monomial ``(T_1 δ_{t_1}) ... (T_k δ_{t_k})`` of S(V^{⊕T})."""

    __slots__ = ("factors", "key", "_hash")

    def __init__(self, factors: Iterable[tuple[Tree, int]] = ()) -> None:
        fs = tuple(sorted(factors, key=lambda f: (f[0].key, f[1])))
        self.factors = fs
        self.key = tuple((tree.key, t) for tree, t in fs)
        self._hash = hash(("W", self.key))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DeltaWord) and self.key == other.key

    def __lt__(self, other: DeltaWord) -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"DeltaWord({list(self.factors)!r})"

    def __len__(self) -> int:
        return len(self.factors)

    def __mul__(self, other: DeltaWord) -> DeltaWord:
        return DeltaWord(self.factors + other.factors)

    @property
    def degree(self) -> int:
        return sum(tree.size for tree, _ in self.factors)

    @property
    def ntrees(self) -> int:
        return len(self.factors)

    def sort_key(self) -> tuple:
        return (-self.degree, len(self.factors), self.key)


def _lift(x: Tree | LinComb) -> LinComb:
    return x if isinstance(x, LinComb) else LinComb.basis(x)


# --------------------------------------------------------------------------
# grafting

def graft_at(t: Tree, address: Sequence[int], s: Tree, ty: int) -> Tree:
    """Graft ``s`` on the vertex of ``t`` at ``address`` along a new ``ty`` edge."""
    address = tuple(address)
    t.subtree(address)  # validates

    def rebuild(node: Tree, depth: int) -> Tree:
        if depth == len(address):
            return Tree(node.dec, node.children + ((ty, s),))
        i = address[depth]
        kids = list(node.children)
        kt, kc = kids[i]
        kids[i] = (kt, rebuild(kc, depth + 1))
        return Tree(node.dec, kids)

    return rebuild(t, 0)


def _graft_all(t: Tree, s: Tree, ty: int) -> list[Tree]:
    flat = flatten(t)
    return [flat.build(0, extra={v: [(ty, s)]}) for v in range(flat.n)]


def prelie_product(x: Tree | LinComb, y: Tree | LinComb, w: TypeWeight) -> LinComb:
    """``x •_t y`` for a type id ``w``, or ``x •_λ y`` for a λ mapping."""
    weights = _type_weights(w)
    acc = Accumulator()
    for tx, cx in _lift(x).items():
        for ty_, cy in _lift(y).items():
            for t, lam in weights:
                c = cx * cy * lam
                for tree in _graft_all(tx, ty_, t):
                    acc.add_term(tree, c)
    return acc.result()


def b_plus(d: Any, word: DeltaWord | Iterable[tuple[Tree, int]]) -> Tree:
    factors = word.factors if isinstance(word, DeltaWord) else word
    return Tree(d, [(t, tree) for tree, t in factors])


def graft_root(t: Tree, s: Tree, ty: int) -> Tree:
    return Tree(t.dec, t.children + ((ty, s),))


# --------------------------------------------------------------------------
# NAP coproducts

def nap_coproduct(x: Tree | LinComb, w: TypeWeight) -> LinComb:
    """ρ_t (type id) or ρ_μ (mapping): split off one root branch.

    Keys are ``Tensor((rest, Branch(branch, type)))``.
    """
    weights = dict(_type_weights(w))
    acc = Accumulator()
    for tree, c in _lift(x).items():
        kids = tree.children
        seen: dict[tuple[int, Tree], int] = {}
        for kid in kids:
            seen[kid] = seen.get(kid, 0) + 1
        for (t, branch), mult in seen.items():
            mu = weights.get(t)
            if not mu:
                continue
            rest = list(kids)
            rest.remove((t, branch))
            acc.add_term(Tensor((Tree(tree.dec, rest), Branch(branch, t))), c * mu * mult)
    return acc.result()


def upsilon(x: LinComb, t0: int) -> LinComb:
    """Graft the right factor of each tensor back at the left factor's root."""
    acc = Accumulator()
    for (left, right), c in x.items():
        acc.add_term(graft_root(left, right.tree, t0), c)
    return acc.result()


# --------------------------------------------------------------------------
# Guin–Oudom action

def _graft_word_options(flat, word: Sequence[tuple[Tree, Sequence[tuple[int, Fraction]]]]):
    """Iterate over (coefficient, forest) for every assignment of word factors to vertices."""
    per_factor = [[(v, t, c) for v in range(flat.n) for t, c in types] for _, types in word]
    for choice in itertools.product(*per_factor):
        coeff = Fraction(1)
        extra: dict[int, list[tuple[int, Tree]]] = {}
        for (tree, _), (v, t, c) in zip(word, choice):
            coeff *= c
            extra.setdefault(v, []).append((t, tree))
        yield coeff, flat.forest(extra=extra)


def guin_oudom_action(F: Forest | Tree | LinComb, W: DeltaWord | Forest | LinComb,
                      lam: Lambda | None = None) -> LinComb:
    """``F • W``: graft every factor of ``W`` onto some vertex of ``F``.

    Only vertices of ``F`` itself are targets.  A ``DeltaWord`` fixes each
    factor's edge type; a plain forest word is summed over types with
    weights ``lam``.
    """
    Fs = F if isinstance(F, LinComb) else LinComb.basis(as_forest(F))
    Ws = W if isinstance(W, LinComb) else LinComb.basis(W)
    acc = Accumulator()
    for f, cf in Fs.items():
        f = as_forest(f)
        flat = flatten(f)
        for w, cw in Ws.items():
            if isinstance(w, DeltaWord):
                word = [(tree, [(t, Fraction(1))]) for tree, t in w.factors]
            else:
                if lam is None:
                    raise ValueError("a plain forest word needs a λ weighting")
                types = _type_weights(lam)
                word = [(tree, types) for tree in as_forest(w).trees]
            if not word:
                acc.add_term(f, cf * cw)
                continue
            if flat.n == 0:
                continue
            for c, forest in _graft_word_options(flat, word):
                acc.add_term(forest, cf * cw * c)
    return acc.result()


# --------------------------------------------------------------------------
# universal morphism

@dataclass(frozen=True)
class PrelieContext:
    """A multiple pre-Lie algebra given by its products on ``LinComb`` elements.

    ``product(a, b, t)`` must be bilinear; ``t`` ranges over the source types.
    """

    product: Callable[[LinComb, LinComb, int], LinComb]

    def act(self, a: LinComb, word: Sequence[tuple[LinComb, int]]) -> LinComb:
        """``a • (x_1 δ_{t_1}) ... (x_k δ_{t_k})`` by the Guin–Oudom recursion."""
        if not word:
            return a
        *rest, (x, t) = word
        out = self.product(self.act(a, rest), x, t)
        for i, (xi, ti) in enumerate(rest):
            shifted = list(rest)
            shifted[i] = (self.product(xi, x, t), ti)
            out = out - self.act(a, shifted)
        return out


def tree_context(lam: Lambda | None = None) -> PrelieContext:
    """The trees themselves with ``•_t`` (or ``•_λ`` for every source type)."""
    if lam is None:
        return PrelieContext(lambda a, b, t: prelie_product(a, b, t))
    return PrelieContext(lambda a, b, t: prelie_product(a, b, lam))


class MissingImage(KeyError):
    pass


def universal_morphism(x: Tree | LinComb, images: Mapping[Any, LinComb] | Callable[[Any], LinComb],
                       context: PrelieContext) -> LinComb:
    """Evaluate the morphism sending ``•d`` to ``images[d]``.

    Uses φ(B_d(∏ T_i δ_{t_i})) = a_d • ∏ φ(T_i) δ_{t_i}, computed with the
    target's own Guin–Oudom action.
    """
    lookup = images if callable(images) else images.__getitem__
    cache: dict[Tree, LinComb] = {}

    def phi(tree: Tree) -> LinComb:
        if tree in cache:
            return cache[tree]
        try:
            a = _lift(lookup(tree.dec))
        except KeyError:
            raise MissingImage(f"no image for decoration {tree.dec!r}") from None
        word = [(phi(child), t) for t, child in tree.children]
        cache[tree] = out = context.act(a, word)
        return out

    return _lift(x).map(phi)
