"""The operad of labeled typed trees and its Koszul dual.

A labeled tree is a ``Tree`` whose decorations are distinct integer labels.
``operad_compose`` substitutes a tree for one vertex and re-grafts that
vertex's branches anywhere on the substituted tree.  ``PermWord`` spans the
free multiple permutative algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .linalg import Accumulator, LinComb
from .trees import Tree


class LabelError(ValueError):
    """Missing or colliding labels in a composition."""


class LabeledTree:
    """Typed tree on a set of distinct integer labels, stored as a parent map.

    ``edges`` holds ``(child, parent, type)`` triples; with distinct labels
    this determines the tree, so no canonical ordering is needed.
    """

    __slots__ = ("root", "edges", "_hash", "_labels")

    def __init__(self, root: int, edges: frozenset[tuple[int, int, int]] = frozenset()) -> None:
        self.root = root
        self.edges = edges
        self._hash = hash((root, edges))
        self._labels: tuple[int, ...] | None = None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledTree):
            return NotImplemented
        return self._hash == other._hash and self.root == other.root and self.edges == other.edges

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"LabeledTree({self.root!r}, {sorted(self.edges)!r})"

    @property
    def labels(self) -> tuple[int, ...]:
        if self._labels is None:
            self._labels = tuple(sorted((self.root, *(c for c, _, _ in self.edges))))
        return self._labels

    @property
    def degree(self) -> int:
        return 1 + len(self.edges)

    ntrees = 1

    def to_tree(self) -> Tree:
        kids: dict[int, list[tuple[int, int]]] = {}
        for c, p, t in self.edges:
            kids.setdefault(p, []).append((t, c))

        def build(v: int) -> Tree:
            return Tree(v, [(t, build(c)) for t, c in kids.get(v, [])])

        return build(self.root)

    @classmethod
    def from_tree(cls, tree: Tree) -> LabeledTree:
        edges = []
        for _, node in tree.vertices():
            edges.extend((c.dec, node.dec, t) for t, c in node.children)
        out = cls(tree.dec, frozenset(edges))
        if len(out.labels) != tree.size or len(set(out.labels)) != tree.size:
            raise LabelError("labels must be distinct")
        return out

    def sort_key(self) -> tuple:
        return self.to_tree().sort_key()

    def relabel(self, f) -> LabeledTree:
        return LabeledTree(f(self.root), frozenset((f(c), f(p), t) for c, p, t in self.edges))

    def standardize(self) -> LabeledTree:
        """Renumber labels to 1..n keeping their relative order."""
        order = {lab: i + 1 for i, lab in enumerate(self.labels)}
        return self.relabel(order.__getitem__)


def operad_compose(t: LabeledTree, a: int, s: LabeledTree) -> LinComb:
    """T ∘_a T': put T' in place of vertex a, re-grafting a's branches on any vertex of T'."""
    if a not in t.labels:
        raise LabelError(f"label {a} is not a vertex")
    clash = (set(t.labels) - {a}) & set(s.labels)
    if clash:
        raise LabelError(f"labels {sorted(clash)} occur on both sides")
    return LinComb._raw({k: Fraction(1) for k in compose_terms(t, a, s)})


def compose_terms(t: LabeledTree, a: int, s: LabeledTree) -> list[LabeledTree]:
    """Summands of T ∘_a T' (all with coefficient 1), without label checks."""
    s_labels = s.labels
    base = set(s.edges)
    branches = []
    for c, p, ty in t.edges:
        if p == a:
            branches.append((c, ty))
        elif c == a:
            base.add((s.root, p, ty))
        else:
            base.add((c, p, ty))
    root = s.root if t.root == a else t.root
    if not branches:
        return [LabeledTree(root, frozenset(base))]
    return [LabeledTree(root, frozenset(base.union((c, v, ty) for (c, ty), v in zip(branches, targets))))
            for targets in itertools.product(s_labels, repeat=len(branches))]


def compose_standard(t: LabeledTree, i: int, s: LabeledTree) -> LinComb:
    """∘_i on trees labeled by [n] and [m]; the result is labeled by [n+m-1]."""
    m = s.degree
    shifted_t = t.relabel(lambda x: x + m - 1 if x > i else x)
    shifted_s = s.relabel(lambda x: x + i - 1)
    return operad_compose(shifted_t, i, shifted_s)


def compose_lin(x: LinComb, a: int, y: LinComb) -> LinComb:
    acc = Accumulator()
    for t, c in x.items():
        for s, d in y.items():
            acc.add(operad_compose(t, a, s), c * d)
    return acc.result()


def unit(label: int = 1) -> LabeledTree:
    return LabeledTree(label)


def forget_labels(x: LinComb, decorate) -> LinComb:
    """Map each labeled tree to the decorated tree with ``dec = decorate(label)``."""
    return x.map_keys(lambda lt: relabel_tree(lt.to_tree(), decorate))


def relabel_tree(tree: Tree, f) -> Tree:
    return Tree(f(tree.dec), [(t, relabel_tree(c, f)) for t, c in tree.children])


# --------------------------------------------------------------------------
# labeled trees on a label set

def labeled_trees(label_set: Sequence[int], T: int) -> list[LabeledTree]:
    """Every typed tree whose vertex set is ``label_set``, by brute force over parent arrays."""
    labs = list(label_set)
    n = len(labs)
    out = []
    for root in range(n):
        others = [v for v in range(n) if v != root]
        for parents in itertools.product(range(n), repeat=n - 1):
            parent = dict(zip(others, parents))
            if not _acyclic(parent, root):
                continue
            for types in itertools.product(range(T), repeat=n - 1):
                edges = frozenset((labs[v], labs[parent[v]], ty) for v, ty in zip(others, types))
                out.append(LabeledTree(labs[root], edges))
    out.sort(key=lambda lt: (lt.root, sorted(lt.edges)))
    return out


def _acyclic(parent: dict[int, int], root: int) -> bool:
    for v in parent:
        seen = set()
        while v != root:
            if v in seen:
                return False
            seen.add(v)
            v = parent[v]
    return True


def operad_dimension(n: int, T: int) -> int:
    if n < 1:
        raise ValueError("arity must be positive")
    return T ** (n - 1) * n ** (n - 1)


# --------------------------------------------------------------------------
# free multiple permutative algebra

@dataclass(frozen=True, order=True)
class PermWord:
    """``v_head ⊗ (v_1 δ_{t_1}) ... (v_k δ_{t_k})`` with the tail sorted."""

    head: int
    tail: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, head: int, tail: Iterable[tuple[int, int]] = ()) -> PermWord:
        return cls(head, tuple(sorted(tail)))

    @property
    def degree(self) -> int:
        return 1 + len(self.tail)

    ntrees = 1

    def sort_key(self) -> tuple:
        return (-self.degree, self.head, self.tail)

    def generators(self) -> tuple[int, ...]:
        return tuple(sorted((self.head, *(g for g, _ in self.tail))))

    def render(self) -> str:
        return f"v{self.head}" + "".join(f"(v{g}d{t})" for g, t in self.tail)


def permutative_product(x: LinComb | PermWord, y: LinComb | PermWord, t: int) -> LinComb:
    """(v⊗w) ⋄_t (v'⊗w') = v ⊗ w w' (v' δ_t)."""
    xs = x if isinstance(x, LinComb) else LinComb.basis(x)
    ys = y if isinstance(y, LinComb) else LinComb.basis(y)
    acc = Accumulator()
    for a, c in xs.items():
        for b, d in ys.items():
            acc.add_term(PermWord.of(a.head, a.tail + b.tail + ((b.head, t),)), c * d)
    return acc.result()


def multilinear_words(n: int, T: int) -> set[PermWord]:
    """Words reachable from generators 1..n using each exactly once, by closure under ⋄."""
    gens = tuple(range(1, n + 1))

    @lru_cache(maxsize=None)
    def words(subset: frozenset[int]) -> frozenset[PermWord]:
        if len(subset) == 1:
            return frozenset({PermWord.of(next(iter(subset)))})
        out: set[PermWord] = set()
        items = sorted(subset)
        for k in range(1, len(items)):
            for left in itertools.combinations(items, k):
                ls = frozenset(left)
                rs = subset - ls
                for x in words(ls):
                    for y in words(rs):
                        for t in range(T):
                            out.update(permutative_product(x, y, t))
        return frozenset(out)

    return set(words(frozenset(gens)))


def multilinear_dimension(n: int, T: int) -> int:
    return len(multilinear_words(n, T))


def iter_perm_words(gens: Sequence[int], T: int, max_tail: int) -> Iterator[PermWord]:
    for head in gens:
        for k in range(max_tail + 1):
            for tail in itertools.combinations_with_replacement(
                    [(g, t) for g in gens for t in range(T)], k):
                yield PermWord.of(head, tail)
