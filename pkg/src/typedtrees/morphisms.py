"""Maps between the tree algebras.

``phi`` substitutes edge types through a matrix.  ``psi`` and ``psi_star``
relate forests over (D, T) to untyped forests whose vertices are decorated
by trees with no root edge of a fixed type t0.  ``change_matrix`` builds
explicit invertible matrices that move one λ to another.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from .linalg import Accumulator, Lambda, LinComb, rank
from .prelie import tree_context, universal_morphism
from .trees import (
    UNIT,
    _multisets,
    Alphabet,
    AlphabetError,
    Forest,
    Tree,
    TreeDecoratedAlphabet,
    as_forest,
    connected_partitions,
    flatten,
    generate_basis,
    is_restricted,
)

BLACK = 0  # the single edge type of the untyped side


class DomainError(ValueError):
    """Inputs violate a precondition of a construction."""


@dataclass(frozen=True)
class TypeMatrix:
    """``entries[t][s]``: coefficient of target type ``t`` replacing source type ``s``."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if not self.entries or any(len(r) != len(self.entries[0]) for r in self.entries):
            raise DomainError("matrix rows must be nonempty and of equal length")

    @classmethod
    def of(cls, rows: Iterable[Iterable[Any]]) -> TypeMatrix:
        return cls(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> TypeMatrix:
        return cls.of([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def parse(cls, text: str) -> TypeMatrix:
        rows = [line.split() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]
        try:
            return cls.of(rows)
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"bad matrix entry: {exc}") from None

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def __matmul__(self, other: TypeMatrix) -> TypeMatrix:
        if self.shape[1] != other.shape[0]:
            raise DomainError("matrix shapes do not compose")
        cols = list(zip(*other.entries))
        return TypeMatrix(tuple(tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
                                for row in self.entries))

    def transpose(self) -> TypeMatrix:
        return TypeMatrix(tuple(zip(*self.entries)))

    def apply(self, lam: Lambda) -> Lambda:
        """``Mλ`` for λ indexed by source types."""
        out = {}
        for t, row in enumerate(self.entries):
            v = sum((row[s] * Fraction(lam.get(s, 0)) for s in range(len(row))), Fraction(0))
            if v:
                out[t] = v
        return out

    def apply_transpose(self, lam: Lambda) -> Lambda:
        """``Mᵀλ`` for λ indexed by target types."""
        return self.transpose().apply(lam)

    def is_invertible(self) -> bool:
        n, m = self.shape
        return n == m and rank([list(r) for r in self.entries]) == n

    def render(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.entries)


# --------------------------------------------------------------------------
# type substitution

def _phi_forest(f: Forest, M: TypeMatrix) -> LinComb:
    flat = flatten(f)
    edges = flat.edges()
    rows, cols = M.shape
    options = []
    for v in edges:
        s = flat.etype[v]
        if s >= cols:
            raise AlphabetError(f"type id {s} outside the matrix columns")
        options.append([(t, M.entries[t][s]) for t in range(rows) if M.entries[t][s]])
    acc = Accumulator()
    for choice in itertools.product(*options):
        coeff = Fraction(1)
        for _, c in choice:
            coeff *= c
        for v, (t, _) in zip(edges, choice):
            flat.etype[v] = t
        acc.add_term(flat.forest(), coeff)
    return acc.result()


def phi(x: Forest | Tree | LinComb, M: TypeMatrix) -> LinComb:
    """Φ_M: every edge of type s becomes Σ_t m[t][s]·(edge of type t)."""
    xs = x if isinstance(x, LinComb) else LinComb.basis(x)
    acc = Accumulator()
    for key, c in xs.items():
        image = _phi_forest(as_forest(key), M)
        if isinstance(key, Tree):
            image = image.map_keys(lambda f: f.trees[0])
        acc.add(image, c)
    return acc.result()


# --------------------------------------------------------------------------
# Ψ and its transpose

def restricted_alphabet(base: Alphabet) -> TreeDecoratedAlphabet:
    return TreeDecoratedAlphabet.over(base, "black")


def _check_decorations(f: Forest, t0: int) -> None:
    for tree in f.trees:
        for _, node in tree.vertices():
            if not isinstance(node.dec, Tree) or not is_restricted(node.dec, t0):
                raise DomainError("decoration is not a tree without root edges of type t0")


def psi(x: Forest | Tree | LinComb, t0: int, lam: Lambda) -> LinComb:
    """Ψ_{t0}: vertex decorated by T' ↦ T', untyped edges ↦ •_λ, disjoint union preserved."""
    xs = x if isinstance(x, LinComb) else LinComb.basis(x)
    context = tree_context(lam)
    cache: dict[Tree, LinComb] = {}

    def on_tree(tree: Tree) -> LinComb:
        if tree not in cache:
            cache[tree] = universal_morphism(tree, lambda d: LinComb.basis(d), context)
        return cache[tree]

    acc = Accumulator()
    for key, c in xs.items():
        f = as_forest(key)
        _check_decorations(f, t0)
        part = LinComb.basis(UNIT)
        for tree in f.trees:
            part = _disjoint(part, on_tree(tree))
        if isinstance(key, Tree):
            part = part.map_keys(lambda g: g.trees[0])
        acc.add(part, c)
    return acc.result()


def _disjoint(forests: LinComb, trees: LinComb) -> LinComb:
    acc = Accumulator()
    for f, a in forests.items():
        for t, b in trees.items():
            acc.add_term(f * as_forest(t), a * b)
    return acc.result()


def psi_star(x: Forest | Tree | LinComb, t0: int, lam: Lambda) -> LinComb:
    """Ψ*_{t0}: contract every t0-restricted connected partition.

    Blocks become vertex decorations, surviving edges become untyped and each
    contributes its λ weight.
    """
    xs = x if isinstance(x, LinComb) else LinComb.basis(x)
    acc = Accumulator()
    for key, c in xs.items():
        for part in connected_partitions(as_forest(key), restrict_t0=t0):
            coeff = Fraction(c)
            for _, _, t in part.crossing:
                coeff *= Fraction(lam.get(t, 0))
                if not coeff:
                    break
            if coeff:
                acc.add_term(part.contract(part.blocks.__getitem__, lambda t: BLACK), coeff)
    return acc.result()


def restricted_basis(kind: str, n: int, alphabet: Alphabet, t0: int) -> list[Any]:
    """Untyped trees or forests decorated by t0-restricted trees, graded by underlying vertex count."""
    decs = [(k, d) for k in range(1, n + 1) for d in generate_basis("restricted", k, alphabet, t0)]
    memo: dict[int, list[Tree]] = {}

    def trees(m: int) -> list[Tree]:
        if m not in memo:
            out = []
            for k, d in decs:
                if k > m:
                    break
                branches = [(w, (BLACK, c)) for w in range(1, m - k + 1) for c in trees(w)]
                out.extend(Tree(d, kids) for kids in _multisets(branches, m - k))
            memo[m] = sorted(out, key=lambda tr: tr.key)
        return memo[m]

    if kind == "trees":
        return trees(n)
    if kind == "forests":
        items = [(w, c) for w in range(1, n + 1) for c in trees(w)]
        return sorted((Forest(ts) for ts in _multisets(items, n)), key=lambda f: f.key)
    raise ValueError(f"unknown basis kind {kind!r}")


def decorated_degree(f: Forest) -> int:
    """Number of underlying (D, T) vertices of a forest with tree decorations."""
    return sum(node.dec.size for tree in f.trees for _, node in tree.vertices())


def psi_star_matrix_rank(n: int, alphabet: Alphabet, t0: int, lam: Lambda) -> tuple[int, int]:
    """(number of degree-n forests, rank of Ψ* on them)."""
    sources = generate_basis("forests", n, alphabet)
    images = [psi_star(f, t0, lam) for f in sources]
    keys = sorted({k for im in images for k in im}, key=lambda k: k.sort_key())
    rows = [[im.coefficient(k) for k in keys] for im in images]
    return len(sources), rank(rows) if keys else 0


# --------------------------------------------------------------------------
# change of λ

def change_matrix(lam: Lambda, mu: Lambda, T: int, mode: str, t0: int | None = None) -> TypeMatrix:
    """Explicit invertible M moving λ to μ.

    ``general``: Mᵀλ = μ for any nonzero λ, μ.
    ``pointed``: λ = e_{t0} and μ_{t0} = 1; then M e_{t0} = e_{t0} and Mᵀμ = e_{t0}.
    """
    lam_v = [Fraction(lam.get(t, 0)) for t in range(T)]
    mu_v = [Fraction(mu.get(t, 0)) for t in range(T)]
    if mode == "pointed":
        if t0 is None:
            raise DomainError("pointed mode needs t0")
        if lam_v != [Fraction(int(t == t0)) for t in range(T)]:
            raise DomainError("pointed mode needs lambda equal to the unit vector at t0")
        if mu_v[t0] != 1:
            raise DomainError("pointed mode needs sum of lambda_t mu_t equal to 1")
        return TypeMatrix.of(
            [[int(t == t0) if s == t0 else int(t == s) - mu_v[s] * int(t == t0) for s in range(T)]
             for t in range(T)])
    if mode != "general":
        raise ValueError(f"unknown mode {mode!r}")
    if not any(lam_v) or not any(mu_v):
        raise DomainError("general mode needs nonzero lambda and mu")
    if lam_v == mu_v:
        return TypeMatrix.identity(T)
    i = next(k for k in range(T) if lam_v[k])
    j = i if mu_v[i] else next(k for k in range(T) if mu_v[k])
    li = lam_v[i]
    # A: λ -> λ_i e_i
    A = [[Fraction(int(r == c)) - (lam_v[r] - li * (r == i)) / li * (c == i) for c in range(T)] for r in range(T)]
    # S: e_i <-> e_j
    S = [[Fraction(int((r == c and r not in (i, j)) or (r, c) in ((i, j), (j, i)) or (i == j and r == c == i)))
          for c in range(T)] for r in range(T)]
    # B: λ_i e_j -> μ
    B = [[Fraction(int(r == c)) + (mu_v[r] / li - (r == j)) * (c == j) for c in range(T)] for r in range(T)]
    N = TypeMatrix.of(B) @ TypeMatrix.of(S) @ TypeMatrix.of(A)
    return N.transpose()


def ck_transport_lambda(M: TypeMatrix, lam: Lambda) -> Lambda:
    """Source λ for which Φ_M is a Hopf morphism into CK with target λ."""
    return M.apply_transpose(lam)
