"""Finite formal linear combinations with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping, NamedTuple, Union

Scalar = Union[int, Fraction]
Lambda = dict  # type id -> Fraction; absent entries are zero


class SortMismatch(TypeError):
    pass


class Tensor(tuple):
    """Ordered tuple of basis elements used as a key of a tensor power."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "Tensor" + tuple.__repr__(self)

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self)

    @property
    def ntrees(self) -> int:
        return sum(f.ntrees for f in self)

    def sort_key(self) -> tuple:
        return (-self.degree, self.ntrees, tuple(f.sort_key() for f in self))


class Branch(NamedTuple):
    """A tree together with the type of the edge that held it."""

    tree: Any
    type: int

    @property
    def degree(self) -> int:
        return self.tree.size

    ntrees = 1

    def sort_key(self) -> tuple:
        return (-self.tree.size, 1, (self.tree.key, self.type))


def _sort_of(key: Any) -> Any:
    if isinstance(key, Tensor):
        return tuple(_sort_of(k) for k in key)
    return type(key)


class LinComb(Mapping):
    """Immutable finite linear combination ``{basis: nonzero coefficient}``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Any, Scalar] | Iterable[tuple[Any, Scalar]] | None = None) -> None:
        acc: dict[Any, Fraction] = {}
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, c in items:
                if c:
                    acc[key] = acc.get(key, 0) + c
        self._terms = {k: Fraction(v) for k, v in acc.items() if v}

    @classmethod
    def basis(cls, key: Any, coeff: Scalar = 1) -> LinComb:
        return cls({key: coeff})

    @classmethod
    def _raw(cls, terms: dict[Any, Fraction]) -> LinComb:
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    def __getitem__(self, key: Any) -> Fraction:
        return self._terms[key]

    def coefficient(self, key: Any) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator[Any]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        return f"LinComb({self._terms!r})"

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LinComb):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: LinComb) -> LinComb:
        return combine(self, 1, other)

    def __sub__(self, other: LinComb) -> LinComb:
        return combine(self, -1, other)

    def __neg__(self) -> LinComb:
        return LinComb._raw({k: -v for k, v in self._terms.items()})

    def __mul__(self, c: Scalar) -> LinComb:
        if isinstance(c, LinComb):
            return NotImplemented
        if not c:
            return LinComb()
        return LinComb._raw({k: v * c for k, v in self._terms.items()})

    __rmul__ = __mul__

    def terms(self) -> list[tuple[Any, Fraction]]:
        """Terms in canonical display order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def map(self, f: Callable[[Any], LinComb]) -> LinComb:
        """Linear extension of ``f`` from basis elements."""
        acc = Accumulator()
        for key, c in self._terms.items():
            acc.add(f(key), c)
        return acc.result()

    def map_keys(self, f: Callable[[Any], Any]) -> LinComb:
        return LinComb((f(k), c) for k, c in self._terms.items())

    def render(self, fmt: Callable[[Any], str]) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c} * {render_key(k, fmt)}" for k, c in self.terms())


def render_key(key: Any, fmt: Callable[[Any], str]) -> str:
    if isinstance(key, Tensor):
        return " | ".join(fmt(k) for k in key)
    return fmt(key)


class Accumulator:
    """Mutable sum used inside hot loops; freeze with :meth:`result`."""

    __slots__ = ("terms",)

    def __init__(self) -> None:
        self.terms: dict[Any, Fraction] = {}

    def add_term(self, key: Any, c: Scalar) -> None:
        if c:
            self.terms[key] = self.terms.get(key, 0) + c

    def add(self, x: LinComb, c: Scalar = 1) -> None:
        if not c:
            return
        t = self.terms
        for k, v in x._terms.items():
            t[k] = t.get(k, 0) + v * c

    def result(self) -> LinComb:
        return LinComb._raw({k: Fraction(v) for k, v in self.terms.items() if v})


def combine(a: LinComb, c: Scalar, b: LinComb) -> LinComb:
    """``a + c*b`` with zero terms dropped."""
    if a and b:
        sa, sb = _sort_of(next(iter(a))), _sort_of(next(iter(b)))
        if sa != sb:
            raise SortMismatch(f"cannot combine {sa} with {sb}")
    terms = dict(a._terms)
    if c:
        for k, v in b._terms.items():
            s = terms.get(k, 0) + c * v
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
    return LinComb._raw(terms)


def _flat(key: Any) -> tuple:
    return tuple(key) if isinstance(key, Tensor) else (key,)


def tensor(a: LinComb, b: LinComb) -> LinComb:
    """Bilinear tensor product; keys are concatenated into a ``Tensor``."""
    acc: dict[Any, Fraction] = {}
    for ka, ca in a._terms.items():
        fa = _flat(ka)
        for kb, cb in b._terms.items():
            key = Tensor(fa + _flat(kb))
            acc[key] = acc.get(key, 0) + ca * cb
    return LinComb._raw({k: v for k, v in acc.items() if v})


def tensor_map(x: LinComb, *maps: Callable[[Any], LinComb] | None) -> LinComb:
    """Apply ``maps[i]`` to factor ``i`` of every tensor key (``None`` = identity)."""
    acc = Accumulator()
    for key, c in x._terms.items():
        part = LinComb.basis(Tensor(()))
        for factor, f in zip(key, maps):
            image = LinComb.basis(factor) if f is None else f(factor)
            part = tensor(part, image)
        acc.add(part, c)
    return acc.result()


def permute(x: LinComb, order: tuple[int, ...]) -> LinComb:
    """Reorder tensor factors: new factor ``i`` is old factor ``order[i]``."""
    return x.map_keys(lambda k: Tensor(k[i] for i in order))


def scalar_lambda(value: Scalar, types: Iterable[int]) -> Lambda:
    return {t: Fraction(value) for t in types}


def parse_lambda(spec: str, type_id: Callable[[str], int]) -> Lambda:
    """Parse ``red=1,green=-2/3``; missing types are zero."""
    lam: Lambda = {}
    for item in filter(None, (s.strip() for s in spec.split(","))):
        name, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"bad lambda entry {item!r}; expected type=rational")
        lam[type_id(name.strip())] = Fraction(value.strip())
    return {t: v for t, v in lam.items() if v}


def weight(lam: Mapping[int, Scalar], t: int) -> Fraction:
    return Fraction(lam.get(t, 0))


def rank(rows: list[list[Scalar]]) -> int:
    """Rank over the rationals by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col] / p
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def matmul(a: list[list[Scalar]], b: list[list[Scalar]]) -> list[list[Fraction]]:
    return [[sum((Fraction(a[i][k]) * b[k][j] for k in range(len(b))), Fraction(0))
             for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a: list[list[Scalar]]) -> list[list[Scalar]]:
    return [list(col) for col in zip(*a)]


def parse_lincomb(text: str, parse_basis: Callable[[str], Any]) -> LinComb:
    """Inverse of :meth:`LinComb.render` for a given basis parser."""
    if text == "0":
        return LinComb()
    acc = Accumulator()
    for term in text.split(" + "):
        coeff, sep, body = term.partition(" * ")
        if not sep:
            raise ValueError(f"bad term {term!r}")
        factors = body.split(" | ")
        key = parse_basis(factors[0]) if len(factors) == 1 else Tensor(parse_basis(f) for f in factors)
        acc.add_term(key, Fraction(coeff))
    return acc.result()
