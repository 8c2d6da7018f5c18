"""Typed decorated rooted trees and forests.

Trees are stored in canonical form: the children of every vertex are kept
sorted by ``(type id, canonical key of the subtree)``, so two ``Tree`` values
compare equal exactly when the underlying typed decorated trees are
isomorphic.  Decorations and types are small integers indexing an
:class:`Alphabet`; names only matter for parsing and rendering.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from functools import lru_cache, total_ordering
from operator import attrgetter
from typing import Any, Callable, Iterable, Iterator, Sequence


class AlphabetError(ValueError):
    """Unknown decoration or type, or an inconsistent alphabet."""


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int) -> None:
        line = text.count("\n", 0, pos) + 1
        col = pos - (text.rfind("\n", 0, pos) + 1) + 1
        super().__init__(f"{message} at line {line}, column {col}")
        self.line = line
        self.column = col


# --------------------------------------------------------------------------
# alphabets

COLOR_NAMES = ("red", "green", "blue", "orange", "purple")
_IDENT = re.compile(r"[A-Za-z0-9_]+")


def default_type_names(count: int) -> list[str]:
    return [COLOR_NAMES[i] if i < len(COLOR_NAMES) else f"t{i}" for i in range(count)]


def default_decoration_names(count: int) -> list[str]:
    if count <= 26:
        return [chr(ord("a") + i) for i in range(count)]
    return [f"d{i}" for i in range(count)]


@dataclass(frozen=True)
class TypeAlphabet:
    names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.names:
            raise AlphabetError("type alphabet must be nonempty")
        if len(set(self.names)) != len(self.names):
            raise AlphabetError(f"duplicate type names in {self.names}")
        for name in self.names:
            if not _IDENT.fullmatch(name):
                raise AlphabetError(f"invalid type name {name!r}")

    def __len__(self) -> int:
        return len(self.names)

    def id(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlphabetError(f"unknown type {name!r}") from None

    def name(self, type_id: int) -> str:
        return self.names[type_id]


@dataclass(frozen=True)
class DecorationAlphabet:
    """Finite decoration set, optionally with a commutative semigroup law.

    ``table`` maps ordered pairs of decoration ids to their sum; it is checked
    exhaustively for closure, commutativity and associativity.
    """

    names: tuple[str, ...]
    table: dict[tuple[int, int], int] | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.names:
            raise AlphabetError("decoration alphabet must be nonempty")
        if len(set(self.names)) != len(self.names):
            raise AlphabetError(f"duplicate decoration names in {self.names}")
        for name in self.names:
            if not _IDENT.fullmatch(name):
                raise AlphabetError(f"invalid decoration name {name!r}")
        if self.table is not None:
            _check_semigroup(len(self.names), self.table)

    def __len__(self) -> int:
        return len(self.names)

    def id(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise AlphabetError(f"unknown decoration {name!r}") from None

    def name(self, dec: int) -> str:
        return self.names[dec]

    def add(self, x: int, y: int) -> int:
        if self.table is None:
            raise AlphabetError("decoration alphabet has no semigroup law")
        return self.table[x, y]


def _check_semigroup(n: int, table: dict[tuple[int, int], int]) -> None:
    ids = range(n)
    for x, y in itertools.product(ids, ids):
        if (x, y) not in table or table[x, y] not in ids:
            raise AlphabetError(f"semigroup table not closed at ({x}, {y})")
        if table[x, y] != table[y, x]:
            raise AlphabetError(f"semigroup table not commutative at ({x}, {y})")
    for x, y, z in itertools.product(ids, ids, ids):
        if table[table[x, y], z] != table[x, table[y, z]]:
            raise AlphabetError(f"semigroup table not associative at ({x}, {y}, {z})")


def parse_semigroup(spec: str, names: Sequence[str]) -> dict[tuple[int, int], int]:
    """Parse ``a+a=a,a+b=b,...``; each unordered pair may be given once."""
    index = {name: i for i, name in enumerate(names)}
    table: dict[tuple[int, int], int] = {}
    for item in filter(None, (s.strip() for s in spec.split(","))):
        m = re.fullmatch(r"(\w+)\+(\w+)=(\w+)", item)
        if not m or any(g not in index for g in m.groups()):
            raise AlphabetError(f"bad semigroup entry {item!r}")
        x, y, z = (index[g] for g in m.groups())
        table[x, y] = table[y, x] = z
    return table


@dataclass(frozen=True)
class Alphabet:
    decorations: DecorationAlphabet
    types: TypeAlphabet

    @classmethod
    def of(
        cls,
        decorations: Sequence[str],
        types: Sequence[str],
        semigroup: dict[tuple[int, int], int] | None = None,
    ) -> Alphabet:
        return cls(DecorationAlphabet(tuple(decorations), semigroup), TypeAlphabet(tuple(types)))

    @classmethod
    def sized(cls, n_decorations: int, n_types: int) -> Alphabet:
        return cls.of(default_decoration_names(n_decorations), default_type_names(n_types))

    @property
    def D(self) -> int:
        return len(self.decorations)

    @property
    def T(self) -> int:
        return len(self.types)

    def dec_ids(self) -> range:
        return range(self.D)

    def type_ids(self) -> range:
        return range(self.T)

    # hooks used by the parser/renderer; overridden for non-name decorations
    def parse_dec(self, text: str, pos: int) -> tuple[Any, int]:
        m = _IDENT.match(text, pos)
        if not m:
            raise ParseError("expected decoration", text, pos)
        try:
            return self.decorations.id(m.group()), m.end()
        except AlphabetError as exc:
            raise ParseError(str(exc), text, pos) from None

    def render_dec(self, dec: Any) -> str:
        return self.decorations.name(dec)


@dataclass(frozen=True)
class LabelAlphabet(Alphabet):
    """Alphabet whose decorations are arbitrary nonnegative integer labels."""

    @classmethod
    def with_types(cls, types: Sequence[str]) -> LabelAlphabet:
        return cls(DecorationAlphabet(("label",)), TypeAlphabet(tuple(types)))

    def parse_dec(self, text: str, pos: int) -> tuple[Any, int]:
        m = re.compile(r"[0-9]+").match(text, pos)
        if not m:
            raise ParseError("expected integer label", text, pos)
        return int(m.group()), m.end()

    def render_dec(self, dec: Any) -> str:
        return str(dec)


@dataclass(frozen=True)
class TreeDecoratedAlphabet(Alphabet):
    """Decorations are trees over ``base``; rendered as ``{tree}``.

    Used for the untyped forests whose vertices carry restricted trees.
    """

    base: Alphabet | None = None

    @classmethod
    def over(cls, base: Alphabet, type_name: str = "black") -> TreeDecoratedAlphabet:
        return cls(DecorationAlphabet(("tree",)), TypeAlphabet((type_name,)), base)

    def parse_dec(self, text: str, pos: int) -> tuple[Any, int]:
        assert self.base is not None
        if not text.startswith("{", pos):
            raise ParseError("expected '{'", text, pos)
        tree, pos = _parse_tree(text, pos + 1, self.base)
        if not text.startswith("}", pos):
            raise ParseError("expected '}'", text, pos)
        return tree, pos + 1

    def render_dec(self, dec: Any) -> str:
        assert self.base is not None
        return "{" + render_tree(dec, self.base) + "}"


# --------------------------------------------------------------------------
# trees and forests

def _dec_key(dec: Any) -> Any:
    return dec.key if isinstance(dec, Tree) else dec


def _edge_key(edge: tuple[int, Tree]) -> tuple:
    return (edge[0], edge[1].key)


@total_ordering
class Tree:
    """Canonical typed decorated rooted tree.

    ``children`` is a sorted tuple of ``(type, subtree)`` pairs.  ``key`` is a
    nested tuple encoding the whole tree; ordering and equality use it.
    """

    __slots__ = ("dec", "children", "key", "size", "_hash")

    def __init__(self, dec: Any, children: Iterable[tuple[int, Tree]] = ()) -> None:
        kids = sorted(children, key=_edge_key)
        self.dec = dec
        self.children: tuple[tuple[int, Tree], ...] = tuple(kids)
        self.key = (_dec_key(dec), tuple((t, c.key) for t, c in kids))
        self.size: int = 1 + sum(c.size for _, c in kids)
        self._hash = hash(self.key)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Tree):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    def __lt__(self, other: Tree) -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Tree({self.dec!r}, {list(self.children)!r})"

    @property
    def degree(self) -> int:
        return self.size

    ntrees = 1

    def sort_key(self) -> tuple:
        return (-self.size, 1, self.key)

    def root_types(self) -> list[int]:
        return [t for t, _ in self.children]

    def edges(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Yield ``(address, type)`` for every edge; address = path to its child end."""
        for addr, node in self.vertices():
            for i, (t, _) in enumerate(node.children):
                yield addr + (i,), t

    def vertices(self) -> Iterator[tuple[tuple[int, ...], Tree]]:
        """Preorder ``(address, subtree)`` pairs, root first."""
        stack: list[tuple[tuple[int, ...], Tree]] = [((), self)]
        while stack:
            addr, node = stack.pop()
            yield addr, node
            for i in range(len(node.children) - 1, -1, -1):
                stack.append((addr + (i,), node.children[i][1]))

    def subtree(self, address: Sequence[int]) -> Tree:
        node = self
        for i in address:
            try:
                node = node.children[i][1]
            except (IndexError, TypeError):
                raise ValueError(f"invalid vertex address {tuple(address)}") from None
        return node


@total_ordering
class Forest:
    """Multiset of trees in canonical order; the empty forest is the unit."""

    __slots__ = ("trees", "key", "size", "_hash")

    def __init__(self, trees: Iterable[Tree] = ()) -> None:
        ts = tuple(sorted(trees, key=attrgetter("key")))
        self.trees = ts
        self.key = tuple(t.key for t in ts)
        self.size = sum(t.size for t in ts)
        self._hash = hash(("F", self.key))

    @classmethod
    def of(cls, *trees: Tree) -> Forest:
        return cls(trees)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Forest):
            return NotImplemented
        return self._hash == other._hash and self.key == other.key

    def __lt__(self, other: Forest) -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Forest({list(self.trees)!r})"

    def __mul__(self, other: Forest) -> Forest:
        if not self.trees:
            return other
        if not other.trees:
            return self
        return Forest(self.trees + other.trees)

    def __len__(self) -> int:
        return len(self.trees)

    def __iter__(self) -> Iterator[Tree]:
        return iter(self.trees)

    @property
    def degree(self) -> int:
        return self.size

    @property
    def ntrees(self) -> int:
        return len(self.trees)

    def sort_key(self) -> tuple:
        return (-self.size, len(self.trees), self.key)

    def multiplicities(self) -> list[tuple[Tree, int]]:
        return [(t, len(list(g))) for t, g in itertools.groupby(self.trees)]


UNIT = Forest()


def as_forest(x: Tree | Forest) -> Forest:
    return x if isinstance(x, Forest) else Forest((x,))


def leaf(dec: Any) -> Tree:
    return Tree(dec)


def ladder(decs: Sequence[Any], types: Sequence[int]) -> Tree:
    """Path tree ``decs[0] -types[0]- decs[1] - ...`` rooted at ``decs[0]``."""
    if len(types) != len(decs) - 1:
        raise ValueError("a ladder needs one type per edge")
    tree = Tree(decs[-1])
    for dec, t in zip(reversed(decs[:-1]), reversed(types)):
        tree = Tree(dec, [(t, tree)])
    return tree


def canonicalize(raw: Any, alphabet: Alphabet | None = None) -> Tree:
    """Canonical representative of a raw ``(dec, [(type, raw_child), ...])`` tree.

    With an alphabet, decorations/types may be given by name and ids are
    range-checked.
    """
    if isinstance(raw, Tree):
        return Tree(raw.dec, [(t, canonicalize(c, alphabet)) for t, c in raw.children])
    dec, kids = (raw, []) if not isinstance(raw, (tuple, list)) else (raw[0], raw[1] if len(raw) > 1 else [])
    if alphabet is not None:
        dec = _resolve(dec, alphabet.decorations)
    children = []
    for t, c in kids:
        if alphabet is not None:
            t = _resolve(t, alphabet.types)
        children.append((t, canonicalize(c, alphabet)))
    return Tree(dec, children)


def _resolve(x: Any, part: DecorationAlphabet | TypeAlphabet) -> int:
    if isinstance(x, str):
        return part.id(x)
    if isinstance(x, int) and 0 <= x < len(part):
        return x
    kind = "type" if isinstance(part, TypeAlphabet) else "decoration"
    raise AlphabetError(f"unknown {kind} {x!r}")


# --------------------------------------------------------------------------
# literal grammar

def _parse_tree(text: str, pos: int, alphabet: Alphabet) -> tuple[Tree, int]:
    dec, pos = alphabet.parse_dec(text, pos)
    children: list[tuple[int, Tree]] = []
    if pos < len(text) and text[pos] == "[":
        pos += 1
        while True:
            m = _IDENT.match(text, pos)
            if not m:
                raise ParseError("expected edge type", text, pos)
            try:
                t = alphabet.types.id(m.group())
            except AlphabetError as exc:
                raise ParseError(str(exc), text, pos) from None
            pos = m.end()
            if not text.startswith(":", pos):
                raise ParseError("expected ':'", text, pos)
            child, pos = _parse_tree(text, pos + 1, alphabet)
            children.append((t, child))
            if text.startswith(",", pos):
                pos += 1
                continue
            if text.startswith("]", pos):
                pos += 1
                break
            raise ParseError("expected ',' or ']'", text, pos)
    return Tree(dec, children), pos


def parse_tree(text: str, alphabet: Alphabet) -> Tree:
    tree, pos = _parse_tree(text, 0, alphabet)
    if pos != len(text):
        raise ParseError("trailing characters", text, pos)
    return tree


def parse_forest(text: str, alphabet: Alphabet) -> Forest:
    if text == "1":
        return UNIT
    trees = []
    pos = 0
    while True:
        tree, pos = _parse_tree(text, pos, alphabet)
        trees.append(tree)
        if pos == len(text):
            return Forest(trees)
        if text[pos] != " ":
            raise ParseError("expected ' ' between trees", text, pos)
        pos += 1


def render_tree(tree: Tree, alphabet: Alphabet) -> str:
    head = alphabet.render_dec(tree.dec)
    if not tree.children:
        return head
    inner = ",".join(f"{alphabet.types.name(t)}:{render_tree(c, alphabet)}" for t, c in tree.children)
    return f"{head}[{inner}]"


def render_forest(forest: Forest, alphabet: Alphabet) -> str:
    if not forest.trees:
        return "1"
    return " ".join(render_tree(t, alphabet) for t in forest.trees)


# --------------------------------------------------------------------------
# symmetry factors

@lru_cache(maxsize=None)
def tree_symmetry(tree: Tree) -> int:
    # a tree used as a decoration contributes its own automorphisms
    s = tree_symmetry(tree.dec) if isinstance(tree.dec, Tree) else 1
    for (_, child), group in itertools.groupby(tree.children):
        m = len(list(group))
        s *= math.factorial(m) * tree_symmetry(child) ** m
    return s


def symmetry_factor(x: Tree | Forest) -> int:
    """Order of the automorphism group of a typed decorated forest."""
    if isinstance(x, Tree):
        return tree_symmetry(x)
    s = 1
    for tree, m in x.multiplicities():
        s *= math.factorial(m) * tree_symmetry(tree) ** m
    return s


# --------------------------------------------------------------------------
# vertex-level view

@dataclass
class Flat:
    """Preorder vertex arrays of a forest (canonical traversal order)."""

    decs: list[Any]
    parent: list[int]
    etype: list[int]
    kids: list[list[int]]
    roots: list[int]
    address: list[tuple[int, ...]]

    @property
    def n(self) -> int:
        return len(self.decs)

    def edges(self) -> list[int]:
        """Edges, each identified by its lower (child) vertex."""
        return [v for v in range(self.n) if self.parent[v] >= 0]

    def build(self, v: int, cut: frozenset[int] | set[int] = frozenset(),
              extra: dict[int, list[tuple[int, Tree]]] | None = None) -> Tree:
        """Subtree at ``v`` with edges into ``cut`` removed and ``extra`` grafted."""
        children = [(self.etype[c], self.build(c, cut, extra)) for c in self.kids[v] if c not in cut]
        if extra and v in extra:
            children.extend(extra[v])
        return Tree(self.decs[v], children)

    def forest(self, cut: frozenset[int] | set[int] = frozenset(),
               extra: dict[int, list[tuple[int, Tree]]] | None = None) -> Forest:
        return Forest(self.build(r, cut, extra) for r in self.roots)


def flatten(x: Tree | Forest) -> Flat:
    flat = Flat([], [], [], [], [], [])

    def visit(tree: Tree, parent: int, etype: int, addr: tuple[int, ...]) -> int:
        v = len(flat.decs)
        flat.decs.append(tree.dec)
        flat.parent.append(parent)
        flat.etype.append(etype)
        flat.kids.append([])
        flat.address.append(addr)
        for i, (t, child) in enumerate(tree.children):
            flat.kids[v].append(visit(child, v, t, addr + (i,)))
        return v

    for i, tree in enumerate(as_forest(x).trees):
        flat.roots.append(visit(tree, -1, -1, (i,) if isinstance(x, Forest) else ()))
    return flat


# --------------------------------------------------------------------------
# admissible cuts

@dataclass(frozen=True)
class Cut:
    edges: frozenset[tuple[int, ...]]


@dataclass(frozen=True)
class CutResult:
    cut: Cut
    root_part: Tree
    pruned: Forest
    types: tuple[int, ...]


def _antichains(flat: Flat, v: int) -> list[frozenset[int]]:
    """All antichains (possibly empty) of edges strictly below ``v``."""
    options = [frozenset()]
    for c in flat.kids[v]:
        below = _antichains(flat, c)
        child_opts = below + [frozenset((c,))]
        options = [a | b for a in options for b in child_opts]
    return options


def admissible_cuts(tree: Tree) -> list[CutResult]:
    """Nonempty admissible cuts of ``tree`` with their root part and pruned forest."""
    flat = flatten(tree)
    out = []
    for chain in _antichains(flat, 0):
        if not chain:
            continue
        cut = Cut(frozenset(flat.address[c] for c in chain))
        pruned = Forest(flat.build(c, chain) for c in chain)
        types = tuple(sorted(flat.etype[c] for c in chain))
        out.append(CutResult(cut, flat.build(0, chain), pruned, types))
    return out


# --------------------------------------------------------------------------
# connected partitions

@dataclass(frozen=True)
class Partition:
    """Partition of a forest's vertices into connected blocks.

    ``members[i]`` lists the (preorder) vertices of block ``i``; ``crossing``
    lists ``(parent block, child block, edge type)`` for every edge joining two
    blocks, i.e. the skeleton left after contracting each block.
    """

    blocks: tuple[Tree, ...]
    members: tuple[tuple[int, ...], ...]
    crossing: tuple[tuple[int, int, int], ...]
    roots: tuple[int, ...]

    def contract(self, decorate: Callable[[int], Any], retype: Callable[[int], int] = lambda t: t) -> Forest:
        """Forest with one vertex per block, decorated by ``decorate(block index)``."""
        kids: dict[int, list[tuple[int, int]]] = {}
        for p, c, t in self.crossing:
            kids.setdefault(p, []).append((retype(t), c))

        def build(b: int) -> Tree:
            return Tree(decorate(b), [(t, build(c)) for t, c in kids.get(b, [])])

        return Forest(build(r) for r in self.roots)


def _partition_from_cut(flat: Flat, cut: set[int]) -> Partition:
    block_of: dict[int, int] = {}
    members: list[list[int]] = []
    for v in range(flat.n):
        if v in cut or flat.parent[v] < 0:
            block_of[v] = len(members)
            members.append([v])
        else:
            b = block_of[flat.parent[v]]
            block_of[v] = b
            members[b].append(v)
    blocks = tuple(flat.build(m[0], cut) for m in members)
    crossing = tuple((block_of[flat.parent[c]], block_of[c], flat.etype[c]) for c in sorted(cut))
    roots = tuple(block_of[r] for r in flat.roots)
    return Partition(blocks, tuple(tuple(m) for m in members), crossing, roots)


def connected_partitions(x: Tree | Forest, restrict_t0: int | None = None) -> list[Partition]:
    """All partitions of the vertices into blocks that are trees by restriction.

    Such partitions correspond one-to-one with sets of cut edges.  With
    ``restrict_t0`` only partitions whose blocks have no root edge of type
    ``t0`` are kept; the condition is checked while edges are decided so
    forbidden branches are pruned early.
    """
    flat = flatten(x)
    edges = flat.edges()
    out: list[Partition] = []
    cut: set[int] = set()

    def is_block_root(v: int) -> bool:
        return flat.parent[v] < 0 or v in cut

    def rec(i: int) -> None:
        if i == len(edges):
            out.append(_partition_from_cut(flat, cut))
            return
        v = edges[i]
        u = flat.parent[v]
        # keep the edge u -> v inside a block
        if restrict_t0 is None or flat.etype[v] != restrict_t0 or not is_block_root(u):
            rec(i + 1)
        cut.add(v)
        rec(i + 1)
        cut.discard(v)

    rec(0)
    return out


# --------------------------------------------------------------------------
# exhaustive generation

def _multisets(items: Sequence[tuple[int, Any]], total: int, start: int = 0) -> Iterator[list[Any]]:
    """Multisets of ``items`` (sorted by size) whose sizes sum to ``total``."""
    if total == 0:
        yield []
        return
    for i in range(start, len(items)):
        size, item = items[i]
        if size > total:
            break
        for rest in _multisets(items, total - size, i):
            yield [item, *rest]


class _Generator:
    def __init__(self, alphabet: Alphabet) -> None:
        self.alphabet = alphabet
        self.by_size: dict[int, list[Tree]] = {}

    def trees(self, n: int, branch_types: Sequence[int] | None = None) -> list[Tree]:
        if n <= 0:
            return []
        if branch_types is None and n in self.by_size:
            return self.by_size[n]
        types = list(self.alphabet.type_ids()) if branch_types is None else list(branch_types)
        branches = [(k, (t, tree)) for k in range(1, n) for t in types for tree in self.trees(k)]
        out = []
        for d in self.alphabet.dec_ids():
            for kids in _multisets(branches, n - 1):
                out.append(Tree(d, kids))
        out.sort(key=attrgetter("key"))
        if branch_types is None:
            self.by_size[n] = out
        return out

    def forests(self, n: int) -> list[Forest]:
        items = [(k, tree) for k in range(1, n + 1) for tree in self.trees(k)]
        out = [Forest(ts) for ts in _multisets(items, n)]
        out.sort(key=attrgetter("key"))
        return out


def generate_basis(kind: str, n: int, alphabet: Alphabet, t0: int | None = None) -> list[Any]:
    """All canonical trees / forests / ``t0``-restricted trees with ``n`` vertices."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if (kind == "restricted") != (t0 is not None):
        raise ValueError("t0 is required exactly for kind='restricted'")
    gen = _generator(alphabet)
    if kind == "trees":
        return list(gen.trees(n))
    if kind == "forests":
        return gen.forests(n)
    if kind == "restricted":
        return gen.trees(n, [t for t in alphabet.type_ids() if t != t0])
    raise ValueError(f"unknown basis kind {kind!r}")


_GENERATORS: dict[Alphabet, _Generator] = {}


def _generator(alphabet: Alphabet) -> _Generator:
    gen = _GENERATORS.get(alphabet)
    if gen is None:
        gen = _GENERATORS[alphabet] = _Generator(alphabet)
    return gen


def is_restricted(tree: Tree, t0: int) -> bool:
    """True when no edge leaving the root has type ``t0``."""
    return all(t != t0 for t, _ in tree.children)
