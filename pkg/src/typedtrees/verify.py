"""Exhaustive property checks shared by the CLI and the acceptance tests.

Each suite returns a list of :class:`CheckResult`.  A check stops at its
first counterexample and records a rendering of it.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Sequence

from . import hopf, morphisms, operad, prelie, series
from .linalg import Accumulator, Lambda, LinComb, Tensor, permute, tensor, tensor_map
from .trees import (
    UNIT,
    Alphabet,
    Forest,
    LabelAlphabet,
    Tree,
    as_forest,
    flatten,
    generate_basis,
    parse_semigroup,
    render_forest,
    render_tree,
)

LAMBDAS: tuple[tuple[str, Lambda], ...] = (
    ("(1,1)", {0: Fraction(1), 1: Fraction(1)}),
    ("(1,0)", {0: Fraction(1)}),
    ("(2/3,-5)", {0: Fraction(2, 3), 1: Fraction(-5)}),
)


@dataclass(frozen=True)
class CheckResult:
    suite: str
    name: str
    count: int
    counterexample: str | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        text = f"{status} {self.suite}/{self.name}: {self.count} instances"
        if not self.ok:
            text += f"; counterexample: {self.counterexample}"
        return text


class Tally:
    """Counts instances; remembers the first failing one."""

    def __init__(self, suite: str, name: str) -> None:
        self.suite = suite
        self.name = name
        self.count = 0
        self.failure: str | None = None

    def __call__(self, ok: bool, describe: Callable[[], str]) -> bool:
        self.count += 1
        if not ok and self.failure is None:
            self.failure = describe()
        return ok

    def result(self) -> CheckResult:
        return CheckResult(self.suite, self.name, self.count, self.failure)


def _bound(default: int, max_size: int | None) -> int:
    return default if max_size is None else max_size


def _forests_upto(n: int, alphabet: Alphabet, nonempty: bool = True) -> list[Forest]:
    start = 1 if nonempty else 0
    return [f for k in range(start, n + 1) for f in generate_basis("forests", k, alphabet)]


def _trees_upto(n: int, alphabet: Alphabet) -> list[Tree]:
    return [t for k in range(1, n + 1) for t in generate_basis("trees", k, alphabet)]


def _fmt(alphabet: Alphabet) -> Callable[[Any], str]:
    def fmt(x: Any) -> str:
        if isinstance(x, Tree):
            return render_tree(x, alphabet)
        if isinstance(x, Forest):
            return render_forest(x, alphabet)
        if isinstance(x, prelie.Branch):
            return f"({render_tree(x.tree, alphabet)}, {alphabet.types.name(x.type)})"
        return repr(x)

    return fmt


UNIVERSE = Alphabet.sized(1, 2)


# --------------------------------------------------------------------------
# enumeration

def suite_enumeration(max_size: int | None = None) -> list[CheckResult]:
    out = []
    n11 = _bound(8, max_size)
    n12 = _bound(6, max_size)
    tally = Tally("enumeration", "tree counts: series = generation = transport")
    for (D, T), N in (((1, 1), n11), ((1, 2), n12), ((2, 1), 6), ((2, 2), 5)):
        s = series.tree_series(D, T, N)
        lifted = series.tree_series(T * D, 1, N)
        alphabet = Alphabet.sized(D, T)
        for n in range(1, N + 1):
            gen = len(generate_basis("trees", n, alphabet))
            if not tally(s[n] == gen and T * s[n] == lifted[n],
                         lambda: f"D={D} T={T} n={n}: series {s[n]}, generated {gen}, transport {lifted[n]}/{T}"):
                break
    out.append(tally.result())

    tally = Tally("enumeration", "forest counts: Euler transform = generation")
    for D, T in ((1, 1), (1, 2), (2, 2)):
        N = min(n12, 5)
        f = series.forest_series(series.tree_series(D, T, N), N)
        alphabet = Alphabet.sized(D, T)
        for n in range(N + 1):
            gen = len(generate_basis("forests", n, alphabet))
            tally(f[n] == gen, lambda: f"D={D} T={T} n={n}: series {f[n]}, generated {gen}")
    out.append(tally.result())

    tally = Tally("enumeration", "corrected closed forms match the series")
    for n in range(1, 8):
        for D in (1, 2, 3):
            for T in (1, 2, 3):
                try:
                    series.closed_form_check(D, T, n)
                    ok, why = True, ""
                except series.FormulaDiscrepancy as exc:
                    ok, why = False, str(exc)
                tally(ok, lambda: why)
    out.append(tally.result())

    tally = Tally("enumeration", "discrepancy report flags exactly n=2,3,4")
    flagged = [d.n for d in series.discrepancy_report()]
    tally(flagged == [2, 3, 4], lambda: f"flagged {flagged}")
    out.append(tally.result())

    tally = Tally("enumeration", "restricted counts: series = generation = closed forms")
    for D, T in ((1, 2), (2, 2), (1, 3)):
        N = n12 if (D, T) == (1, 2) else 4
        s = series.restricted_tree_series(D, T, N)
        alphabet = Alphabet.sized(D, T)
        for n in range(1, N + 1):
            gen = len(generate_basis("restricted", n, alphabet, 0))
            closed = series.evaluate(series.RESTRICTED_FORMS[n], D=D, T=T) if n in series.RESTRICTED_FORMS else gen
            tally(s[n] == gen == closed, lambda: f"D={D} T={T} n={n}: series {s[n]}, generated {gen}, closed {closed}")
    out.append(tally.result())
    return out


# --------------------------------------------------------------------------
# pre-Lie and NAP

def _word_from(trees: Sequence[Tree], types: Sequence[int]) -> prelie.DeltaWord:
    return prelie.DeltaWord(zip(trees, types))


def suite_prelie(max_size: int | None = None) -> list[CheckResult]:
    A = UNIVERSE
    fmt = _fmt(A)
    out = []
    bound = _bound(6, max_size)
    by_size = {k: generate_basis("trees", k, A) for k in range(1, bound + 1)}
    tally = Tally("prelie", "multiple pre-Lie identity")

    def prod(x: Any, y: Any, t: int) -> LinComb:
        return prelie.prelie_product(x, y, t)

    for sx, sy, sz in itertools.product(range(1, bound + 1), repeat=3):
        if sx + sy + sz > bound:
            continue
        for x, y, z in itertools.product(by_size[sx], by_size[sy], by_size[sz]):
            for t, t2 in itertools.product(A.type_ids(), repeat=2):
                lhs = prod(x, prod(y, z, t), t2) - prod(prod(x, y, t2), z, t)
                rhs = prod(x, prod(z, y, t2), t) - prod(prod(x, z, t), y, t2)
                if not tally(lhs == rhs, lambda: f"x={fmt(x)} y={fmt(y)} z={fmt(z)} t={t} t'={t2}"):
                    break
    out.append(tally.result())

    nap_bound = _bound(5, max_size)
    trees = _trees_upto(nap_bound, A)

    def rho(x: LinComb | Tree, t: int) -> LinComb:
        return prelie.nap_coproduct(x, t)

    def rho_left(x: LinComb, t: int) -> LinComb:
        # (ρ_t ⊗ Id) on keys (tree, branch)
        acc = Accumulator()
        for (left, right), c in x.items():
            for (a, b), d in rho(left, t).items():
                acc.add_term(Tensor((a, b, right)), c * d)
        return acc.result()

    tally = Tally("prelie", "NAP coproducts: (ρ_t⊗Id)ρ_t' = ((ρ_t'⊗Id)ρ_t)^(23)")
    for x in trees:
        for t, t2 in itertools.product(A.type_ids(), repeat=2):
            lhs = rho_left(rho(x, t2), t)
            rhs = permute(rho_left(rho(x, t), t2), (0, 2, 1))
            tally(lhs == rhs, lambda: f"x={fmt(x)} t={t} t'={t2}")
    out.append(tally.result())

    tally = Tally("prelie", "NAP compatibility with grafting")
    comp_bound = _bound(4, max_size)
    small = _trees_upto(comp_bound, A)
    for x, y in itertools.product(small, repeat=2):
        if x.size + y.size > comp_bound:
            continue
        for t, t2 in itertools.product(A.type_ids(), repeat=2):
            lhs = rho(prelie.prelie_product(x, y, t2), t)
            acc = Accumulator()
            if t == t2:
                acc.add_term(Tensor((x, prelie.Branch(y, t2))), 1)
            for (a, b), c in rho(x, t).items():
                for g, d in prelie.prelie_product(a, y, t2).items():
                    acc.add_term(Tensor((g, b)), c * d)
                for g, d in prelie.prelie_product(b.tree, y, t2).items():
                    acc.add_term(Tensor((a, prelie.Branch(g, b.type))), c * d)
            tally(lhs == acc.result(), lambda: f"x={fmt(x)} y={fmt(y)} t={t} t'={t2}")
    out.append(tally.result())

    tally = Tally("prelie", "kernel of ρ_t0 and Υ∘ρ_t0 = α_T·id")
    for x in trees:
        for t0 in A.type_ids():
            alpha = sum(1 for t, _ in x.children if t == t0)
            r = rho(x, t0)
            ok = (r == 0) == (alpha == 0) and prelie.upsilon(r, t0) == LinComb.basis(x, alpha)
            tally(ok, lambda: f"x={fmt(x)} t0={t0}")
    out.append(tally.result())

    tally = Tally("prelie", "closed-form action agrees with the recursion")
    go_bound = _bound(5, max_size)
    context = prelie.tree_context()
    for u in _trees_upto(go_bound - 1, A):
        rest = go_bound - u.size
        for k in (1, 2, 3):
            for sizes in itertools.product(range(1, rest + 1), repeat=k):
                if sum(sizes) > rest or list(sizes) != sorted(sizes):
                    continue
                for ws in itertools.product(*(by_size[s] for s in sizes)):
                    for types in itertools.product(A.type_ids(), repeat=k):
                        word = _word_from(ws, types)
                        closed = prelie.guin_oudom_action(u, word).map_keys(lambda f: f.trees[0])
                        rec = context.act(LinComb.basis(u), [(LinComb.basis(w), t) for w, t in word.factors])
                        if not tally(closed == rec, lambda: f"u={fmt(u)} word={word!r}"):
                            break
    out.append(tally.result())

    tally = Tally("prelie", "action on a product splits along the unshuffle coproduct")
    split_bound = _bound(5, max_size)
    forests = _forests_upto(split_bound, A)
    for u, v in itertools.product(forests, repeat=2):
        rest = split_bound - u.size - v.size
        if rest < 1:
            continue
        for w in _forests_upto(rest, A):
            for lam_name, lam in LAMBDAS:
                lhs = prelie.guin_oudom_action(u * v, w, lam)
                acc = Accumulator()
                for (w1, w2), c in hopf.unshuffle_coproduct(w).items():
                    acc.add(hopf.multiply(prelie.guin_oudom_action(u, w1, lam),
                                          prelie.guin_oudom_action(v, w2, lam)), c)
                tally(lhs == acc.result(), lambda: f"u={fmt(u)} v={fmt(v)} w={fmt(w)}")
    out.append(tally.result())
    return out


# --------------------------------------------------------------------------
# Hopf algebras

def ck_by_ideals(f: Forest, lam: Lambda) -> LinComb:
    """Δ^{CK_λ} from its definition on descendant-closed vertex sets of the whole forest."""
    flat = flatten(f)
    acc = Accumulator()
    for choice in itertools.product((False, True), repeat=flat.n):
        if any(flat.parent[v] >= 0 and choice[flat.parent[v]] and not choice[v] for v in range(flat.n)):
            continue
        tops = [v for v in range(flat.n) if choice[v] and (flat.parent[v] < 0 or not choice[flat.parent[v]])]
        coeff = Fraction(1)
        for v in tops:
            if flat.parent[v] >= 0:
                coeff *= Fraction(lam.get(flat.etype[v], 0))
        if not coeff:
            continue
        cut = set(tops)
        left = Forest(flat.build(r, cut) for r in flat.roots if not choice[r])
        right = Forest(flat.build(v) for v in tops)
        acc.add_term(Tensor((left, right)), coeff)
    return acc.result()


def _gl_tensor(x: LinComb, y: LinComb, lam: Lambda) -> LinComb:
    acc = Accumulator()
    for (a, b), c in x.items():
        for (p, q), d in y.items():
            acc.add(tensor(hopf.gl_product(a, p, lam), hopf.gl_product(b, q, lam)), c * d)
    return acc.result()


def suite_hopf(max_size: int | None = None) -> list[CheckResult]:
    A = UNIVERSE
    fmt = _fmt(A)
    out = []
    bound = _bound(5, max_size)
    forests = _forests_upto(bound, A)
    trees = _trees_upto(_bound(6, max_size), A)
    star_bound = _bound(5, max_size)
    small = _forests_upto(star_bound, A)
    for name, lam in LAMBDAS:
        def D(x: Any) -> LinComb:
            return hopf.ck_coproduct(x, lam)

        tally = Tally("hopf", f"CK coassociativity λ={name}")
        for f in forests:
            d = D(f)
            tally(tensor_map(d, D, None) == tensor_map(d, None, D), lambda: f"F={fmt(f)}")
        out.append(tally.result())

        tally = Tally("hopf", f"CK equals the descendant-closed-set definition λ={name}")
        for f in forests:
            tally(D(f) == ck_by_ideals(f, lam), lambda: f"F={fmt(f)}")
        out.append(tally.result())

        tally = Tally("hopf", f"CK multiplicativity λ={name}")
        for f, g in itertools.product(forests, repeat=2):
            if f.size + g.size <= bound and f <= g:
                tally(ck_by_ideals(f * g, lam) == hopf.multiply(D(f), D(g)), lambda: f"F={fmt(f)} G={fmt(g)}")
        out.append(tally.result())

        tally = Tally("hopf", f"CK cuts = recursive formula λ={name}")
        for t in trees:
            tally(hopf.ck_coproduct(t, lam, "cuts") == hopf.ck_coproduct(t, lam, "recursive"), lambda: f"T={fmt(t)}")
        out.append(tally.result())

        tally = Tally("hopf", f"antipode axiom λ={name}")
        for f in [UNIT] + forests:
            d = D(f)
            unit = LinComb.basis(UNIT, hopf.counit(LinComb.basis(f)))
            left = hopf.mult_tensor(tensor_map(d, lambda a: hopf.antipode(a, lam), None))
            right = hopf.mult_tensor(tensor_map(d, None, lambda a: hopf.antipode(a, lam)))
            tally(left == unit and right == unit, lambda: f"F={fmt(f)}")
        out.append(tally.result())

        tally = Tally("hopf", f"GL associativity λ={name}")
        for x, y in itertools.product(small, repeat=2):
            if x.size + y.size >= star_bound:
                continue
            xy = hopf.gl_product(x, y, lam)
            for z in small:
                if x.size + y.size + z.size > star_bound:
                    continue
                lhs = hopf.gl_product(xy, z, lam)
                rhs = hopf.gl_product(x, hopf.gl_product(y, z, lam), lam)
                tally(lhs == rhs, lambda: f"x={fmt(x)} y={fmt(y)} z={fmt(z)}")
        out.append(tally.result())

        tally = Tally("hopf", f"GL unshuffle compatibility λ={name}")
        for x, y in itertools.product(small, repeat=2):
            if x.size + y.size > star_bound:
                continue
            lhs = hopf.unshuffle_coproduct(hopf.gl_product(x, y, lam))
            rhs = _gl_tensor(hopf.unshuffle_coproduct(x), hopf.unshuffle_coproduct(y), lam)
            tally(lhs == rhs, lambda: f"x={fmt(x)} y={fmt(y)}")
        out.append(tally.result())
    return out


def suite_duality(max_size: int | None = None) -> list[CheckResult]:
    A = UNIVERSE
    fmt = _fmt(A)
    bound = _bound(5, max_size)
    by_size = {k: generate_basis("forests", k, A) for k in range(bound + 1)}
    out = []
    for name, lam in LAMBDAS:
        tally = Tally("duality", f"<x*y, z> = <x⊗y, Δz> λ={name}")
        for n in range(bound + 1):
            coproducts = {z: hopf.ck_coproduct(z, lam) for z in by_size[n]}
            for k in range(n + 1):
                for x in by_size[k]:
                    for y in by_size[n - k]:
                        xy = hopf.gl_product(x, y, lam)
                        key = Tensor((x, y))
                        sxy = hopf.pairing(LinComb.basis(key), LinComb.basis(key))
                        for z in by_size[n]:
                            lhs = hopf.pairing(xy, LinComb.basis(z)) if z in xy else Fraction(0)
                            rhs = coproducts[z].coefficient(key) * sxy
                            if not tally(lhs == rhs, lambda: f"x={fmt(x)} y={fmt(y)} z={fmt(z)}"):
                                break
        out.append(tally.result())
    return out


# --------------------------------------------------------------------------
# contraction coproduct

SEMIGROUP_UNIVERSE = Alphabet.of(["a"], ["red", "green"], parse_semigroup("a+a=a", ["a"]))


def suite_cointeraction(max_size: int | None = None) -> list[CheckResult]:
    A = SEMIGROUP_UNIVERSE
    fmt = _fmt(A)
    bound = _bound(4, max_size)
    forests = _forests_upto(bound, A)
    trees = _trees_upto(bound, A)

    def delta(x: Any) -> LinComb:
        return hopf.contraction_coproduct(x, A)

    out = []
    tally = Tally("cointeraction", "δ coassociativity")
    for f in forests:
        d = delta(f)
        tally(tensor_map(d, delta, None) == tensor_map(d, None, delta), lambda: f"F={fmt(f)}")
    out.append(tally.result())

    tally = Tally("cointeraction", "δ multiplicativity")
    for f, g in itertools.product(forests, repeat=2):
        if f.size + g.size <= bound and f <= g:
            tally(delta(f * g) == hopf.multiply(delta(f), delta(g)), lambda: f"F={fmt(f)} G={fmt(g)}")
    out.append(tally.result())

    for name, lam in LAMBDAS:
        tally = Tally("cointeraction", f"(Δ⊗Id)δ = m_(1,3,24)(δ⊗δ)Δ λ={name}")
        for t in trees:
            lhs = tensor_map(delta(t), lambda a: hopf.ck_coproduct(a, lam), None)
            acc = Accumulator()
            for (a, b), c in hopf.ck_coproduct(t, lam).items():
                for (a1, a2), d in delta(a).items():
                    for (b1, b2), e in delta(b).items():
                        acc.add_term(Tensor((a1, b1, a2 * b2)), c * d * e)
            tally(lhs == acc.result(), lambda: f"T={fmt(t)}")
        out.append(tally.result())

    tally = Tally("cointeraction", "full mode projects onto semigroup mode")
    two = Alphabet.of(["a", "b"], ["red", "green"], parse_semigroup("a+a=a,a+b=b,b+b=b", ["a", "b"]))
    for f in _forests_upto(min(bound, 3), two):
        full = Accumulator()
        for d in two.dec_ids():
            full.add(hopf.contraction_full(f, d, two))
        proj = hopf.project_pairs(full.result(), two)
        tally(proj == hopf.contraction_coproduct(f, two), lambda: f"F={render_forest(f, two)}")
    out.append(tally.result())
    return out


# --------------------------------------------------------------------------
# operad

def suite_operad(max_size: int | None = None) -> list[CheckResult]:
    bound = _bound(3, max_size)
    T = 2
    sets = {name: [t for k in range(1, bound + 1) for t in operad.labeled_trees(range(base, base + k), T)]
            for name, base in (("A", 1), ("B", 101), ("C", 201))}

    def show(lt: operad.LabeledTree) -> str:
        return render_tree(lt.to_tree(), _LABELS)

    out = []
    tally = Tally("operad", "unit laws")
    for t in sets["A"]:
        for a in t.labels:
            tally(operad.compose_terms(t, a, operad.unit(a)) == [t], lambda: f"T={show(t)} a={a}")
        tally(operad.compose_terms(operad.unit(0), 0, t) == [t], lambda: f"T={show(t)}")
    out.append(tally.result())

    tally = Tally("operad", "sequential associativity")
    left = {(t, a, s): operad.compose_terms(t, a, s) for t in sets["A"] for a in t.labels for s in sets["B"]}
    right = {(s, b, u): operad.compose_terms(s, b, u) for s in sets["B"] for b in s.labels for u in sets["C"]}
    for (t, a, s), ts in left.items():
        for b in s.labels:
            for u in sets["C"]:
                lhs = _count(operad.compose_terms(x, b, u) for x in ts)
                rhs = _count(operad.compose_terms(t, a, v) for v in right[s, b, u])
                tally(lhs == rhs, lambda: f"T={show(t)} a={a} T'={show(s)} b={b} T''={show(u)}")
    out.append(tally.result())

    tally = Tally("operad", "parallel associativity")
    for t in sets["A"]:
        for a, a2 in itertools.permutations(t.labels, 2):
            for s in sets["B"]:
                ts = left[t, a, s]
                for u in sets["C"]:
                    lhs = _count(operad.compose_terms(x, a2, u) for x in ts)
                    rhs = _count(operad.compose_terms(x, a, s) for x in operad.compose_terms(t, a2, u))
                    tally(lhs == rhs, lambda: f"T={show(t)} a={a} a'={a2} T'={show(s)} T''={show(u)}")
    out.append(tally.result())

    tally = Tally("operad", "generated labeled trees number T^(n-1) n^(n-1)")
    for n in range(1, bound + 3):
        for TT in (1, 2):
            got = len(operad.labeled_trees(range(1, n + 1), TT))
            tally(got == operad.operad_dimension(n, TT), lambda: f"n={n} T={TT}: {got}")
    out.append(tally.result())

    tally = Tally("operad", "multilinear permutative dimension n T^(n-1)")
    for n in range(1, bound + 2):
        for TT in (1, 2, 3):
            got = operad.multilinear_dimension(n, TT)
            tally(got == n * TT ** (n - 1), lambda: f"n={n} T={TT}: {got}")
    out.append(tally.result())

    tally = Tally("operad", "permutative relations")
    rng = random.Random(11)
    words = list(operad.iter_perm_words((1, 2, 3), 2, 2))
    for _ in range(300):
        x, y, z = (LinComb.basis(rng.choice(words)) for _ in range(3))
        t, t2 = rng.randrange(2), rng.randrange(2)
        pp = operad.permutative_product
        lhs = pp(pp(x, y, t), z, t2)
        tally(lhs == pp(x, pp(y, z, t2), t) and lhs == pp(pp(x, z, t2), y, t),
              lambda: f"x={x!r} y={y!r} z={z!r} t={t} t'={t2}")
    out.append(tally.result())

    tally = Tally("operad", "two-vertex generators act by grafting")
    D2 = Alphabet.sized(2, 2)
    small = _trees_upto(bound, D2)
    for x, y in itertools.product(small, repeat=2):
        if x.size + y.size > bound:
            continue
        for t in D2.type_ids():
            lx = _label_tree(x, 1)
            ly = _label_tree(y, 1001)
            decs = {**lx[1], **ly[1]}
            gen = operad.LabeledTree(1, frozenset({(2, 1, t)}))
            inner = operad.operad_compose(gen, 2, ly[0])
            full = Accumulator()
            for g, c in inner.items():
                full.add(operad.operad_compose(g, 1, lx[0]), c)
            got = operad.forget_labels(full.result(), decs.__getitem__)
            tally(got == prelie.prelie_product(x, y, t),
                  lambda: f"x={render_tree(x, D2)} y={render_tree(y, D2)} t={t}")
    out.append(tally.result())

    tally = Tally("operad", "generator relation in arity 3")
    swap = {1: 1, 2: 3, 3: 2}.__getitem__
    for t, t2 in itertools.product(range(T), repeat=2):
        g, g2 = (operad.LabeledTree(1, frozenset({(2, 1, s)})) for s in (t, t2))
        lhs = operad.compose_standard(g2, 2, g) - operad.compose_standard(g, 1, g2)
        rhs = (operad.compose_standard(g, 2, g2) - operad.compose_standard(g2, 1, g)).map_keys(
            lambda lt: lt.relabel(swap))
        tally(lhs == rhs, lambda: f"t={t} t'={t2}")
    out.append(tally.result())
    return out


def _count(groups: Iterable[list[Any]]) -> dict[Any, int]:
    counts: dict[Any, int] = {}
    for group in groups:
        for x in group:
            counts[x] = counts.get(x, 0) + 1
    return counts


def _label_tree(tree: Tree, start: int) -> tuple[operad.LabeledTree, dict[int, Any]]:
    """Give the vertices of ``tree`` consecutive labels; return the label -> decoration map."""
    flat = flatten(tree)
    edges = frozenset((start + v, start + flat.parent[v], flat.etype[v]) for v in flat.edges())
    return operad.LabeledTree(start, edges), {start + v: d for v, d in enumerate(flat.decs)}


_LABELS = LabelAlphabet.with_types(["red", "green"])


# --------------------------------------------------------------------------
# morphisms

def _random_matrix(rng: random.Random, invertible: bool = False) -> morphisms.TypeMatrix:
    while True:
        M = morphisms.TypeMatrix.of([[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2)]
                                     for _ in range(2)])
        if not invertible or M.is_invertible():
            return M


def suite_morphisms(max_size: int | None = None) -> list[CheckResult]:
    A = UNIVERSE
    fmt = _fmt(A)
    bound = _bound(4, max_size)
    forests = _forests_upto(bound, A)
    trees = _trees_upto(bound, A)
    rng = random.Random(2024)
    matrices = [_random_matrix(rng) for _ in range(4)]
    out = []

    tally = Tally("morphisms", "Φ_M∘Φ_M' = Φ_MM'")
    for M, M2 in zip(matrices, matrices[1:] + matrices[:1]):
        for f in forests:
            tally(morphisms.phi(morphisms.phi(f, M2), M) == morphisms.phi(f, M @ M2), lambda: f"F={fmt(f)}")
    out.append(tally.result())

    tally = Tally("morphisms", "Φ_M(x •_λ y) = Φ_M(x) •_Mλ Φ_M(y)")
    for M in matrices[:2]:
        for name, lam in LAMBDAS:
            mlam = M.apply(lam)
            for x, y in itertools.product(trees, repeat=2):
                if x.size + y.size > bound:
                    continue
                lhs = morphisms.phi(prelie.prelie_product(x, y, lam), M)
                rhs = prelie.prelie_product(morphisms.phi(x, M), morphisms.phi(y, M), mlam)
                tally(lhs == rhs, lambda: f"x={fmt(x)} y={fmt(y)} λ={name}")
    out.append(tally.result())

    tally = Tally("morphisms", "(Φ_M⊗Φ_M)Δ_{Mᵀλ} = Δ_λ Φ_M")
    for M in matrices:
        for name, lam in LAMBDAS:
            src = M.apply_transpose(lam)
            for t in trees:
                lhs = tensor_map(hopf.ck_coproduct(t, src), lambda a: morphisms.phi(a, M), lambda a: morphisms.phi(a, M))
                rhs = hopf.ck_coproduct(morphisms.phi(LinComb.basis(as_forest(t)), M), lam)
                tally(lhs == rhs, lambda: f"T={fmt(t)} λ={name}")
    out.append(tally.result())

    tally = Tally("morphisms", "change-of-λ matrices")
    for _ in range(30):
        lam = {t: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for t in range(3)}
        mu = {t: Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for t in range(3)}
        if not any(lam.values()) or not any(mu.values()):
            continue
        M = morphisms.change_matrix(lam, mu, 3, "general")
        got = M.apply_transpose(lam)
        tally(M.is_invertible() and got == {t: v for t, v in mu.items() if v}, lambda: f"λ={lam} μ={mu}")
        t0 = rng.randrange(3)
        mu0 = dict(mu)
        mu0[t0] = Fraction(1)
        M = morphisms.change_matrix({t0: 1}, mu0, 3, "pointed", t0)
        e0 = {t0: Fraction(1)}
        tally(M.is_invertible() and M.apply(e0) == e0 and M.apply_transpose(mu0) == e0,
              lambda: f"t0={t0} μ={mu0}")
    out.append(tally.result())

    R = morphisms.restricted_alphabet(A)
    rfmt = lambda f: render_forest(f, R)  # noqa: E731
    for name, lam in LAMBDAS:
        t0 = 0

        def star(x: Any) -> LinComb:
            return morphisms.psi_star(x, t0, lam)

        tally = Tally("morphisms", f"Ψ* multiplicative λ={name}")
        for f, g in itertools.product(forests, repeat=2):
            if f.size + g.size <= bound and f <= g:
                tally(star(f * g) == hopf.multiply(star(f), star(g)), lambda: f"F={fmt(f)} G={fmt(g)}")
        out.append(tally.result())

        tally = Tally("morphisms", f"Ψ* comultiplicative λ={name}")
        black = {morphisms.BLACK: Fraction(1)}
        for f in forests:
            lhs = tensor_map(hopf.ck_coproduct(f, lam), star, star)
            rhs = hopf.ck_coproduct(star(f), black)
            tally(lhs == rhs, lambda: f"F={fmt(f)}")
        out.append(tally.result())

        tally = Tally("morphisms", f"<Ψu, v> = <u, Ψ*v> λ={name}")
        for n in range(1, bound + 1):
            us = morphisms.restricted_basis("forests", n, A, t0)
            vs = generate_basis("forests", n, A)
            images = {u: morphisms.psi(u, t0, lam) for u in us}
            stars = {v: star(v) for v in vs}
            for u in us:
                for v in vs:
                    lhs = hopf.pairing(images[u], LinComb.basis(v))
                    rhs = hopf.pairing(LinComb.basis(u), stars[v])
                    if not tally(lhs == rhs, lambda: f"u={rfmt(u)} v={fmt(v)}"):
                        break
        out.append(tally.result())

        tally = Tally("morphisms", f"Ψ* graded rank λ={name}")
        for n in range(1, bound + 1):
            dim_src, rk = morphisms.psi_star_matrix_rank(n, A, t0, lam)
            tprime = series.restricted_tree_series(A.D, A.T, n)
            dim_tgt = series.euler_transform(series.decorated_tree_series(tprime, 1, n), n)[n]
            if lam.get(t0):
                ok = dim_src == dim_tgt == rk
            else:
                ok = rk < dim_src
            tally(ok, lambda: f"n={n}: forests {dim_src}, target {dim_tgt}, rank {rk}")
        out.append(tally.result())

    tally = Tally("morphisms", "Ψ* kills the t0 ladder when λ_t0 = 0")
    for t0 in A.type_ids():
        lam = {t: Fraction(1) for t in A.type_ids() if t != t0}
        ladder = Tree(0, [(t0, Tree(0))])
        tally(morphisms.psi_star(ladder, t0, lam) == 0, lambda: f"t0={t0}")
    out.append(tally.result())
    return out


# --------------------------------------------------------------------------
# driver

SUITES: dict[str, Callable[[int | None], list[CheckResult]]] = {
    "enumeration": suite_enumeration,
    "prelie": suite_prelie,
    "hopf": suite_hopf,
    "duality": suite_duality,
    "cointeraction": suite_cointeraction,
    "operad": suite_operad,
    "morphisms": suite_morphisms,
}


def _run_one(args: tuple[str, int | None]) -> list[CheckResult]:
    name, max_size = args
    return SUITES[name](max_size)


def run_suites(names: Sequence[str], max_size: int | None = None, jobs: int = 1) -> list[CheckResult]:
    """Run suites in the given order; results are returned in that order regardless of ``jobs``."""
    work = [(name, max_size) for name in names]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_one, work))
    else:
        chunks = [_run_one(w) for w in work]
    return [r for chunk in chunks for r in chunk]

