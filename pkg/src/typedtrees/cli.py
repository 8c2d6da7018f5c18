"""Command-line interface.

Every subcommand prints deterministic text that its own parsers read back.
Exit status: 0 on success, 1 on a domain error (bad literal, unknown type,
failed verification, ...), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import contextlib
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from . import hopf, morphisms, operad, prelie, series
from .linalg import Branch, LinComb, parse_lambda
from .trees import (
    Alphabet,
    AlphabetError,
    DecorationAlphabet,
    Forest,
    LabelAlphabet,
    ParseError,
    Tree,
    TypeAlphabet,
    default_decoration_names,
    default_type_names,
    generate_basis,
    parse_forest,
    parse_semigroup,
    parse_tree,
    render_forest,
    render_tree,
)
from .verify import SUITES, run_suites

DEFAULT_TYPES = ("red", "green")
CONFIG_KEYS = {"decorations", "types", "lambda", "semigroup", "t0", "max_size", "jobs"}


class UsageError(Exception):
    pass


# --------------------------------------------------------------------------
# configuration

def read_config(path: str) -> dict[str, str]:
    """``key=value`` lines; ``#`` starts a comment.  Only the first ``=`` splits."""
    out = {}
    for number, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not sep or key not in CONFIG_KEYS:
            raise UsageError(f"{path}:{number}: expected one of {sorted(CONFIG_KEYS)} as key=value")
        out[key] = value.strip()
    return out


def _merged(args: argparse.Namespace, key: str) -> Any:
    value = getattr(args, key, None)
    if value is None:
        value = args.config_values.get(key)
    return value


def _split(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


_TOKEN = re.compile(r"\b[A-Za-z0-9_]+\b(?!\s*:)")


def infer_decorations(literals: Sequence[str]) -> list[str]:
    """Identifiers in the literals that are not edge types, sorted by name."""
    names: set[str] = set()
    for text in literals:
        if text.strip() == "1":
            continue
        names.update(_TOKEN.findall(text))
    return sorted(names)


def build_alphabet(args: argparse.Namespace, literals: Sequence[str] = ()) -> Alphabet:
    types_spec = _merged(args, "types")
    if types_spec:
        types = _split(types_spec)
    elif getattr(args, "T", None):
        types = default_type_names(args.T)
    else:
        types = list(DEFAULT_TYPES)
    dec_spec = _merged(args, "decorations")
    if dec_spec:
        decs = _split(dec_spec)
    elif getattr(args, "D", None):
        decs = default_decoration_names(args.D)
    else:
        decs = infer_decorations(literals) or ["a"]
    semigroup_spec = _merged(args, "semigroup")
    table = parse_semigroup(semigroup_spec, decs) if semigroup_spec else None
    if table is None and len(decs) == 1:
        table = {(0, 0): 0}
    return Alphabet(DecorationAlphabet(tuple(decs), table), TypeAlphabet(tuple(types)))


def lambda_of(args: argparse.Namespace, alphabet: Alphabet) -> dict[int, Fraction]:
    spec = _merged(args, "lambda_")
    if spec is None:
        spec = args.config_values.get("lambda")
    if spec is None:
        return {t: Fraction(1) for t in alphabet.type_ids()}
    return parse_lambda(spec, alphabet.types.id)


def type_of(alphabet: Alphabet, name: str | None) -> int:
    if name is None:
        raise UsageError("a type is required")
    return alphabet.types.id(name)


# --------------------------------------------------------------------------
# rendering helpers

def _key_renderer(alphabet: Alphabet) -> Callable[[Any], str]:
    def fmt(key: Any) -> str:
        if isinstance(key, Tree):
            return render_tree(key, alphabet)
        if isinstance(key, Forest):
            return render_forest(key, alphabet)
        if isinstance(key, Branch):
            return f"{alphabet.types.name(key.type)}:{render_tree(key.tree, alphabet)}"
        if isinstance(key, operad.LabeledTree):
            return render_tree(key.to_tree(), alphabet)
        raise TypeError(f"cannot render {key!r}")

    return fmt


def parse_branch(text: str, alphabet: Alphabet) -> Branch:
    name, sep, rest = text.partition(":")
    if not sep:
        raise ParseError("expected 'type:tree'", text, 0)
    try:
        t = alphabet.types.id(name)
    except AlphabetError as exc:
        raise ParseError(str(exc), text, 0) from None
    return Branch(parse_tree(rest, alphabet), t)


def show(x: LinComb, alphabet: Alphabet) -> str:
    return x.render(_key_renderer(alphabet))


# --------------------------------------------------------------------------
# subcommands

def cmd_count(args: argparse.Namespace) -> str:
    if args.closed_forms:
        lines = []
        for d in series.discrepancy_report():
            lines.append(f"n={d.n}\t{d.printed}\t{d.reason}")
        return "\n".join(lines)
    D = args.D or 1
    T = args.T or 1
    N = args.n
    if args.kind == "forests":
        values = series.forest_series(series.tree_series(D, T, N), N)
        start = 0
    elif args.kind == "restricted":
        values = series.restricted_tree_series(D, T, N)
        start = 1
    else:
        values = series.tree_series(D, T, N)
        start = 1
    if args.generate:
        alphabet = Alphabet.sized(D, T)
        t0 = 0 if args.kind == "restricted" else None
        values = [len(generate_basis(args.kind, n, alphabet, t0)) for n in range(N + 1)]
    return "\n".join(f"{n}\t{values[n]}" for n in range(start, N + 1))


def cmd_enumerate(args: argparse.Namespace) -> str:
    alphabet = build_alphabet(args)
    t0 = None
    if args.kind == "restricted":
        t0 = type_of(alphabet, _merged(args, "t0") or alphabet.types.name(0))
    items = generate_basis(args.kind, args.n, alphabet, t0)
    render = render_forest if args.kind == "forests" else render_tree
    return "\n".join(render(x, alphabet) for x in items)


def _address(text: str) -> tuple[int, ...]:
    if text in ("", "root"):
        return ()
    try:
        return tuple(int(p) for p in text.split("."))
    except ValueError:
        raise UsageError(f"bad vertex address {text!r}; expected dotted child indices like 0.1") from None


def cmd_graft(args: argparse.Namespace) -> str:
    alphabet = build_alphabet(args, [args.tree, args.branch])
    t = parse_tree(args.tree, alphabet)
    s = parse_tree(args.branch, alphabet)
    return render_tree(prelie.graft_at(t, _address(args.at), s, type_of(alphabet, args.type)), alphabet)


def _weight(args: argparse.Namespace, alphabet: Alphabet) -> Any:
    if args.type is not None:
        return type_of(alphabet, args.type)
    return lambda_of(args, alphabet)


def cmd_prelie(args: argparse.Namespace) -> str:
    alphabet = build_alphabet(args, [args.x, args.y])
    x = parse_tree(args.x, alphabet)
    y = parse_tree(args.y, alphabet)
    return show(prelie.prelie_product(x, y, _weight(args, alphabet)), alphabet)


def cmd_nap(args: argparse.Namespace) -> str:
    alphabet = build_alphabet(args, [args.x])
    x = parse_tree(args.x, alphabet)
    if args.mu is not None:
        w: Any = parse_lambda(args.mu, alphabet.types.id)
    else:
        w = type_of(alphabet, args.type)
    return show(prelie.nap_coproduct(x, w), alphabet)


def cmd_star(args: argparse.Namespace) -> str:
    alphabet = build_alphabet(args, [args.x, args.y])
    x = parse_forest(args.x, alphabet)
    y = parse_forest(args.y, alphabet)
    return show(hopf.gl_product(x, y, lambda_of(args, alphabet)), alphabet)


def cmd_ck(args: argparse.Namespace) -> str:
    alphabet = build_alphabet(args, [args.forest])
    f = parse_forest(args.forest, alphabet)
    return show(hopf.ck_coproduct(f, lambda_of(args, alphabet), args.algorithm), alphabet)


def cmd_antipode(args: argparse.Namespace) -> str:
    alphabet = build_alphabet(args, [args.forest])
    f = parse_forest(args.forest, alphabet)
    return show(hopf.antipode(f, lambda_of(args, alphabet)), alphabet)


def cmd_delta(args: argparse.Namespace) -> str:
    alphabet = build_alphabet(args, [args.forest])
    f = parse_forest(args.forest, alphabet)
    return show(hopf.contraction_coproduct(f, alphabet), alphabet)


def cmd_pair(args: argparse.Namespace) -> str:
    alphabet = build_alphabet(args, [args.x, args.y])
    x = parse_forest(args.x, alphabet)
    y = parse_forest(args.y, alphabet)
    return str(hopf.pairing(x, y))


def cmd_phi(args: argparse.Namespace) -> str:
    source = build_alphabet(args, [args.forest])
    target_types = _split(args.target_types) if args.target_types else list(source.types.names)
    target = Alphabet(source.decorations, TypeAlphabet(tuple(target_types)))
    M = morphisms.TypeMatrix.parse(Path(args.matrix).read_text(encoding="utf-8"))
    if M.shape != (target.T, source.T):
        raise morphisms.DomainError(f"matrix is {M.shape[0]}x{M.shape[1]}, expected {target.T}x{source.T}")
    f = parse_forest(args.forest, source)
    return show(morphisms.phi(f, M), target)


def cmd_psi_star(args: argparse.Namespace) -> str:
    alphabet = build_alphabet(args, [args.forest])
    t0 = type_of(alphabet, _merged(args, "t0"))
    f = parse_forest(args.forest, alphabet)
    image = morphisms.psi_star(f, t0, lambda_of(args, alphabet))
    return show(image, morphisms.restricted_alphabet(alphabet))


def cmd_compose(args: argparse.Namespace) -> str:
    types = _merged(args, "types")
    alphabet = LabelAlphabet.with_types(_split(types) if types else DEFAULT_TYPES)
    t = operad.LabeledTree.from_tree(parse_tree(args.t, alphabet))
    s = operad.LabeledTree.from_tree(parse_tree(args.s, alphabet))
    if args.standard:
        for tree in (t, s):
            if tree.labels != tuple(range(1, tree.degree + 1)):
                raise operad.LabelError("--standard needs trees labeled 1..n")
        result = operad.compose_standard(t, args.a, s)
    else:
        result = operad.operad_compose(t, args.a, s)
    return show(result, alphabet)


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    suite = _merged(args, "suite") or "all"
    names = list(SUITES) if suite == "all" else [suite]
    max_size = _merged(args, "max_size")
    jobs = int(_merged(args, "jobs") or 1)
    results = run_suites(names, int(max_size) if max_size is not None else None, jobs)
    lines = []
    for r in results:
        lines.append(r.line())
        if not r.ok:
            return "\n".join(lines), 1
    return "\n".join(lines), 0


# --------------------------------------------------------------------------
# parser

def _alphabet_options(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("alphabet")
    g.add_argument("--decorations", help="comma-separated decoration names (default: those in the literals)")
    g.add_argument("--types", help="comma-separated edge type names (default: red,green)")
    g.add_argument("-D", type=int, help="use D generic decorations a, b, ...")
    g.add_argument("-T", type=int, help="use T generic types red, green, blue, ...")
    g.add_argument("--semigroup", help="decoration sums, e.g. a+a=a,a+b=b,b+b=b (trivial when D=1)")
    g.add_argument("--lambda", dest="lambda_", metavar="SPEC",
                   help="λ as type=rational pairs, e.g. red=1,green=-2/3; missing types are 0 (default: all 1)")
    g.add_argument("--config", help="key=value file with decorations, types, lambda, semigroup, t0")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="typedtrees", description="Typed decorated rooted trees and their algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        _alphabet_options(p)
        p.set_defaults(func=func)
        return p

    p = add("count", cmd_count, "print tree/forest counts as n<TAB>value")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--trees", dest="kind", action="store_const", const="trees")
    kind.add_argument("--forests", dest="kind", action="store_const", const="forests")
    kind.add_argument("--restricted", dest="kind", action="store_const", const="restricted",
                      help="trees with no root edge of one fixed type")
    p.add_argument("-n", type=int, default=8, help="largest degree (default 8)")
    p.add_argument("--generate", action="store_true", help="count by exhaustive generation instead of the series")
    p.add_argument("--closed-forms", action="store_true", help="report printed closed forms that disagree with the series")
    p.set_defaults(kind="trees")

    p = add("enumerate", cmd_enumerate, "list every tree or forest of a given size")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--trees", dest="kind", action="store_const", const="trees")
    kind.add_argument("--forests", dest="kind", action="store_const", const="forests")
    kind.add_argument("--restricted", dest="kind", action="store_const", const="restricted")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--t0", help="excluded root edge type for --restricted (default: first type)")
    p.set_defaults(kind="trees")

    p = add("graft", cmd_graft, "graft one tree on a vertex of another")
    p.add_argument("tree")
    p.add_argument("branch")
    p.add_argument("--at", default="", help="dotted child indices of the target vertex (default: root)")
    p.add_argument("--type", required=True)

    p = add("prelie", cmd_prelie, "x •_t y with --type, or x •_λ y with --lambda")
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--type")

    p = add("nap", cmd_nap, "NAP coproduct ρ_t (--type) or ρ_μ (--mu)")
    p.add_argument("x")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--type")
    which.add_argument("--mu", help="weights as type=rational pairs")

    p = add("star", cmd_star, "Grossman–Larson product x ⋆_λ y of forests")
    p.add_argument("x")
    p.add_argument("y")

    p = add("ck", cmd_ck, "Connes–Kreimer coproduct with weights λ")
    p.add_argument("forest")
    p.add_argument("--algorithm", choices=("cuts", "recursive"), default="cuts")

    p = add("antipode", cmd_antipode, "antipode of the Connes–Kreimer Hopf algebra")
    p.add_argument("forest")

    p = add("delta", cmd_delta, "extraction–contraction coproduct (needs a decoration semigroup)")
    p.add_argument("forest")

    p = add("pair", cmd_pair, "duality pairing <x, y>")
    p.add_argument("x")
    p.add_argument("y")

    p = add("phi", cmd_phi, "substitute edge types through a matrix")
    p.add_argument("forest")
    p.add_argument("--matrix", required=True,
                   help="file with one row per target type, rationals separated by spaces")
    p.add_argument("--target-types", help="type names of the rows (default: same as --types)")

    p = add("psi-star", cmd_psi_star, "contract t0-restricted partitions into tree-decorated forests")
    p.add_argument("forest")
    p.add_argument("--t0")

    p = add("compose", cmd_compose, "operad composition T ∘_a S of labeled trees")
    p.add_argument("t")
    p.add_argument("a", type=int)
    p.add_argument("s")
    p.add_argument("--standard", action="store_true",
                   help="treat both trees as labeled 1..n and renumber as for ∘_i")

    p = add("verify", cmd_verify, "run exhaustive property suites")
    p.add_argument("--suite", choices=(*SUITES, "all"))
    p.add_argument("--max-size", type=int, help="replace the size bound of every check")
    p.add_argument("--jobs", type=int, help="worker processes (output order is fixed)")
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = make_parser()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.config_values = read_config(args.config) if getattr(args, "config", None) else {}
        result = args.func(args)
    except UsageError as exc:
        print(f"typedtrees: usage error: {exc}", file=err)
        return 2
    except (ParseError, AlphabetError, ValueError, KeyError, ZeroDivisionError, OSError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"typedtrees: error: {message}", file=err)
        return 1
    status = 0
    if isinstance(result, tuple):
        result, status = result
    if result:
        print(result, file=out)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
