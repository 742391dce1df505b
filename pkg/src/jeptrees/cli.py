"""``jep`` command-line entry point.

Exit codes: 0 = JEP / pair jointly embeddable / validation clean,
1 = bad pair / pair not embeddable / discrepancies, 2 = usage or parse error,
3 = a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings
from dataclasses import replace

from . import cographs as cg
from . import oracle
from . import string_jep as sj
from . import tree_jep as tj
from .config import DEFAULT_CAPS, Caps
from .dfa import Dfa, forb_string, format_dfa, parse_dfa
from .errors import JepError, ParseError, SizeLimitExceeded
from .tree_automata import TreeAutomaton, forb_tree, parse_ta
from .trees import LabelSet, Tree, parse_tree, to_sexpr

EXIT_OK, EXIT_BAD, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class Output:
    """Collects ``key: value`` records; human mode adds a readable summary."""

    def __init__(self, machine: bool):
        self.machine = machine

    def field(self, key: str, value) -> None:
        print(f"{key}: {value}")

    def note(self, text: str) -> None:
        if not self.machine:
            print(text)


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _located(path: str, fn, *args, **kwargs):
    """Run a parser, prefixing errors with the file name."""
    try:
        return fn(*args, **kwargs)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def load_automaton(path: str) -> Dfa | TreeAutomaton:
    text = _read(path)
    first = next((ln.split("%", 1)[0].strip() for ln in text.splitlines() if ln.split("%", 1)[0].strip()), "")
    if first.startswith("labels:"):
        return _located(path, parse_ta, text)
    return _located(path, parse_dfa, text)


def _tree_arg(arg: str, labels: LabelSet, arity: str) -> Tree:
    """A tree given inline as an s-expression or as a file path."""
    if arg.lstrip().startswith("("):
        return _located("<argument>", parse_tree, arg, labels, arity)
    return _located(arg, parse_tree, _read(arg), labels, arity)


def _string_shown(s: str) -> str:
    return s if s else '""'


def _caps(args) -> Caps:
    caps = DEFAULT_CAPS
    if args.max_walks is not None:
        caps = replace(caps, max_walks=args.max_walks)
    if args.max_size is not None:
        caps = replace(caps, max_items=args.max_size, max_families=args.max_size, max_states=args.max_size)
    return caps


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _string_language(args) -> Dfa:
    if args.automaton:
        m = load_automaton(args.automaton)
        if not isinstance(m, Dfa):
            raise UsageError(f"{args.automaton}: expected a string automaton")
        return m
    if args.forbid is None or not args.alphabet:
        raise UsageError("give --automaton, or --forbid together with --alphabet")
    words = [w.strip() for w in args.forbid.split(",") if w.strip()]
    return forb_string(words, list(args.alphabet))


def _report_verdict(out: Output, v, show) -> int:
    if v.jep:
        out.field("verdict", "jep")
        out.note("The language has the joint embedding property.")
        return EXIT_OK
    out.field("verdict", "bad-pair")
    out.field("x", show(v.x))
    out.field("y", show(v.y))
    out.field("certificate", v.certificate)
    out.note("No member of the language contains both x and y.")
    return EXIT_BAD


def cmd_strings(args, out: Output) -> int:
    m = _string_language(args)
    v = sj.decide_jep_string(m, mode=args.mode, caps=_caps(args))
    return _report_verdict(out, v, _string_shown)


def _tree_language(args) -> TreeAutomaton:
    if args.automaton:
        m = load_automaton(args.automaton)
        if not isinstance(m, TreeAutomaton):
            raise UsageError(f"{args.automaton}: expected a tree automaton")
        return m
    if args.labels is None:
        raise UsageError("give --automaton, or --forbid together with --labels")
    labels = LabelSet.of(args.labels.split())
    patterns = [_tree_arg(p, labels, "binary") for p in (args.forbid or [])]
    return forb_tree(patterns, labels)


def cmd_trees(args, out: Output) -> int:
    m = _tree_language(args)
    v = tj.decide_jep_tree(m, mode=args.mode, caps=_caps(args))
    return _report_verdict(out, v, lambda t: to_sexpr(t, m.labels))


def cmd_general_trees(args, out: Output) -> int:
    if args.labels is None:
        raise UsageError("--labels is required")
    labels = LabelSet.of(args.labels.split())
    patterns = [_tree_arg(p, labels, "general") for p in (args.forbid or [])]
    v = cg.decide_jep_general(patterns, labels, caps=_caps(args))
    return _report_verdict(out, v, lambda t: to_sexpr(t, labels))


def _graph_inline(g: cg.Cograph) -> str:
    return f"n={g.n} edges=" + ",".join(f"{u}-{v}" for u, v in sorted(g.edges))


def cmd_cographs(args, out: Output) -> int:
    graphs = [_located(p, cg.parse_graph, _read(p)) for p in (args.forbid or [])]
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        v = cg.decide_jep_cographs(graphs, caps=_caps(args))
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if v.jep:
        out.field("verdict", "jep")
        out.note("The class of graphs avoiding these induced subgraphs has the joint embedding property.")
        return EXIT_OK
    out.field("verdict", "bad-pair")
    out.field("g1", _graph_inline(v.g1))
    out.field("cotree1", cg.to_sexpr_cotree(v.cotree1))
    out.field("g2", _graph_inline(v.g2))
    out.field("cotree2", cg.to_sexpr_cotree(v.cotree2))
    out.field("certificate", v.certificate)
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        for name, g in (("g1.graph", v.g1), ("g2.graph", v.g2)):
            with open(os.path.join(args.out, name), "w", encoding="utf-8") as fh:
                fh.write(cg.format_graph(g))
        out.note(f"Witness graphs written to {args.out}.")
    return EXIT_BAD


def _pair_args(args):
    m = load_automaton(args.automaton)
    if isinstance(m, Dfa):
        return m, args.x, args.y, _string_shown
    x = _tree_arg(args.x, m.labels, "binary")
    y = _tree_arg(args.y, m.labels, "binary")
    return m, x, y, lambda t: to_sexpr(t, m.labels)


def cmd_check_pair(args, out: Output) -> int:
    m, x, y, show = _pair_args(args)
    if isinstance(m, Dfa):
        joint = sj.joint_string(m, x, y)
    else:
        joint = tj.joint_tree(tj.TreePipeline(m, _caps(args)), x, y)
    out.field("x", show(x))
    out.field("y", show(y))
    out.field("joint", "yes" if joint else "no")
    out.note("Some member contains both." if joint else "No member contains both.")
    return EXIT_OK if joint else EXIT_BAD


def cmd_joint_witness(args, out: Output) -> int:
    m, x, y, show = _pair_args(args)
    z = sj.joint_string_product(m, x, y) if isinstance(m, Dfa) else tj.joint_witness(m, x, y)
    if z is None:
        out.field("witness", "none")
        return EXIT_BAD
    out.field("witness", show(z))
    return EXIT_OK


def cmd_badpairs_automaton(args, out: Output) -> int:
    m = _string_language(args)
    b = sj.badpair_automaton_string(m, bound=args.bound, mode=args.mode, sep=args.sep)
    sys.stdout.write(format_dfa(b))
    return EXIT_OK


def cmd_bounds(args, out: Output) -> int:
    m = load_automaton(args.automaton)
    report = sj.report_bounds(m) if isinstance(m, Dfa) else tj.report_bounds(m)
    for key, value in report.items():
        out.field(key, value)
    return EXIT_OK


def cmd_oracle_validate(args, out: Output) -> int:
    config = oracle.TrialConfig(seed=args.seed, trials=args.trials, caps=_caps(args))
    if args.suite == "tree-claim1":
        config = replace(config, states=3)
    report = oracle.cross_validate(args.suite, config)
    for line in report.lines():
        print(line)
    return EXIT_OK if report.clean else EXIT_BAD


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", help="print key: value lines only")
    common.add_argument("--max-walks", type=int, help="cap on walk enumerations")
    common.add_argument("--max-size", type=int, help="cap on member, family and state enumerations")

    parser = argparse.ArgumentParser(prog="jep", description="Decide the joint embedding property.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("strings", parents=[common], help="regular string languages under subsequence")
    p.add_argument("--automaton")
    p.add_argument("--forbid", help="comma-separated forbidden subsequences")
    p.add_argument("--alphabet", help="alphabet characters, e.g. ab")
    p.add_argument("--mode", choices=("bad", "semibad"), default="bad")
    p.set_defaults(run=cmd_strings)

    p = sub.add_parser("trees", parents=[common], help="regular binary tree languages under containment")
    p.add_argument("--automaton")
    p.add_argument("--forbid", nargs="*", help="forbidden tree files or inline s-expressions")
    p.add_argument("--labels", help='label tokens, e.g. "0 1"')
    p.add_argument("--mode", choices=("bad", "semibad"), default="bad")
    p.set_defaults(run=cmd_trees)

    p = sub.add_parser("general-trees", parents=[common], help="unranked trees avoiding patterns")
    p.add_argument("--forbid", nargs="*")
    p.add_argument("--labels")
    p.set_defaults(run=cmd_general_trees)

    p = sub.add_parser("cographs", parents=[common], help="graph classes with P4 forbidden")
    p.add_argument("--forbid", nargs="+", required=True, help="graph files")
    p.add_argument("--out", help="directory for witness graph files")
    p.set_defaults(run=cmd_cographs)

    for name, fn in (("check-pair", cmd_check_pair), ("joint-witness", cmd_joint_witness)):
        p = sub.add_parser(name, parents=[common])
        p.add_argument("--automaton", required=True)
        p.add_argument("x")
        p.add_argument("y")
        p.set_defaults(run=fn)

    p = sub.add_parser("badpairs-automaton", parents=[common], help="automaton for x#y over bad pairs (strings)")
    p.add_argument("--automaton")
    p.add_argument("--forbid")
    p.add_argument("--alphabet")
    p.add_argument("--mode", choices=("bad", "semibad"), default="semibad")
    p.add_argument("--bound", type=int)
    p.add_argument("--sep", default="#")
    p.set_defaults(run=cmd_badpairs_automaton)

    p = sub.add_parser("bounds", parents=[common])
    p.add_argument("--automaton", required=True)
    p.set_defaults(run=cmd_bounds)

    p = sub.add_parser("oracle-validate", parents=[common])
    p.add_argument("--suite", choices=oracle.SUITES, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=200)
    p.set_defaults(run=cmd_oracle_validate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = Output(args.machine)
    try:
        return args.run(args, out)
    except SizeLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, JepError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
