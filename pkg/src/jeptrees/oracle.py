"""Brute-force references and seeded cross-validation harnesses.

The containment, subsequence and induced-subgraph checks here are written
independently of the pipelines they validate; the only shared machinery is
automaton running, products and emptiness.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from . import cographs as cg
from . import string_jep as sj
from . import tree_jep as tj
from .config import DEFAULT_CAPS, Caps
from .dfa import Dfa, all_strings, dfa_trim, format_dfa, intersection_witness as dfa_witness, sup_string
from .errors import SizeLimitExceeded
from .tree_automata import (
    TreeAutomaton,
    format_ta,
    intersection_witness as ta_witness,
    sup_tree,
    ta_trim,
)
from .trees import LabelSet, Tree, decode_general, enumerate_binary, enumerate_general, to_sexpr

SUITES = ("string-claim1", "tree-claim1", "walkdef", "cotree", "encoded-sup", "jep-verdicts")


@dataclass(frozen=True)
class TrialConfig:
    seed: int = 0
    trials: int = 200
    states: int = 4  # maximum automaton size
    alphabet_size: int = 2  # symbols or tree labels
    max_len: int = 4  # string pairs up to this length
    max_nodes: int = 7  # random trees up to this many nodes
    pairs: int = 200  # tree pairs per automaton
    samples: int = 1000  # trees per automaton (walkdef) or graphs (cotree)
    caps: Caps = field(default_factory=lambda: DEFAULT_CAPS)

    def __post_init__(self):
        for name in ("states", "alphabet_size", "max_len", "max_nodes"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        for name in ("trials", "pairs", "samples"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


def _rng(config: TrialConfig, trial: int = 0) -> np.random.Generator:
    return np.random.default_rng([config.seed & (2**64 - 1), trial])


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

ALPHABET = "abcdefghijklmnopqrstuvwxyz"


def random_dfa(config: TrialConfig, trial: int = 0, n_states: int | None = None) -> Dfa:
    """Uniform total DFA with ``n_states`` (default: uniform in 1..states), trimmed."""
    rng = _rng(config, trial)
    n = int(rng.integers(1, config.states + 1)) if n_states is None else n_states
    k = config.alphabet_size
    delta = rng.integers(0, n, size=(n, k))
    accept = np.flatnonzero(rng.random(n) < 0.5)
    return dfa_trim(Dfa(ALPHABET[:k], delta, 0, accept.tolist()))


def random_ta(config: TrialConfig, trial: int = 0, n_states: int | None = None) -> TreeAutomaton:
    """Uniform bottom-up automaton (symmetric transitions), trimmed."""
    rng = _rng(config, trial)
    n = int(rng.integers(1, config.states + 1)) if n_states is None else n_states
    k = config.alphabet_size
    m0 = rng.integers(0, n, size=k)
    m2 = np.zeros((k, n, n), dtype=np.int64)
    for lab in range(k):
        for i in range(n):
            for j in range(i, n):
                m2[lab, i, j] = m2[lab, j, i] = rng.integers(0, n)
    accept = np.flatnonzero(rng.random(n) < 0.5)
    return ta_trim(TreeAutomaton(LabelSet(k), m0, m2, accept.tolist()))


def random_binary_tree(rng: np.random.Generator, k: int, max_nodes: int) -> Tree:
    """Random full binary tree with an odd node count <= ``max_nodes``."""
    size = 2 * int(rng.integers(0, (max_nodes - 1) // 2 + 1)) + 1

    def grow(n):
        lab = int(rng.integers(0, k))
        if n == 1:
            return Tree(lab)
        left = 2 * int(rng.integers(0, (n - 1) // 2)) + 1
        return Tree(lab, (grow(left), grow(n - 1 - left)))

    return grow(size)


def random_cograph(rng: np.random.Generator, n: int) -> cg.Cograph:
    """Merge singletons by random unions and joins, then shuffle vertex ids."""
    parts = [(1, frozenset())] * n
    while len(parts) > 1:
        i, j = sorted(rng.choice(len(parts), size=2, replace=False))
        (na, ea), (nb, eb) = parts[i], parts[j]
        edges = set(ea) | {(a + na, b + na) for a, b in eb}
        if rng.random() < 0.5:
            edges |= {(a, b + na) for a in range(na) for b in range(nb)}
        merged = (na + nb, frozenset(edges))
        parts = [p for t, p in enumerate(parts) if t not in (i, j)] + [merged]
    perm = rng.permutation(n)
    return cg.Cograph(n, [(int(perm[a]), int(perm[b])) for a, b in parts[0][1]])


# ---------------------------------------------------------------------------
# brute-force relations
# ---------------------------------------------------------------------------

def brute_subsequence(x: str, z: str) -> bool:
    """Search every position set of ``z`` of size ``len(x)``."""
    return any("".join(z[i] for i in idx) == x for idx in itertools.combinations(range(len(z)), len(x)))


def brute_contains(host: Tree, pattern: Tree) -> bool:
    """Topological containment by trying every injection of pattern children
    into distinct host child branches, anchored at every host node."""

    def subtrees(t):
        yield t
        for c in t.children:
            yield from subtrees(c)

    def somewhere(p, t):
        return any(anchored(p, u) for u in subtrees(t))

    def anchored(p, v):
        if p.label != v.label:
            return False
        if not p.children:
            return True
        for branches in itertools.permutations(v.children, len(p.children)):
            if all(somewhere(pc, b) for pc, b in zip(p.children, branches)):
                return True
        return False

    return somewhere(pattern, host)


def brute_induced(g1: cg.Cograph, g2: cg.Cograph) -> bool:
    """Backtracking search for an adjacency-preserving injection."""
    if g1.n > g2.n:
        return False
    adj1 = [[g1.adjacent(u, v) for v in range(g1.n)] for u in range(g1.n)]
    adj2 = [[g2.adjacent(u, v) for v in range(g2.n)] for u in range(g2.n)]
    image: list[int] = []

    def extend(i):
        if i == g1.n:
            return True
        for v in range(g2.n):
            if v in image:
                continue
            if all(adj1[i][j] == adj2[v][image[j]] for j in range(i)):
                image.append(v)
                if extend(i + 1):
                    return True
                image.pop()
        return False

    return extend(0)


# ---------------------------------------------------------------------------
# exact bad-pair scans
# ---------------------------------------------------------------------------

def scan_bad_pairs(language, max_size: int, caps: Caps | None = None) -> set:
    """All bad pairs among members up to ``max_size`` (string length or tree
    node count); badness is decided exactly by product emptiness."""
    caps = caps or DEFAULT_CAPS
    if isinstance(language, Dfa):
        members = [w for w in all_strings(language.alphabet, max_size) if language.accepts(w)]
        sup = lambda x: sup_string(x, language.alphabet)
        witness = dfa_witness
    else:
        members = [t for t in enumerate_binary(language.labels, max_size, cap=caps.max_items) if language.accepts(t)]
        sup = lambda x: sup_tree(x, language.labels)
        witness = ta_witness
    if len(members) > caps.max_items:
        raise SizeLimitExceeded("scanned members", caps.max_items, {"members": len(members)})
    sups = [sup(x) for x in members]
    out = set()
    for i, j in itertools.combinations_with_replacement(range(len(members)), 2):
        if witness(language, sups[i], sups[j]) is None:
            out.add((members[i], members[j]))
    return out


def cotree_shapes(n: int, root: int | None = None) -> list[Tree]:
    """Every cotree shape with ``n`` leaves (root label ``root`` or any)."""
    if root is None:
        if n == 1:
            return [Tree(cg.K1)]
        return cotree_shapes(n, cg.UNION) + cotree_shapes(n, cg.JOIN)
    if n < 2:
        return []
    other = cg.JOIN if root == cg.UNION else cg.UNION
    # children: a multiset of subtrees, each a K1 leaf or rooted at ``other``
    pool = {m: ([Tree(cg.K1)] if m == 1 else cotree_shapes(m, other)) for m in range(1, n)}
    out = []

    def parts(left, largest):
        if left == 0:
            yield []
            return
        for m in range(min(left, largest), 0, -1):
            for rest in parts(left - m, m):
                yield [m] + rest

    for sizes in parts(n, n - 1):
        groups = {}
        for m in sizes:
            groups[m] = groups.get(m, 0) + 1
        choices = [
            list(itertools.combinations_with_replacement(pool[m], count)) for m, count in sorted(groups.items())
        ]
        for combo in itertools.product(*choices):
            out.append(Tree(root, [t for group in combo for t in group]))
    return sorted(set(out))


def cographs_up_to(max_vertices: int) -> list[cg.Cograph]:
    """One cograph per isomorphism class with 1..max_vertices vertices."""
    return [cg.graph_of_shape(t) for n in range(1, max_vertices + 1) for t in cotree_shapes(n)]


def scan_bad_cograph_pairs(forbidden, max_vertices: int) -> set:
    """Bad pairs among forbidden-free cographs up to ``max_vertices``; the
    class is the P4-free graphs avoiding ``forbidden`` as induced subgraphs."""
    forbidden = list(forbidden)
    members = [g for g in cographs_up_to(max_vertices) if not any(brute_induced(h, g) for h in forbidden)]
    patterns = [cg.cotree_of(h).shape() for h in forbidden if not cg.is_p4(h) and _is_cograph(h)]
    lang = cg.cograph_language(patterns)
    sups: dict = {}

    def sup(i):
        if i not in sups:
            sups[i] = cg.sup_induced_encoded(cg.cotree_of(members[i]).shape())
        return sups[i]

    def allowed(g):
        return not any(brute_induced(h, g) for h in forbidden)

    out = set()
    for i, j in itertools.combinations_with_replacement(range(len(members)), 2):
        g, h = members[i], members[j]
        union = cg.disjoint_union(g, h)
        if allowed(union) or allowed(cg.Cograph(union.n, _join_edges(g, h))):
            continue  # the union or the join is a joint member
        if ta_witness(lang, sup(i), sup(j)) is None:
            out.add((g, h))
    return out


def _join_edges(g: cg.Cograph, h: cg.Cograph) -> list:
    edges = list(g.edges) + [(a + g.n, b + g.n) for a, b in h.edges]
    return edges + [(a, b + g.n) for a in range(g.n) for b in range(h.n)]


def _is_cograph(g: cg.Cograph) -> bool:
    try:
        cg.cotree_of(g)
        return True
    except cg.NotCograph:
        return False


# ---------------------------------------------------------------------------
# shrinking
# ---------------------------------------------------------------------------

def shrink_string(s: str, failing: Callable[[str], bool]) -> str:
    changed = True
    while changed:
        changed = False
        for i in range(len(s)):
            t = s[:i] + s[i + 1:]
            if failing(t):
                s, changed = t, True
                break
    return s


def _tree_shrinks(t: Tree):
    """Replace any internal node by one of its children's subtrees."""
    if t.is_leaf:
        return
    for c in t.children:
        yield c
    for i, c in enumerate(t.children):
        for smaller in _tree_shrinks(c):
            kids = list(t.children)
            kids[i] = smaller
            yield Tree(t.label, kids)


def shrink_tree(t: Tree, failing: Callable[[Tree], bool]) -> Tree:
    changed = True
    while changed:
        changed = False
        for cand in _tree_shrinks(t):
            if failing(cand):
                t, changed = cand, True
                break
    return t


# ---------------------------------------------------------------------------
# cross validation
# ---------------------------------------------------------------------------

@dataclass
class Discrepancy:
    trial: int
    what: str
    repro: str

    def line(self) -> str:
        return f"discrepancy trial={self.trial} {self.what} :: {self.repro}"


@dataclass
class Report:
    suite: str
    trials: int = 0
    checks: int = 0
    skipped: int = 0
    discrepancies: list = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not self.discrepancies

    def lines(self) -> list[str]:
        out = [
            f"suite: {self.suite}",
            f"trials: {self.trials}",
            f"checks: {self.checks}",
            f"skipped: {self.skipped}",
            f"discrepancies: {len(self.discrepancies)}",
        ]
        out += [d.line() for d in sorted(self.discrepancies, key=lambda d: d.trial)]
        return out


def corrupt_string_n_step(pipeline: sj.StringPipeline) -> None:
    """Mutation hook: make the walk automaton forget its largest walk id."""
    honest = pipeline.n_step

    def broken(family, a):
        out = honest(family, a)
        return out - {max(out)} if out else out

    pipeline.n_step = broken


def cross_validate(suite: str, config: TrialConfig, mutation: Callable | None = None) -> Report:
    """Run one equivalence suite; ``mutation`` (if given) is applied to every
    pipeline before checking, to confirm the harness notices broken code."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    report = Report(suite)
    runner = {
        "string-claim1": _string_claim1,
        "tree-claim1": _tree_claim1,
        "walkdef": _walkdef,
        "cotree": _cotree,
        "encoded-sup": _encoded_sup,
        "jep-verdicts": _jep_verdicts,
    }[suite]
    for trial in range(config.trials):
        report.trials += 1
        try:
            runner(config, trial, report, mutation)
        except SizeLimitExceeded:
            report.skipped += 1
    return report


def _string_claim1(config, trial, report, mutation):
    m = random_dfa(config, trial)
    p = sj.build_pipeline(m, config.caps)
    if mutation:
        mutation(p)
    strings = list(all_strings(m.alphabet, config.max_len))

    def disagree(x, y):
        by_walks = not p.wset(x).isdisjoint(p.wset(y))
        return by_walks != (sj.joint_string_product(m, x, y) is not None)

    for i, x in enumerate(strings):
        for y in strings[i:]:
            report.checks += 1
            if disagree(x, y):
                x2 = shrink_string(x, lambda s: disagree(s, y))
                y2 = shrink_string(y, lambda s: disagree(x2, s))
                report.discrepancies.append(Discrepancy(
                    trial, f"x={x2!r} y={y2!r}", format_dfa(m).replace("\n", "; ")))
                return


def _tree_claim1(config, trial, report, mutation):
    m = random_ta(config, trial)
    p = tj.TreePipeline(m, config.caps)
    if mutation:
        mutation(p)
    rng = _rng(config, 10**6 + trial)
    k = m.labels.size

    def disagree(x, y):
        return bool(p.wset_tree(x) & p.wset_tree(y)) != (tj.joint_witness(p.m, x, y) is not None)

    for _ in range(config.pairs):
        x = random_binary_tree(rng, k, config.max_nodes)
        y = random_binary_tree(rng, k, config.max_nodes)
        report.checks += 1
        if disagree(x, y):
            x2 = shrink_tree(x, lambda t: disagree(t, y))
            y2 = shrink_tree(y, lambda t: disagree(x2, t))
            report.discrepancies.append(Discrepancy(
                trial, f"x={to_sexpr(x2)} y={to_sexpr(y2)}", format_ta(p.m).replace("\n", "; ")))
            return


def _walkdef(config, trial, report, mutation):
    m = random_ta(config, trial)
    p = tj.TreePipeline(m, config.caps)
    if mutation:
        mutation(p)
    rng = _rng(config, 2 * 10**6 + trial)

    def disagree(z):
        return p.walk_of_tree_definitional(z) != p.walk_of_tree_compositional(z)

    for _ in range(config.samples):
        z = random_binary_tree(rng, m.labels.size, config.max_nodes)
        report.checks += 1
        if disagree(z):
            z2 = shrink_tree(z, disagree)
            report.discrepancies.append(Discrepancy(trial, f"z={to_sexpr(z2)}", format_ta(p.m).replace("\n", "; ")))
            return


def _cotree(config, trial, report, mutation):
    rng = _rng(config, 3 * 10**6 + trial)
    g = random_cograph(rng, int(rng.integers(1, 11)))
    report.checks += 1
    if cg.graph_of(cg.cotree_of(g)) != g:
        report.discrepancies.append(Discrepancy(trial, "round trip", cg.format_graph(g).replace("\n", "; ")))
        return
    small = random_cograph(rng, int(rng.integers(1, 8)))
    big = random_cograph(rng, int(rng.integers(1, 10)))
    report.checks += 1
    if cg.induced_via_cotrees(small, big) != brute_induced(small, big):
        report.discrepancies.append(Discrepancy(
            trial, "induced subgraph",
            cg.format_graph(small).replace("\n", "; ") + " || " + cg.format_graph(big).replace("\n", "; ")))


def _encoded_sup(config, trial, report, mutation):
    """One trial = one pattern drawn from the general trees up to 4 nodes."""
    labels = LabelSet(config.alphabet_size)
    enc = labels.extended("^")
    patterns = enumerate_general(labels, 4)
    pattern = patterns[trial % len(patterns)]
    auto = cg.sup_general_encoded(pattern, enc)
    valid = cg.encoding_language(enc)
    up = enc.size - 1
    for t in enumerate_binary(enc, config.max_nodes):
        if not valid.accepts(t):
            continue
        report.checks += 1
        if auto.accepts(t) != brute_contains(decode_general(t, up), pattern):
            report.discrepancies.append(Discrepancy(trial, f"pattern={to_sexpr(pattern)}", f"encoding={to_sexpr(t)}"))
            return


def _jep_verdicts(config, trial, report, mutation):
    """Certify string and tree verdicts: bad pairs by product emptiness, JEP
    verdicts by an exact scan of small members."""
    m = random_dfa(config, trial)
    v = sj.decide_jep_string(m, caps=config.caps)
    report.checks += 1
    if not v.jep:
        ok = m.accepts(v.x) and m.accepts(v.y) and sj.joint_string_product(m, v.x, v.y) is None
    else:
        ok = not scan_bad_pairs(m, 6)
    if not ok:
        report.discrepancies.append(Discrepancy(trial, f"string verdict {v}", format_dfa(m).replace("\n", "; ")))
    t_cfg = replace(config, states=min(config.states, 3))
    a = random_ta(t_cfg, trial)
    tv = tj.decide_jep_tree(a, caps=config.caps)
    report.checks += 1
    if not tv.jep:
        ok = a.accepts(tv.x) and a.accepts(tv.y) and tj.joint_witness(a, tv.x, tv.y) is None
    else:
        ok = not scan_bad_pairs(a, 5)
    if not ok:
        report.discrepancies.append(Discrepancy(trial, f"tree verdict {tv}", format_ta(a).replace("\n", "; ")))
