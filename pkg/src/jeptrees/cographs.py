"""Cographs, cotrees, chain encodings and JEP for forbidden induced subgraphs.

Cotree labels: ``U`` (disjoint union), ``J`` (join), ``K1`` (single vertex),
plus the chain label ``^`` used by the binary encoding of unranked trees.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import ArityError, InvalidCotree, MissingP4, NotCograph, ParseError
from .string_jep import Verdict
from .tree_automata import TreeAutomaton, explore, intersection_witness, ta_complement, ta_intersection, ta_minimize
from .tree_jep import decide_jep_tree
from .trees import LabelSet, Tree, check_general, decode_general, encode_general

UNION, JOIN, K1, UP = 0, 1, 2, 3
COTREE_LABELS = LabelSet.of(["U", "J", "K1"])
ENCODED_COTREE_LABELS = COTREE_LABELS.extended("^")


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cograph:
    """Simple undirected graph on ``0..n-1``; edges stored as sorted pairs."""

    n: int
    edges: frozenset

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        norm = set()
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"invalid edge ({u}, {v}) for {n} vertices")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(norm))

    def adjacent(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self.edges

    def neighbours(self, u: int) -> set[int]:
        return {b if a == u else a for a, b in self.edges if u in (a, b)}

    def induced(self, vertices: Sequence[int]) -> "Cograph":
        """Induced subgraph, relabeled to ``0..len(vertices)-1`` in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        return Cograph(len(vertices), [(pos[a], pos[b]) for a, b in self.edges if a in pos and b in pos])

    def complement(self) -> "Cograph":
        return Cograph(self.n, [(u, v) for u, v in itertools.combinations(range(self.n), 2) if (u, v) not in self.edges])


def path_graph(n: int) -> Cograph:
    return Cograph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Cograph:
    return Cograph(n, itertools.combinations(range(n), 2))


def edgeless_graph(n: int) -> Cograph:
    return Cograph(n)


def disjoint_union(g: Cograph, h: Cograph) -> Cograph:
    return Cograph(g.n + h.n, list(g.edges) + [(a + g.n, b + g.n) for a, b in h.edges])


def is_p4(g: Cograph) -> bool:
    if g.n != 4 or len(g.edges) != 3:
        return False
    degrees = sorted(len(g.neighbours(v)) for v in range(4))
    return degrees == [1, 1, 2, 2] and len(_components(g, range(4))) == 1


def _components(g: Cograph, vertices, complement: bool = False) -> list[list[int]]:
    left = set(vertices)
    comps = []
    while left:
        start = min(left)
        left.discard(start)
        comp, stack = [start], [start]
        while stack:
            u = stack.pop()
            nxt = [v for v in left if g.adjacent(u, v) != complement]
            for v in nxt:
                left.discard(v)
                comp.append(v)
                stack.append(v)
        comps.append(sorted(comp))
    return sorted(comps)


def format_graph(g: Cograph) -> str:
    return f"n: {g.n}\n" + "".join(f"edge: {u} {v}\n" for u, v in sorted(g.edges))


def parse_graph(text: str) -> Cograph:
    n = None
    edges = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        try:
            if key == "n" and sep:
                n = int(rest)
            elif key == "edge" and sep:
                u, v = (int(x) for x in rest.split())
                if n is not None and not (0 <= u < n and 0 <= v < n and u != v):
                    raise ParseError(f"invalid edge ({u}, {v}) for {n} vertices", ln, 1)
                edges.append((u, v))
            else:
                raise ParseError(f"unknown line {raw!r}", ln, 1)
        except ValueError:
            raise ParseError(f"malformed {key!r} line", ln, 1) from None
    if n is None:
        raise ParseError("missing 'n:' header")
    try:
        return Cograph(n, edges)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# ---------------------------------------------------------------------------
# cotrees
# ---------------------------------------------------------------------------

class Cotree:
    """Cotree node. Leaves carry the original vertex id."""

    __slots__ = ("label", "children", "vertex")

    def __init__(self, label: int, children: Sequence["Cotree"] = (), vertex: int | None = None):
        self.label = label
        self.children = tuple(sorted(children, key=lambda c: (c.shape().key, c.min_vertex())))
        self.vertex = vertex

    def shape(self) -> Tree:
        """The cotree as a plain labeled tree (vertex ids dropped)."""
        return Tree(self.label, [c.shape() for c in self.children])

    def min_vertex(self) -> int:
        if self.vertex is not None:
            return self.vertex
        return min(c.min_vertex() for c in self.children)

    def vertices(self) -> list[int]:
        if self.vertex is not None:
            return [self.vertex]
        return sorted(v for c in self.children for v in c.vertices())

    def __eq__(self, other):
        return isinstance(other, Cotree) and (self.label, self.vertex, self.children) == (
            other.label, other.vertex, other.children)

    def __hash__(self):
        return hash((self.label, self.vertex, self.children))

    def __repr__(self):
        return f"Cotree({to_sexpr_cotree(self)})"


def to_sexpr_cotree(t: Cotree) -> str:
    name = COTREE_LABELS.name(t.label)
    if t.vertex is not None:
        return f"({name} {t.vertex})"
    return f"({name} " + " ".join(to_sexpr_cotree(c) for c in t.children) + ")"


def check_cotree(t: Cotree) -> None:
    """Leaves are K1 with a vertex id; internal nodes are U/J with at least two
    children, and no child shares its parent's label."""

    def visit(u: Cotree, parent_label):
        if not u.children:
            if u.label != K1 or u.vertex is None:
                raise InvalidCotree("leaves must be K1 vertices")
        else:
            if u.label not in (UNION, JOIN) or u.vertex is not None:
                raise InvalidCotree("internal nodes must be U or J")
            if len(u.children) < 2:
                raise InvalidCotree("internal nodes need at least two children")
        if u.label == parent_label:
            raise InvalidCotree("adjacent cotree nodes share a label")
        for c in u.children:
            visit(c, u.label)

    visit(t, None)
    ids = t.vertices()
    if len(set(ids)) != len(ids):
        raise InvalidCotree("repeated vertex id")


def cotree_of(g: Cograph) -> Cotree:
    """Cotree by the component / co-component recursion."""

    def build(vertices: list[int]) -> Cotree:
        if len(vertices) == 1:
            return Cotree(K1, vertex=vertices[0])
        comps = _components(g, vertices)
        if len(comps) > 1:
            return Cotree(UNION, [build(c) for c in comps])
        cocomps = _components(g, vertices, complement=True)
        if len(cocomps) > 1:
            return Cotree(JOIN, [build(c) for c in cocomps])
        raise NotCograph(f"vertices {vertices} induce a graph that is connected with a connected complement")

    if g.n == 0:
        raise NotCograph("the empty graph has no cotree")
    return build(list(range(g.n)))


def graph_of(t: Cotree) -> Cograph:
    check_cotree(t)
    ids = t.vertices()
    if ids != list(range(len(ids))):
        raise InvalidCotree("vertex ids must be exactly 0..n-1")
    edges = []

    def visit(u: Cotree) -> list[int]:
        if u.vertex is not None:
            return [u.vertex]
        parts = [visit(c) for c in u.children]
        if u.label == JOIN:
            for a, b in itertools.combinations(parts, 2):
                edges.extend((x, y) for x in a for y in b)
        return [v for p in parts for v in p]

    visit(t)
    return Cograph(len(ids), edges)


def cotree_from_shape(shape: Tree) -> Cotree:
    """Attach vertex ids to the leaves of a plain cotree shape, in leaf order."""
    counter = itertools.count()

    def visit(u: Tree) -> Cotree:
        if u.is_leaf:
            return Cotree(u.label, vertex=next(counter))
        return Cotree(u.label, [visit(c) for c in u.children])

    t = visit(shape)
    check_cotree(t)
    return t


def graph_of_shape(shape: Tree) -> Cograph:
    return graph_of(cotree_from_shape(shape))


def cotree_embeds(host: Tree, pattern: Tree) -> bool:
    """Induced-subgraph order on cotree shapes.

    A pattern node's children may share a host branch when a deeper host node
    with the same label separates them, so this is weaker than injective
    topological containment.
    """
    kids = {}

    def index(q):
        if q not in kids:
            kids[q] = q.children
            for c in q.children:
                index(c)

    index(pattern)
    memo: dict = {}

    def fits(q: Tree, a: frozenset, v: Tree) -> bool:
        """Does the graph of ``q``'s children ``a``, combined by ``q``'s label, fit in ``v``?"""
        if len(a) == 1:
            (i,) = a
            c = q.children[i]
            return True if c.is_leaf else fits(c, frozenset(range(len(c.children))), v)
        key = (q, a, v)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if v.is_leaf:
            hit = False
        elif any(fits(q, a, c) for c in v.children):
            hit = True
        elif v.label != q.label:
            hit = False
        else:
            covered = {frozenset()}
            for c in v.children:
                grown = set(covered)
                for done in covered:
                    rest = sorted(a - done)
                    for r in range(1, len(rest) + 1):
                        for block in itertools.combinations(rest, r):
                            if fits(q, frozenset(block), c):
                                grown.add(done | frozenset(block))
                covered = grown
            hit = a in covered
        memo[key] = hit
        return hit

    if pattern.is_leaf:
        return True
    return fits(pattern, frozenset(range(len(pattern.children))), host)


def induced_via_cotrees(g1: Cograph, g2: Cograph) -> bool:
    """Is ``g1`` an induced subgraph of ``g2``? Both must be cographs."""
    return cotree_embeds(cotree_of(g2).shape(), cotree_of(g1).shape())


def encode_cotree(t: Cotree | Tree) -> Tree:
    shape = t.shape() if isinstance(t, Cotree) else t
    return encode_general(shape, UP)


def decode_cotree(t: Tree) -> Cotree:
    return cotree_from_shape(decode_general(t, UP))


# ---------------------------------------------------------------------------
# automata over encodings
# ---------------------------------------------------------------------------

def _encoding_automaton(labels: LabelSet, up: int, allowed) -> TreeAutomaton:
    """Valid chain encodings of unranked trees, filtered by ``allowed(label,
    child_labels)`` for internal nodes and ``allowed(label, None)`` for leaves.

    States: ("node", label) for a completed real node, ("tail", child labels)
    for a chain fragment whose head label is not known yet, and "sink".
    """

    def leaf(lab):
        if lab == up or not allowed(lab, None):
            return "sink"
        return ("node", lab)

    def gather(s, t):
        if s == "sink" or t == "sink":
            return None
        if s[0] == "tail" and t[0] == "tail":
            return None
        got = set()
        for x in (s, t):
            got |= x[1] if x[0] == "tail" else {x[1]}
        return frozenset(got)

    def combine(lab, s, t):
        got = gather(s, t)
        if got is None:
            return "sink"
        if lab == up:
            return ("tail", got)
        return ("node", lab) if allowed(lab, got) else "sink"

    auto, _ = explore(labels, leaf, combine, lambda s: s != "sink" and s[0] == "node")
    return auto


def encoding_language(labels: LabelSet) -> TreeAutomaton:
    """Encodings over ``labels`` (whose last label is the chain label)."""
    return _encoding_automaton(labels, labels.size - 1, lambda lab, kids: True)


def cotree_language(labels: LabelSet = ENCODED_COTREE_LABELS) -> TreeAutomaton:
    """Encodings of valid cotree shapes: only K1 leaves, no internal K1, and
    labels alternate between parent and children through the chains."""
    if labels.tokens() != ENCODED_COTREE_LABELS.tokens():
        raise ValueError("cotree encodings use the labels U J K1 ^")

    def allowed(lab, kids):
        if kids is None:
            return lab == K1
        return lab in (UNION, JOIN) and lab not in kids

    return _encoding_automaton(labels, UP, allowed)


def sup_general_encoded(pattern: Tree, labels: LabelSet) -> TreeAutomaton:
    """Encodings (chain label = last label of ``labels``) of unranked trees
    that topologically contain ``pattern``.

    A completed node's state is the set of pattern nodes embedding somewhere in
    its subtree. A chain fragment's state records, per pattern node, which
    subsets of that node's children can be placed injectively on the children
    gathered so far, plus the union of the children's sets.
    """
    check_general(pattern)
    up = labels.size - 1
    order, kids = [], []

    def visit(u):
        ids = tuple(visit(c) for c in u.children)
        order.append(u)
        kids.append(ids)
        return len(order) - 1

    visit(pattern)
    if any(u.label == up or not 0 <= u.label < labels.size for u in order):
        raise ArityError("pattern uses the chain label or an unknown label")
    root = len(order) - 1
    empty_fams = tuple(frozenset([frozenset()]) for _ in order)

    def add_child(fams, seen, emb):
        new = []
        for q, fam in enumerate(fams):
            if not kids[q]:
                new.append(fam)
                continue
            grown = set(fam)
            for subset in fam:
                for j, c in enumerate(kids[q]):
                    if j not in subset and c in emb:
                        grown.add(subset | {j})
            new.append(frozenset(grown))
        return tuple(new), seen | emb

    def finish(lab, fams, seen):
        emb = set(seen)
        for q, u in enumerate(order):
            if u.label == lab and frozenset(range(len(kids[q]))) in fams[q]:
                emb.add(q)
        return ("node", frozenset(emb))

    def leaf(lab):
        if lab == up:
            return "sink"
        return ("node", frozenset(q for q, u in enumerate(order) if u.is_leaf and u.label == lab))

    def combine(lab, s, t):
        if s == "sink" or t == "sink" or (s[0] == "tail" and t[0] == "tail"):
            return "sink"
        if s[0] == "tail":
            s, t = t, s
        if t[0] == "tail":
            fams, seen = t[1], t[2]
        else:
            fams, seen = add_child(empty_fams, frozenset(), t[1])
        fams, seen = add_child(fams, seen, s[1])
        if lab == up:
            return ("tail", fams, seen)
        return finish(lab, fams, seen)

    auto, _ = explore(labels, leaf, combine, lambda s: s != "sink" and s[0] == "node" and root in s[1])
    return auto


def sup_induced_encoded(pattern: Tree, labels: LabelSet = ENCODED_COTREE_LABELS) -> TreeAutomaton:
    """Cotree encodings whose graph has the graph of cotree shape ``pattern``
    as an induced subgraph.

    An item ``(q, A)`` says the children ``A`` of pattern node ``q``, combined
    by ``q``'s label, fit inside the host subtree. Chain fragments record, per
    pattern node, which child sets can be split into blocks placed on distinct
    gathered children.
    """
    order, kids = [], []

    def visit(u):
        ids = tuple(visit(c) for c in u.children)
        order.append(u)
        kids.append(ids)
        return len(order) - 1

    visit(pattern)
    root = len(order) - 1
    parent = {c: (q, i) for q in range(len(order)) for i, c in enumerate(kids[q])}
    internal = [q for q in range(len(order)) if kids[q]]
    base = frozenset(
        (q, frozenset([i])) for q in internal for i, c in enumerate(kids[q]) if not kids[c]
    )
    empty_cover = tuple(frozenset([frozenset()]) for _ in internal)

    def add_child(cover, seen, items):
        new = []
        for slot, q in enumerate(internal):
            blocks = [a for (r, a) in items if r == q]
            grown = set(cover[slot])
            for done in cover[slot]:
                for b in blocks:
                    if not (b & done):
                        grown.add(done | b)
            new.append(frozenset(grown))
        return tuple(new), seen | items

    def finish(lab, cover, seen):
        items = set(seen)
        for slot, q in enumerate(internal):
            if order[q].label == lab:
                items.update((q, a) for a in cover[slot] if a)
        for q in range(len(order)):  # postorder: children first
            if q != root and kids[q] and (q, frozenset(range(len(kids[q])))) in items:
                p, i = parent[q]
                items.add((p, frozenset([i])))
        return ("node", frozenset(items))

    def leaf(lab):
        return "sink" if lab == UP else ("node", base)

    def combine(lab, s, t):
        if s == "sink" or t == "sink" or (s[0] == "tail" and t[0] == "tail"):
            return "sink"
        if s[0] == "tail":
            s, t = t, s
        if t[0] == "tail":
            cover, seen = t[1], t[2]
        else:
            cover, seen = add_child(empty_cover, frozenset(), t[1])
        cover, seen = add_child(cover, seen, s[1])
        if lab == UP:
            return ("tail", cover, seen)
        return finish(lab, cover, seen)

    def accept(s):
        if s == "sink" or s[0] != "node":
            return False
        return not kids[root] or (root, frozenset(range(len(kids[root])))) in s[1]

    auto, _ = explore(labels, leaf, combine, accept)
    return auto


# ---------------------------------------------------------------------------
# JEP front ends
# ---------------------------------------------------------------------------

def _decide_encoded(lang: TreeAutomaton, sup_of: Callable[[Tree], TreeAutomaton], caps=None) -> Verdict:
    """Run the tree decision on an encoding language, then certify a bad pair
    under the intended order: ``sup_of(x)`` accepts the encodings that contain
    what ``x`` encodes."""

    def pair_free(x, y):
        return intersection_witness(lang, sup_of(x), sup_of(y)) is None

    verdict = decide_jep_tree(lang, caps=caps)
    if verdict.jep:
        return verdict
    stats = dict(verdict.stats or {})
    if pair_free(verdict.x, verdict.y):
        return Verdict(False, verdict.x, verdict.y, "product-empty", stats)
    # the two orders disagree on this pair; scan the class representatives
    from .tree_jep import TreePipeline, reachable_classes

    p = TreePipeline(ta_minimize(lang), caps, live_only=True)
    reps = sorted({t for (s, _), t in reachable_classes(p).items() if p.m.accept[s]})
    for i, x in enumerate(reps):
        for y in reps[i:]:
            if pair_free(x, y):
                return Verdict(False, x, y, "product-empty", stats)
    stats["encoding_disagreement"] = 1
    return Verdict(True, stats=stats)


def forbidden_language(patterns: Iterable[Tree], base: TreeAutomaton, sup_of: Callable[[Tree], TreeAutomaton]) -> TreeAutomaton:
    """``base`` minus every encoding containing one of ``patterns``."""
    lang = base
    for p in sorted(set(patterns)):
        lang = ta_minimize(ta_intersection(lang, ta_complement(sup_of(p))))
    return lang


def cograph_language(forbidden: Iterable[Tree]) -> TreeAutomaton:
    """Cotree encodings of cographs avoiding the given cotree shapes as induced subgraphs."""
    return forbidden_language(forbidden, cotree_language(), sup_induced_encoded)


@dataclass(frozen=True)
class GraphVerdict:
    jep: bool
    g1: Cograph | None = None
    g2: Cograph | None = None
    cotree1: Cotree | None = None
    cotree2: Cotree | None = None
    certificate: str | None = None
    stats: dict | None = None


def _connected(g: Cograph, complement: bool = False) -> bool:
    return g.n > 0 and len(_components(g, list(range(g.n)), complement)) == 1


def decide_jep_cographs(forbidden: Iterable[Cograph], caps=None, closure_shortcut: bool = True) -> GraphVerdict:
    """JEP for the class of graphs avoiding ``forbidden`` as induced subgraphs;
    the forbidden set must contain P4.

    With ``closure_shortcut`` a class whose forbidden graphs are all connected
    (closed under disjoint union) or all co-connected (closed under join) is
    answered JEP without building automata.
    """
    forbidden = list(forbidden)
    if not any(is_p4(g) for g in forbidden):
        raise MissingP4("the forbidden set must contain P4")
    patterns, kept = [], []
    for g in forbidden:
        if is_p4(g):
            continue
        try:
            patterns.append(cotree_of(g).shape())
            kept.append(g)
        except NotCograph:
            warnings.warn(f"ignoring non-cograph forbidden graph with {g.n} vertices: cographs never contain it",
                          stacklevel=2)
    if closure_shortcut:
        for complement, how in ((False, "disjoint-union"), (True, "join")):
            if all(_connected(g, complement) for g in kept):
                return GraphVerdict(True, stats={"closed_under": how})
    lang = cograph_language(patterns)
    v = _decide_encoded(lang, lambda x: sup_induced_encoded(decode_general(x, UP)), caps=caps)
    if v.jep:
        return GraphVerdict(True, stats=v.stats)
    t1, t2 = decode_cotree(v.x), decode_cotree(v.y)
    return GraphVerdict(False, graph_of(t1), graph_of(t2), t1, t2, v.certificate, v.stats)


def decide_jep_general(forbidden: Iterable[Tree], labels: LabelSet, caps=None) -> Verdict:
    """JEP for unranked trees over ``labels`` avoiding ``forbidden``; pair
    members in the verdict are decoded unranked trees."""
    forbidden = list(forbidden)
    for p in forbidden:
        check_general(p)
    enc_labels = labels.extended("^")
    up = enc_labels.size - 1
    lang = forbidden_language(forbidden, encoding_language(enc_labels), lambda p: sup_general_encoded(p, enc_labels))
    v = _decide_encoded(lang, lambda x: sup_general_encoded(decode_general(x, up), enc_labels), caps=caps)
    if v.jep:
        return v
    return Verdict(False, decode_general(v.x, up), decode_general(v.y, up), v.certificate, v.stats)
