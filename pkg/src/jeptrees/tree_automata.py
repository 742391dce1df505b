"""Deterministic bottom-up automata on unordered full binary trees.

``m2`` is stored as a full ``(labels, states, states)`` table that is
required to be symmetric in its two state arguments, so an automaton gives
the same answer on isomorphic trees.
"""

from __future__ import annotations

import heapq
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .config import DEFAULT_CAPS
from .errors import LabelMismatch, ParseError, SizeLimitExceeded
from .trees import LabelSet, Tree, check_binary, check_labels


class TreeAutomaton:
    __slots__ = ("labels", "m0", "m2", "accept")

    def __init__(self, labels: LabelSet, m0, m2, accept: Iterable[int]):
        m0 = np.asarray(m0, dtype=np.int64)
        m2 = np.asarray(m2, dtype=np.int64)
        k = labels.size
        if m2.ndim != 3 or m2.shape[0] != k or m2.shape[1] != m2.shape[2] or m2.shape[1] == 0:
            raise ValueError("m2 must have shape (labels, states, states)")
        n = m2.shape[1]
        if m0.shape != (k,):
            raise ValueError("m0 must have one entry per label")
        if m0.min() < 0 or m0.max() >= n or m2.min() < 0 or m2.max() >= n:
            raise ValueError("transition target out of range")
        if not np.array_equal(m2, m2.transpose(0, 2, 1)):
            raise ValueError("m2 must be symmetric in its state arguments")
        acc = np.zeros(n, dtype=np.bool_)
        for q in accept:
            acc[q] = True
        for arr in (m0, m2, acc):
            arr.setflags(write=False)
        self.labels = labels
        self.m0 = m0
        self.m2 = m2
        self.accept = acc

    @property
    def n_states(self) -> int:
        return self.m2.shape[1]

    @property
    def accepting(self) -> frozenset[int]:
        return frozenset(int(q) for q in np.flatnonzero(self.accept))

    def run(self, t: Tree) -> int:
        if t.is_leaf:
            if not 0 <= t.label < self.labels.size:
                raise LabelMismatch(f"label {t.label} outside automaton labels")
            return int(self.m0[t.label])
        if len(t.children) != 2:
            raise LabelMismatch("automata run on full binary trees only")
        a, b = (self.run(c) for c in t.children)
        if not 0 <= t.label < self.labels.size:
            raise LabelMismatch(f"label {t.label} outside automaton labels")
        return int(self.m2[t.label, a, b])

    def accepts(self, t: Tree) -> bool:
        return bool(self.accept[self.run(t)])

    def __repr__(self):
        return f"TreeAutomaton(labels={self.labels.size}, states={self.n_states}, accept={sorted(self.accepting)})"


def ta_run(a: TreeAutomaton, t: Tree) -> int:
    return a.run(t)


def _same_labels(a: TreeAutomaton, b: TreeAutomaton) -> None:
    if a.labels.size != b.labels.size:
        raise LabelMismatch(f"label sets differ ({a.labels.size} vs {b.labels.size})")
    if a.labels.names and b.labels.names and a.labels.names != b.labels.names:
        raise LabelMismatch(f"label names differ ({' '.join(a.labels.names)} vs {' '.join(b.labels.names)})")


def explore(
    labels: LabelSet,
    leaf: Callable[[int], Hashable],
    combine: Callable[[int, Hashable, Hashable], Hashable],
    accept: Callable[[Hashable], bool],
    cap: int | None = None,
) -> tuple[TreeAutomaton, list]:
    """Build the automaton on the states reachable from ``leaf`` under ``combine``.

    ``combine`` must be symmetric in its state arguments. Returns the
    automaton and the list of state objects (index = state number).
    """
    cap = DEFAULT_CAPS.max_states if cap is None else cap
    ids: dict = {}
    states: list = []

    def intern(s):
        i = ids.get(s)
        if i is None:
            i = ids[s] = len(states)
            states.append(s)
            if len(states) > cap:
                raise SizeLimitExceeded("automaton states", cap)
        return i

    k = labels.size
    m0 = [intern(leaf(a)) for a in range(k)]
    table: dict = {}
    done = 0
    while done < len(states):
        i = done
        done += 1
        for j in range(i + 1):
            for a in range(k):
                table[a, j, i] = intern(combine(a, states[j], states[i]))
    n = len(states)
    m2 = np.empty((k, n, n), dtype=np.int64)
    for (a, j, i), r in table.items():
        m2[a, j, i] = r
        m2[a, i, j] = r
    return TreeAutomaton(labels, m0, m2, [i for i, s in enumerate(states) if accept(s)]), states


def ta_product(a: TreeAutomaton, b: TreeAutomaton, mode: str = "and") -> TreeAutomaton:
    _same_labels(a, b)
    if mode not in ("and", "or"):
        raise ValueError("mode must be 'and' or 'or'")
    if mode == "and":
        acc = lambda s: bool(a.accept[s[0]] and b.accept[s[1]])
    else:
        acc = lambda s: bool(a.accept[s[0]] or b.accept[s[1]])
    auto, _ = explore(
        a.labels,
        lambda x: (int(a.m0[x]), int(b.m0[x])),
        lambda x, s, t: (int(a.m2[x, s[0], t[0]]), int(b.m2[x, s[1], t[1]])),
        acc,
    )
    return auto


def ta_intersection(a: TreeAutomaton, b: TreeAutomaton) -> TreeAutomaton:
    return ta_product(a, b, "and")


def ta_union(a: TreeAutomaton, b: TreeAutomaton) -> TreeAutomaton:
    return ta_product(a, b, "or")


def ta_complement(a: TreeAutomaton) -> TreeAutomaton:
    return TreeAutomaton(a.labels, a.m0.copy(), a.m2.copy(), [q for q in range(a.n_states) if not a.accept[q]])


def ta_trim(a: TreeAutomaton) -> TreeAutomaton:
    """Keep only states some tree reaches."""
    auto, _ = explore(
        a.labels,
        lambda x: int(a.m0[x]),
        lambda x, s, t: int(a.m2[x, s, t]),
        lambda s: bool(a.accept[s]),
    )
    return auto


def ta_minimize(a: TreeAutomaton) -> TreeAutomaton:
    """Moore refinement on the trimmed automaton; states renumbered by ``explore``."""
    a = ta_trim(a)
    k, n = a.labels.size, a.n_states
    block = [int(a.accept[s]) for s in range(n)]
    while True:
        sig: dict = {}
        new = []
        for s in range(n):
            key = (block[s],) + tuple(block[int(r)] for r in a.m2[:, s, :].ravel())
            new.append(sig.setdefault(key, len(sig)))
        if len(sig) == len(set(block)):
            break
        block = new
    rep = {}
    for s in range(n):
        rep.setdefault(block[s], s)
    auto, _ = explore(
        a.labels,
        lambda x: block[int(a.m0[x])],
        lambda x, b1, b2: block[int(a.m2[x, rep[b1], rep[b2]])],
        lambda b: bool(a.accept[rep[b]]),
    )
    return auto


def universal_ta(labels: LabelSet) -> TreeAutomaton:
    return TreeAutomaton(labels, [0] * labels.size, np.zeros((labels.size, 1, 1), dtype=np.int64), [0])


def smallest_witnesses(a: TreeAutomaton) -> dict[int, Tree]:
    """Least tree (by node count, then canonical key) reaching each reachable state."""
    best: dict[int, Tree] = {}
    heap: list = []
    for lab in range(a.labels.size):
        t = Tree(lab)
        heapq.heappush(heap, (t.key, id(t), t, int(a.m0[lab])))
    final: dict[int, Tree] = {}
    while heap:
        _, _, t, s = heapq.heappop(heap)
        if s in final:
            continue
        final[s] = t
        for r, u in list(final.items()):
            for lab in range(a.labels.size):
                target = int(a.m2[lab, s, r])
                if target in final:
                    continue
                cand = Tree(lab, (t, u))
                cur = best.get(target)
                if cur is None or cand.key < cur.key:
                    best[target] = cand
                    heapq.heappush(heap, (cand.key, id(cand), cand, target))
    return final


def ta_empty_witness(a: TreeAutomaton) -> Tree | None:
    """Smallest accepted tree, or None when the language is empty."""
    wit = smallest_witnesses(a)
    accepted = [t for s, t in wit.items() if a.accept[s]]
    return min(accepted, key=lambda t: t.key) if accepted else None


def ta_is_empty(a: TreeAutomaton) -> bool:
    return ta_empty_witness(a) is None


def intersection_witness(*automata: TreeAutomaton) -> Tree | None:
    """Smallest tree accepted by all automata (lazy product, then witness)."""
    first = automata[0]
    for other in automata[1:]:
        _same_labels(first, other)
    auto, _ = explore(
        first.labels,
        lambda x: tuple(int(m.m0[x]) for m in automata),
        lambda x, s, t: tuple(int(m.m2[x, p, q]) for m, p, q in zip(automata, s, t)),
        lambda s: all(m.accept[q] for m, q in zip(automata, s)),
    )
    return ta_empty_witness(auto)


# ---------------------------------------------------------------------------
# pattern automata
# ---------------------------------------------------------------------------

def _pattern_nodes(pattern: Tree):
    """Postorder node list with child index pairs."""
    order: list[Tree] = []
    kids: list[tuple] = []

    def visit(u):
        ids = tuple(visit(c) for c in u.children)
        order.append(u)
        kids.append(ids)
        return len(order) - 1

    visit(pattern)
    return order, kids


def sup_tree(pattern: Tree, labels: LabelSet) -> TreeAutomaton:
    """Trees that topologically contain ``pattern``.

    A state is the set of pattern nodes whose subtrees embed somewhere in
    the subtree read so far.
    """
    check_binary(pattern)
    check_labels(pattern, labels)
    order, kids = _pattern_nodes(pattern)
    root = len(order) - 1
    leaves_by_label = {lab: frozenset(q for q, u in enumerate(order) if u.is_leaf and u.label == lab)
                       for lab in range(labels.size)}

    def combine(lab, s, t):
        got = set(s) | set(t)
        for q, u in enumerate(order):
            if u.label != lab:
                continue
            if not kids[q]:
                got.add(q)
            else:
                c1, c2 = kids[q]
                if (c1 in s and c2 in t) or (c1 in t and c2 in s):
                    got.add(q)
        return frozenset(got)

    auto, _ = explore(labels, lambda lab: leaves_by_label[lab], combine, lambda s: root in s)
    return auto


def forb_tree(patterns: Iterable[Tree], labels: LabelSet) -> TreeAutomaton:
    """Trees containing none of ``patterns``."""
    result = universal_ta(labels)
    for p in sorted(set(patterns)):
        result = ta_intersection(result, ta_complement(sup_tree(p, labels)))
    return ta_trim(result)


def hash_pair_tree(a: TreeAutomaton, b: TreeAutomaton, sep_name: str = "#") -> TreeAutomaton:
    """``{X # Y : X in L(a), Y in L(b)}``; ``#`` gets the last label index."""
    _same_labels(a, b)
    k = a.labels.size
    labels = a.labels.extended(sep_name)
    dead, ok = "dead", "ok"

    def leaf(lab):
        return dead if lab == k else (int(a.m0[lab]), int(b.m0[lab]))

    def combine(lab, s, t):
        if not isinstance(s, tuple) or not isinstance(t, tuple):
            return dead
        if lab == k:
            if (a.accept[s[0]] and b.accept[t[1]]) or (a.accept[t[0]] and b.accept[s[1]]):
                return ok
            return dead
        return (int(a.m2[lab, s[0], t[0]]), int(b.m2[lab, s[1], t[1]]))

    auto, _ = explore(labels, leaf, combine, lambda s: s == ok)
    return auto


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def format_ta(a: TreeAutomaton) -> str:
    lines = [
        "labels: " + " ".join(a.labels.tokens()),
        f"states: {a.n_states}",
        "accept: " + " ".join(str(q) for q in sorted(a.accepting)),
    ]
    for lab in range(a.labels.size):
        lines.append(f"m0: {a.labels.name(lab)} -> {int(a.m0[lab])}")
    for lab in range(a.labels.size):
        for s in range(a.n_states):
            for t in range(s, a.n_states):
                lines.append(f"m2: {a.labels.name(lab)} ({s},{t}) -> {int(a.m2[lab, s, t])}")
    return "\n".join(lines) + "\n"


def parse_ta(text: str) -> TreeAutomaton:
    import re

    labels = None
    n = None
    accept: list[int] = []
    m0: dict = {}
    m2: dict = {}
    pair = re.compile(r"^(\S+)\s*\(\s*(\d+)\s*,\s*(\d+)\s*\)\s*->\s*(\d+)$")
    single = re.compile(r"^(\S+)\s*->\s*(\d+)$")
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {raw!r}", ln, 1)
        key, rest = key.strip(), rest.strip()
        if key == "labels":
            try:
                labels = LabelSet.of(rest.split())
            except ValueError as exc:
                raise ParseError(str(exc), ln, 1) from None
        elif key in ("states", "accept"):
            try:
                nums = [int(p) for p in rest.split()]
            except ValueError:
                raise ParseError(f"malformed {key!r} line", ln, 1) from None
            if key == "accept":
                accept = nums
            elif len(nums) != 1:
                raise ParseError("states takes one integer", ln, 1)
            else:
                n = nums[0]
        elif key in ("m0", "m2"):
            if labels is None:
                raise ParseError("labels must be declared before transitions", ln, 1)
            m = (single if key == "m0" else pair).match(rest)
            if not m:
                raise ParseError(f"malformed {key} line {raw!r}", ln, 1)
            try:
                lab = labels.index(m.group(1))
            except LabelMismatch as exc:
                raise ParseError(str(exc), ln, 1) from None
            targets = [int(g) for g in m.groups()[1:]]
            if n is not None and not all(0 <= v < n for v in targets):
                raise ParseError(f"state out of range in {raw.strip()!r}", ln, 1)
            if key == "m0":
                m0[lab] = int(m.group(2))
            else:
                s, t, r = int(m.group(2)), int(m.group(3)), int(m.group(4))
                k2 = (lab, min(s, t), max(s, t))
                if k2 in m2 and m2[k2] != r:
                    raise ParseError(f"asymmetric m2 entries for {m.group(1)} ({s},{t})", ln, 1)
                m2[k2] = r
        else:
            raise ParseError(f"unknown key {key!r}", ln, 1)
    if labels is None or n is None:
        raise ParseError("missing labels or states header")
    table = np.zeros((labels.size, n, n), dtype=np.int64)
    for lab in range(labels.size):
        if lab not in m0:
            raise ParseError(f"missing m0 for label {labels.name(lab)}")
        for s in range(n):
            for t in range(s, n):
                if (lab, s, t) not in m2:
                    raise ParseError(f"missing m2 for {labels.name(lab)} ({s},{t})")
                table[lab, s, t] = table[lab, t, s] = m2[lab, s, t]
    try:
        return TreeAutomaton(labels, [m0[i] for i in range(labels.size)], table, accept)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def all_trees_of(a: TreeAutomaton, max_nodes: int) -> list[Tree]:
    """Accepted trees with at most ``max_nodes`` nodes."""
    from .trees import enumerate_binary

    return [t for t in enumerate_binary(a.labels, max_nodes) if a.accepts(t)]


def from_predicate(labels: LabelSet, leaf, combine, accept) -> TreeAutomaton:
    """Convenience wrapper around :func:`explore` returning just the automaton."""
    auto, _ = explore(labels, leaf, combine, accept)
    return auto
