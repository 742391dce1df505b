"""JEP for regular string languages under the subsequence order.

Pipeline: the DFA's transition digraph, its line graph, the SCC
condensation ``D`` with loopy/initial/accepting flags, the finite set of
walks in ``D`` from initial vertices, and the lazily explored powerset
automaton over walks whose state after reading ``x`` determines the set of
walks of the language members above ``x``.

The empty walk ``()`` stands for the walk of the empty string; it is a
prefix of every walk and belongs to the start state of the walk automaton.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _accel
from .config import DEFAULT_CAPS, Caps
from .dfa import (
    Dfa,
    dfa_minimize,
    dfa_product,
    dfa_trim,
    empty_language,
    hash_pair_string,
    intersection_witness,
    sup_string,
)
from .errors import AlphabetError, SizeLimitExceeded

Walk = tuple  # tuple of condensation vertex ids; () is the empty walk
EMPTY_WALK: Walk = ()


@dataclass(frozen=True)
class LineGraph:
    """Vertices are transitions ``(source, symbol, target)``."""

    vertices: tuple
    edges: tuple

    @property
    def n(self):
        return len(self.vertices)


def line_graph(edges: Iterable[tuple]) -> LineGraph:
    """Directed line graph of a labeled digraph given as ``(u, label, v)`` triples.

    ``uv -> vw`` for every composable pair, including a loop at a loop edge.
    """
    verts = tuple(edges)
    by_source: dict = {}
    for i, (u, _, _) in enumerate(verts):
        by_source.setdefault(u, []).append(i)
    out = []
    for i, (_, _, v) in enumerate(verts):
        for j in by_source.get(v, ()):
            out.append((i, j))
    return LineGraph(verts, tuple(out))


@dataclass(frozen=True)
class CondensationDag:
    """SCC quotient numbered topologically (sources first, ties by least member)."""

    members: tuple  # members[c] = sorted tuple of line-graph vertex ids
    comp: tuple  # comp[v] = condensation vertex of line-graph vertex v
    succ: tuple  # succ[c] = sorted successor tuple, no self loops
    loopy: tuple
    initial: tuple
    accepting: tuple

    @property
    def n(self):
        return len(self.members)

    def edges(self):
        return [(c, d) for c in range(self.n) for d in self.succ[c]]


def condense(n: int, edges, initial_vertex, accepting_vertex) -> tuple:
    """Shared SCC quotient: returns ``(members, comp, succ, loopy, initial, accepting)``.

    ``initial_vertex``/``accepting_vertex`` are per-vertex predicates.
    """
    raw = _accel.scc(n, edges)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(int(raw[v]), []).append(v)
    qsucc: dict[int, set] = {g: set() for g in groups}
    indeg = {g: 0 for g in groups}
    self_loop = {g: False for g in groups}
    for u, v in set(edges):
        a, b = int(raw[u]), int(raw[v])
        if a == b:
            self_loop[a] = True
        elif b not in qsucc[a]:
            qsucc[a].add(b)
            indeg[b] += 1
    heap = [(min(groups[g]), g) for g in groups if indeg[g] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, g = heapq.heappop(heap)
        order.append(g)
        for h in qsucc[g]:
            indeg[h] -= 1
            if indeg[h] == 0:
                heapq.heappush(heap, (min(groups[h]), h))
    new = {g: i for i, g in enumerate(order)}
    members = tuple(tuple(groups[g]) for g in order)
    comp = [0] * n
    for g, i in new.items():
        for v in groups[g]:
            comp[v] = i
    succ = tuple(tuple(sorted(new[h] for h in qsucc[g])) for g in order)
    loopy = tuple(len(groups[g]) > 1 or self_loop[g] for g in order)
    initial = tuple(any(initial_vertex(v) for v in groups[g]) for g in order)
    accepting = tuple(any(accepting_vertex(v) for v in groups[g]) for g in order)
    return members, tuple(comp), succ, loopy, initial, accepting


def condensation(m: Dfa) -> tuple[LineGraph, CondensationDag]:
    """Line graph of ``m``'s transition digraph and its flagged condensation."""
    lg = line_graph(m.transitions())
    parts = condense(
        lg.n,
        lg.edges,
        lambda v: lg.vertices[v][0] == m.start,
        lambda v: bool(m.accept[lg.vertices[v][2]]),
    )
    return lg, CondensationDag(*parts)


def enumerate_walks(d: CondensationDag, cap: int | None = None) -> list[Walk]:
    """All walks of ``d`` starting at an initial vertex, plus the empty walk."""
    cap = DEFAULT_CAPS.max_walks if cap is None else cap
    out = [EMPTY_WALK]
    stack = [(c,) for c in reversed(range(d.n)) if d.initial[c]]
    while stack:
        w = stack.pop()
        out.append(w)
        if len(out) > cap:
            raise SizeLimitExceeded("walk enumeration", cap)
        stack.extend(w + (s,) for s in reversed(d.succ[w[-1]]))
    out.sort(key=lambda w: (len(w), w))
    return out


@dataclass
class StringPipeline:
    """All walk machinery for one trimmed DFA."""

    dfa: Dfa
    lg: LineGraph
    d: CondensationDag
    walks: list
    caps: Caps = field(default_factory=lambda: DEFAULT_CAPS)

    def __post_init__(self):
        self.walk_id = {w: i for i, w in enumerate(self.walks)}
        # symbols readable inside each condensation vertex
        self.reads = [set() for _ in range(self.d.n)]
        for v, (_, a, _) in enumerate(self.lg.vertices):
            self.reads[self.d.comp[v]].add(a)
        # walks in which a string may read its next symbol, given the walk where
        # it read the previous one: proper extensions, or the same walk when its
        # last vertex is loopy (a non-loopy vertex is one transition, used once)
        self.admissible = []
        for w in self.walks:
            adm = {self.walk_id[w[:i]] for i in range(len(w))}
            if w and self.d.loopy[w[-1]]:
                adm.add(self.walk_id[w])
            self.admissible.append(frozenset(adm))
        self.by_last_symbol = {a: [] for a in self.dfa.alphabet}
        for i, w in enumerate(self.walks):
            if w:
                for a in self.reads[w[-1]]:
                    self.by_last_symbol[a].append(i)
        self.start_family = frozenset(
            self.walk_id[w] for w in self.walks if len(w) <= 1 and (not w or self.d.initial[w[0]])
        )
        self.accepting_walks = frozenset(
            i for i, w in enumerate(self.walks) if w and self.d.accepting[w[-1]]
        )
        # all prefixes (including the walk itself) of each walk, for wset
        self.prefixes = [frozenset(self.walk_id[w[:i]] for i in range(len(w) + 1)) for w in self.walks]
        self._step_cache: dict = {}
        self._wset_cache: dict = {}
        self.eps_in_language = bool(self.dfa.accept[self.dfa.start])

    # -- walk of a string ---------------------------------------------------
    def walk_of_string(self, z: str) -> Walk:
        q = self.dfa.start
        k = len(self.dfa.alphabet)
        out: list[int] = []
        for c in self.dfa.encode(z):
            comp = self.d.comp[q * k + c]
            if not out or out[-1] != comp:
                out.append(comp)
            q = int(self.dfa.delta[q, c])
        return tuple(out)

    # -- powerset walk automaton ---------------------------------------------
    def n_step(self, family: frozenset, a: str) -> frozenset:
        if a not in self.by_last_symbol:
            raise AlphabetError(f"symbol {a!r} not in alphabet")
        key = (family, a)
        hit = self._step_cache.get(key)
        if hit is None:
            hit = frozenset(i for i in self.by_last_symbol[a] if not self.admissible[i].isdisjoint(family))
            self._step_cache[key] = hit
        return hit

    def n_run(self, x: str) -> frozenset:
        fam = self.start_family
        for a in x:
            fam = self.n_step(fam, a)
        return fam

    def wset_of_family(self, family: frozenset, is_empty_string: bool = False) -> frozenset:
        key = (family, is_empty_string)
        hit = self._wset_cache.get(key)
        if hit is None:
            hit = frozenset(i for i in self.accepting_walks if not self.prefixes[i].isdisjoint(family))
            if is_empty_string and self.eps_in_language:
                hit = hit | {self.walk_id[EMPTY_WALK]}
            self._wset_cache[key] = hit
        return hit

    def wset(self, x: str) -> frozenset:
        for a in x:
            self.dfa.symbol_index(a)
        return self.wset_of_family(self.n_run(x), x == "")

    def wset_walks(self, x: str) -> set:
        return {self.walks[i] for i in self.wset(x)}


def build_pipeline(m: Dfa, caps: Caps | None = None) -> StringPipeline:
    caps = caps or DEFAULT_CAPS
    m = dfa_trim(m)
    lg, d = condensation(m)
    walks = enumerate_walks(d, caps.max_walks)
    return StringPipeline(m, lg, d, walks, caps)


def _pipe(m) -> StringPipeline:
    return m if isinstance(m, StringPipeline) else build_pipeline(m)


def walk_of_string(m, z: str) -> Walk:
    return _pipe(m).walk_of_string(z)


def wset(m, x: str) -> set:
    return _pipe(m).wset_walks(x)


# ---------------------------------------------------------------------------
# joint embedding of a pair
# ---------------------------------------------------------------------------

def joint_string_walks(m, x: str, y: str) -> bool:
    p = _pipe(m)
    return not p.wset(x).isdisjoint(p.wset(y))


def joint_string_product(m: Dfa, x: str, y: str) -> str | None:
    """Shortlex-least ``z`` in the language containing both ``x`` and ``y``."""
    m = m.dfa if isinstance(m, StringPipeline) else m
    return intersection_witness(m, sup_string(x, m.alphabet), sup_string(y, m.alphabet))


def joint_string(m, x: str, y: str) -> bool:
    """Decide joint embeddability by walk sets, cross-checked by product emptiness."""
    p = _pipe(m)
    by_walks = joint_string_walks(p, x, y)
    by_product = joint_string_product(p.dfa, x, y) is not None
    if by_walks != by_product:
        raise AssertionError(f"walk-set and product answers disagree on ({x!r}, {y!r})")
    return by_walks


# ---------------------------------------------------------------------------
# deciding JEP
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    jep: bool
    x: object = None
    y: object = None
    certificate: str | None = None
    stats: dict = field(default_factory=dict, compare=False)


def _shortlex(s: str):
    return (len(s), s)


def reachable_classes(p: StringPipeline, caps: Caps | None = None) -> dict:
    """BFS over (DFA state, walk family) pairs; shortlex-least witness per pair."""
    caps = caps or p.caps
    start = (p.dfa.start, p.start_family)
    seen = {start: ""}
    queue = [start]
    i = 0
    while i < len(queue):
        q, fam = queue[i]
        w = seen[(q, fam)]
        i += 1
        for c, a in enumerate(p.dfa.alphabet):
            nxt = (int(p.dfa.delta[q, c]), p.n_step(fam, a))
            if nxt not in seen:
                seen[nxt] = w + a
                queue.append(nxt)
                if len(seen) > caps.max_families:
                    raise SizeLimitExceeded(
                        "reachable product states", caps.max_families, {"walks": len(p.walks)}
                    )
    return seen


def decide_jep_string(m, mode: str = "bad", caps: Caps | None = None) -> Verdict:
    """Decide whether the language (bad mode) has JEP, or find its least bad pair.

    ``mode="semibad"`` drops the requirement that both members lie in the
    language. The reported pair is shortlex-least by total length, then by
    the pair itself; it is certified by an empty three-way product.
    """
    if mode not in ("bad", "semibad"):
        raise ValueError("mode must be 'bad' or 'semibad'")
    p = _pipe(m)
    states = reachable_classes(p, caps)
    reps: dict = {}
    for (q, fam), w in states.items():
        if mode == "bad" and not p.dfa.accept[q]:
            continue
        key = (fam, w == "")
        if key not in reps or _shortlex(w) < _shortlex(reps[key]):
            reps[key] = w
    classes = sorted(reps.items(), key=lambda kv: _shortlex(kv[1]))
    ws = [p.wset_of_family(fam, eps) for (fam, eps), _ in classes]
    best = None
    for i in range(len(classes)):
        for j in range(i, len(classes)):
            if ws[i].isdisjoint(ws[j]):
                x, y = classes[i][1], classes[j][1]
                key = (len(x) + len(y), _shortlex(x), _shortlex(y))
                if best is None or key < best[0]:
                    best = (key, x, y)
    stats = {"walks": len(p.walks), "classes": len(classes), "product_states": len(states)}
    if best is None:
        return Verdict(True, stats=stats)
    _, x, y = best
    if joint_string_product(p.dfa, x, y) is not None:
        raise AssertionError(f"bad pair ({x!r}, {y!r}) failed product certification")
    return Verdict(False, x, y, "product-empty", stats)


def family_graph(p: StringPipeline, caps: Caps | None = None):
    """Reachable walk families with their successor map."""
    caps = caps or p.caps
    seen = {p.start_family: 0}
    order = [p.start_family]
    succ = []
    i = 0
    while i < len(order):
        fam = order[i]
        row = []
        for a in p.dfa.alphabet:
            nxt = p.n_step(fam, a)
            if nxt not in seen:
                seen[nxt] = len(order)
                order.append(nxt)
                if len(order) > caps.max_families:
                    raise SizeLimitExceeded("walk families", caps.max_families)
            row.append(seen[nxt])
        succ.append(row)
        i += 1
    return order, succ


def _simple_run_strings(p: StringPipeline, bound: int, cap: int) -> list[str]:
    """Strings of length <= bound whose walk-automaton run repeats no state."""
    order, succ = family_graph(p)
    out = []
    stack = [("", 0, frozenset([0]))]
    while stack:
        w, s, used = stack.pop()
        out.append(w)
        if len(out) > cap:
            raise SizeLimitExceeded("minimal-pair candidates", cap)
        if len(w) >= bound:
            continue
        for c, a in enumerate(p.dfa.alphabet):
            t = succ[s][c]
            if t not in used:
                stack.append((w + a, t, used | {t}))
    return sorted(set(out), key=_shortlex)


def claim_two_bound(p: StringPipeline) -> int:
    """Length bound for members of minimal semibad pairs: the number of
    reachable walk families (a run repeating a family can be shortened)."""
    order, _ = family_graph(p)
    return len(order)


def is_subsequence(x: str, z: str) -> bool:
    it = iter(z)
    return all(ch in it for ch in x)


def minimal_semibad_string(m, bound: int | None = None, caps: Caps | None = None) -> set:
    """All subsequence-minimal semibad pairs whose members have length <= bound.

    Members of a minimal pair have repetition-free walk-automaton runs, so
    scanning those strings is complete once ``bound`` reaches
    :func:`claim_two_bound`, which is the default.
    """
    p = _pipe(m)
    caps = caps or p.caps
    if bound is None:
        bound = claim_two_bound(p)
    if bound < 1:
        raise ValueError("bound must be >= 1")
    cands = _simple_run_strings(p, bound, caps.max_items)
    ws = [p.wset(x) for x in cands]
    pairs = [
        (i, j)
        for i in range(len(cands))
        for j in range(len(cands))
        if ws[i].isdisjoint(ws[j])
    ]
    if not pairs:
        return set()
    sub = _subsequence_table(cands, p.dfa.alphabet)
    minimal = set()
    for i, j in pairs:
        if not any((a, b) != (i, j) and sub[a, i] and sub[b, j] for a, b in pairs):
            minimal.add((cands[i], cands[j]))
    return minimal


def _subsequence_table(strings: list[str], alphabet) -> np.ndarray:
    index = {a: i for i, a in enumerate(alphabet)}
    width = max(1, max(len(s) for s in strings))
    codes = np.zeros((len(strings), width), dtype=np.int64)
    lens = np.array([len(s) for s in strings], dtype=np.int64)
    for r, s in enumerate(strings):
        for c, ch in enumerate(s):
            codes[r, c] = index[ch]
    return _accel.subsequence_matrix(codes, lens, codes, lens)


def badpair_automaton_string(m, bound: int | None = None, mode: str = "semibad", sep: str = "#") -> Dfa:
    """DFA over the alphabet plus ``sep`` accepting ``x#y`` exactly when the
    pair is semibad (or bad, with ``mode="bad"``)."""
    if mode not in ("bad", "semibad"):
        raise ValueError("mode must be 'bad' or 'semibad'")
    p = _pipe(m)
    alphabet = p.dfa.alphabet
    result = empty_language(alphabet + (sep,))
    for x, y in sorted(minimal_semibad_string(p, bound)):
        above = hash_pair_string(sup_string(x, alphabet), sup_string(y, alphabet), sep)
        result = dfa_minimize(dfa_product(result, above, mode="or"))
    if mode == "bad":
        result = dfa_minimize(dfa_product(result, hash_pair_string(p.dfa, p.dfa, sep)))
    return dfa_trim(result)


def report_bounds(m) -> dict:
    p = _pipe(m)
    w = len(p.walks)
    return {
        "walks": w,
        "minimal_pair_length_bound": 2**w,
        "reachable_families": claim_two_bound(p),
    }
