"""JEP for regular languages of binary trees under topological containment.

Construction, for a trimmed automaton ``M``:

* ``mhat``: tree-like vertices ``(t, label)`` and forest-like vertices
  ``{s1, s2}``, with gluing edges ``{s1, s2} -> (m2(label, s1, s2), label)``
  and union edges ``(t, label) -> {t, s}``.
* ``J``: the line graph of ``mhat`` restricted to what is reachable from the
  post-initial union vertices, plus one initial vertex per label.
* ``D``: the SCC condensation of ``J`` with initial / loopy / gluing /
  union / accepting flags.
* Tree walks over ``D`` and the walk ``W_Z`` of a tree ``Z``.
* The walk automaton ``N`` (states are sets of walks), explored lazily over
  the prefix-closure of the realizable walks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

from .config import DEFAULT_CAPS, Caps
from .errors import LabelMismatch, SizeLimitExceeded, UnreachableGluingVertex
from .string_jep import Verdict, condense
from .tree_automata import (
    TreeAutomaton,
    explore,
    intersection_witness,
    smallest_witnesses,
    sup_tree,
    ta_minimize,
    ta_trim,
)
from .trees import Tree, check_binary, check_labels


# ---------------------------------------------------------------------------
# the auxiliary graph and its line graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MhatGraph:
    tree_like: tuple  # (t, label)
    forest_like: tuple  # (s1, s2) with s1 <= s2
    gluing: tuple  # (label, s1, s2, t): edge (s1, s2) -> (t, label)
    union: tuple  # (t, label, s): edge (t, label) -> {t, s}


def build_mhat(m: TreeAutomaton) -> MhatGraph:
    n, k = m.n_states, m.labels.size
    tree_like = tuple((t, lab) for t in range(n) for lab in range(k))
    forest_like = tuple((s1, s2) for s1 in range(n) for s2 in range(s1, n))
    gluing = tuple(
        (lab, s1, s2, int(m.m2[lab, s1, s2])) for lab in range(k) for (s1, s2) in forest_like
    )
    union = tuple((t, lab, s) for t in range(n) for lab in range(k) for s in range(n))
    return MhatGraph(tree_like, forest_like, gluing, union)


def _pair(a, b):
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class JGraph:
    """Vertices are ``("init", label)``, ``("glue", label, s1, s2)`` or
    ``("union", t, label, s)``; edges index into ``vertices``."""

    vertices: tuple
    edges: tuple
    index: dict = field(compare=False, hash=False, repr=False)

    def kind(self, v):
        return self.vertices[v][0]


def build_j(m: TreeAutomaton, live: list | None = None) -> JGraph:
    """``live``, when given, drops every vertex that mentions a dead state."""
    n, k = m.n_states, m.labels.size
    ok = (lambda *states: all(live[q] for q in states)) if live is not None else (lambda *states: True)

    def out(v):
        if v[0] == "glue":
            _, lab, s1, s2 = v
            t = int(m.m2[lab, s1, s2])
            return [("union", t, lab, s) for s in range(n) if ok(t, s)]
        if v[0] == "union":
            _, t, _, s = v
            a, b = _pair(t, s)
            return [("glue", mu, a, b) for mu in range(k) if ok(int(m.m2[mu, a, b]))]
        _, lab = v
        t = int(m.m0[lab])
        return [("union", t, lab, s) for s in range(n) if ok(t, s)]

    post_initial = {
        ("union", int(m.m0[lab]), lab, s) for lab in range(k) for s in range(n) if ok(int(m.m0[lab]), s)
    }
    seen = set(post_initial)
    stack = list(post_initial)
    while stack:
        v = stack.pop()
        for w in out(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    kind_rank = {"init": 0, "glue": 1, "union": 2}
    verts = [("init", lab) for lab in range(k)] + sorted(seen, key=lambda v: (kind_rank[v[0]], v[1:]))
    index = {v: i for i, v in enumerate(verts)}
    edges = []
    for i, v in enumerate(verts):
        for w in out(v):
            if w in index:
                edges.append((i, index[w]))
    return JGraph(tuple(verts), tuple(edges), index)


@dataclass(frozen=True)
class TreeCondensation:
    members: tuple
    comp: tuple
    succ: tuple
    loopy: tuple
    initial: tuple
    accepting: tuple
    gluing: tuple
    union: tuple
    glue_labels: tuple  # labels of the gluing vertices in each SCC
    init_of_label: tuple  # condensation vertex of each label's initial vertex

    @property
    def n(self):
        return len(self.members)

    def edges(self):
        return [(c, d) for c in range(self.n) for d in self.succ[c]]


def tree_condensation(m: TreeAutomaton, j: JGraph) -> TreeCondensation:
    verts = j.vertices

    def accepting(v):
        x = verts[v]
        return x[0] == "glue" and bool(m.accept[int(m.m2[x[1], x[2], x[3]])])

    members, comp, succ, loopy, initial, acc = condense(
        len(verts), j.edges, lambda v: verts[v][0] == "init", accepting
    )
    gluing = tuple(any(verts[v][0] == "glue" for v in mem) for mem in members)
    union = tuple(any(verts[v][0] == "union" for v in mem) for mem in members)
    glue_labels = tuple(frozenset(verts[v][1] for v in mem if verts[v][0] == "glue") for mem in members)
    init_of_label = tuple(comp[j.index[("init", lab)]] for lab in range(m.labels.size))
    return TreeCondensation(members, comp, succ, loopy, initial, acc, gluing, union, glue_labels, init_of_label)


# ---------------------------------------------------------------------------
# tree walks
# ---------------------------------------------------------------------------

def child_compatible(d: TreeCondensation) -> list[frozenset]:
    """``compat[u]``: vertices allowed as a child label under a ``u``-labeled vertex.

    In J a child reaches its parent's gluing vertex through exactly one union
    vertex, so a child sits one D-edge below the parent or one D-edge below a
    union-containing predecessor of it. That middle SCC may be loopy: it can
    hold a gluing vertex that no node of the tree uses.
    """
    pred = [set() for _ in range(d.n)]
    for c in range(d.n):
        for e in d.succ[c]:
            pred[e].add(c)
    compat = []
    for u in range(d.n):
        allowed = set(pred[u])
        for mid in pred[u]:
            if d.union[mid]:
                allowed |= pred[mid]
        compat.append(frozenset(allowed))
    return compat


def is_tree_walk(w: Tree, d: TreeCondensation, compat=None) -> bool:
    compat = compat if compat is not None else child_compatible(d)
    for u in w.nodes():
        if u.is_leaf:
            if not d.initial[u.label]:
                return False
            continue
        if not d.gluing[u.label]:
            return False
        if len(set(u.children)) != len(u.children):
            return False
        if any(c.label not in compat[u.label] for c in u.children):
            return False
    return True


def count_tree_walks(d: TreeCondensation, limit_bits: int = 4096) -> int | None:
    """Exact number of tree walks, or None once it exceeds ``2**limit_bits``."""
    compat = child_compatible(d)
    count: list = [0] * d.n
    for c in range(d.n):  # topological order: children precede parents
        if d.initial[c]:
            count[c] = 1
        elif d.gluing[c]:
            avail = 0
            for e in compat[c]:
                if count[e] is None:
                    avail = None
                    break
                avail += count[e]
            if avail is None or avail > limit_bits:
                count[c] = None
            else:
                count[c] = 2**avail - 1
    if any(x is None for x in count):
        return None
    return sum(count)


def enumerate_tree_walks(d: TreeCondensation, cap: int | None = None) -> list[Tree]:
    """Every tree walk of ``d`` in canonical order."""
    cap = DEFAULT_CAPS.max_walks if cap is None else cap
    total = count_tree_walks(d, limit_bits=max(64, cap.bit_length() + 1))
    if total is None or total > cap:
        raise SizeLimitExceeded("tree walk enumeration", cap, {"walks": total if total is not None else "astronomical"})
    compat = child_compatible(d)
    rooted: list[list[Tree]] = [[] for _ in range(d.n)]
    for c in range(d.n):
        if d.initial[c]:
            rooted[c] = [Tree(c)]
        elif d.gluing[c]:
            pool = sorted(t for e in compat[c] for t in rooted[e])
            out = []
            for r in range(1, len(pool) + 1):
                for combo in itertools.combinations(pool, r):
                    out.append(Tree(c, combo))
            rooted[c] = out
    return sorted(t for ts in rooted for t in ts)


def _dedup_tree(label, kids) -> Tree:
    return Tree(label, sorted(set(kids)))


def _dedup_helpers(root_label, children_of):
    """Literal duplicate deletion on an explicit tree: repeatedly remove one of
    two isomorphic sibling subtrees until none remain."""
    # mutable nodes: [label, [children]]
    def build(x):
        return [root_label(x), [build(c) for c in children_of(x)]]

    def canon(nd):
        return (nd[0], tuple(sorted(canon(c) for c in nd[1])))

    def find_dup(nd):
        seen = {}
        for i, c in enumerate(nd[1]):
            key = canon(c)
            if key in seen:
                return nd, i
            seen[key] = i
        for c in nd[1]:
            hit = find_dup(c)
            if hit:
                return hit
        return None

    return build, canon, find_dup


class TreePipeline:
    """Walk machinery for one trimmed tree automaton."""

    def __init__(self, m: TreeAutomaton, caps: Caps | None = None, live_only: bool = False):
        self.caps = caps or DEFAULT_CAPS
        self.m = ta_trim(m)
        self.live = live_states(self.m)
        self.mhat = build_mhat(self.m)
        self.j = build_j(self.m, self.live if live_only else None)
        self.d = tree_condensation(self.m, self.j)
        self.compat = child_compatible(self.d)
        self._realizable = None
        self._universe = None
        self._step_cache: dict = {}
        self._wset_cache: dict = {}

    # -- W_Z -----------------------------------------------------------------
    def glue_scc(self, lab: int, s1: int, s2: int) -> int:
        a, b = _pair(s1, s2)
        v = self.j.index.get(("glue", lab, a, b))
        if v is None:
            raise UnreachableGluingVertex(f"gluing vertex ({lab}, {a}, {b}) missing from J")
        return self.d.comp[v]

    def _annotate(self, z: Tree):
        """(state, scc) for every node, children before parents."""
        out = {}

        def visit(u):
            if u.is_leaf:
                if not 0 <= u.label < self.m.labels.size:
                    raise LabelMismatch(f"label {u.label} outside automaton labels")
                res = (int(self.m.m0[u.label]), self.d.init_of_label[u.label])
            else:
                (s1, _), (s2, _) = (visit(c) for c in u.children)
                res = (int(self.m.m2[u.label, s1, s2]), self.glue_scc(u.label, s1, s2))
            out[id(u)] = res
            return res

        visit(z)
        return out

    def walk_of_tree_compositional(self, z: Tree) -> Tree:
        check_binary(z)
        return self._combine_walks(z)[1]

    def _combine_walks(self, u: Tree):
        if u.is_leaf:
            if not 0 <= u.label < self.m.labels.size:
                raise LabelMismatch(f"label {u.label} outside automaton labels")
            return int(self.m.m0[u.label]), Tree(self.d.init_of_label[u.label])
        (s1, w1), (s2, w2) = (self._combine_walks(c) for c in u.children)
        return self.combine(u.label, s1, w1, s2, w2)

    def combine(self, lab, s1, w1, s2, w2):
        c = self.glue_scc(lab, s1, s2)
        kids = []
        for w in (w1, w2):
            if w.label == c:
                kids.extend(w.children)
            else:
                kids.append(w)
        return int(self.m.m2[lab, s1, s2]), _dedup_tree(c, kids)

    def walk_of_tree_definitional(self, z: Tree) -> Tree:
        """Label every node by its gluing vertex's SCC, contract connected
        same-SCC regions, then delete duplicate sibling subtrees to a fixpoint."""
        check_binary(z)
        ann = self._annotate(z)

        # region roots and the contracted tree
        def region_children(u):
            c = ann[id(u)][1]
            out = []
            stack = list(u.children)
            while stack:
                v = stack.pop()
                if ann[id(v)][1] == c:
                    stack.extend(v.children)
                else:
                    out.append(v)
            return out

        build, canon, find_dup = _dedup_helpers(lambda u: ann[id(u)][1], region_children)
        tree = build(z)
        while True:
            hit = find_dup(tree)
            if not hit:
                break
            nd, i = hit
            del nd[1][i]

        def freeze(nd):
            return Tree(nd[0], [freeze(c) for c in nd[1]])

        return freeze(tree)

    def walk_of_tree(self, z: Tree) -> Tree:
        a = self.walk_of_tree_definitional(z)
        b = self.walk_of_tree_compositional(z)
        if a != b:
            raise AssertionError(f"walk routes disagree on {z}: {a} vs {b}")
        return a

    # -- realizable walks ----------------------------------------------------
    def realizable(self) -> set:
        """Pairs (state, W_Z) over trees ``Z`` whose state is live, as the least
        fixpoint of ``combine`` seeded by leaves. Subtrees of members of the
        language never reach a dead state, so nothing needed is lost."""
        if self._realizable is not None:
            return self._realizable
        cap = self.caps.max_walks
        m, live = self.m, self.live
        n, k = m.n_states, m.labels.size
        # walks are interned as ids: (label, frozenset of child ids)
        walk_ids: dict = {}
        walk_label: list[int] = []
        walk_kids: list[frozenset] = []

        def intern(label, kids):
            key = (label, kids)
            i = walk_ids.get(key)
            if i is None:
                i = walk_ids[key] = len(walk_label)
                walk_label.append(label)
                walk_kids.append(kids)
            return i

        seen: set = set()
        queue: list = []
        # pairing work grows quadratically before ``seen`` nears the cap
        budget = [cap * 20]
        done_by_state: list[list[int]] = [[] for _ in range(n)]

        def add(item):
            if item not in seen:
                seen.add(item)
                queue.append(item)
                if len(seen) > cap:
                    raise SizeLimitExceeded("realizable walks", cap, self.bounds_hint())

        glue = {}
        for lab in range(k):
            for s1 in range(n):
                for s2 in range(n):
                    t = int(m.m2[lab, s1, s2])
                    if live[s1] and live[s2] and live[t]:
                        glue.setdefault((s1, s2), []).append((t, self.glue_scc(lab, s1, s2)))
        for lab in range(k):
            if live[int(m.m0[lab])]:
                add((int(m.m0[lab]), intern(self.d.init_of_label[lab], frozenset())))
        head = 0
        while head < len(queue):
            s2, w2 = queue[head]
            head += 1
            done_by_state[s2].append(w2)
            for s1 in range(n):
                targets = glue.get((s1, s2))
                if not targets:
                    continue
                partners = done_by_state[s1]
                budget[0] -= len(partners) * len(targets)
                if budget[0] < 0:
                    raise SizeLimitExceeded("realizable walk combinations", cap * 20, self.bounds_hint())
                for t, c in targets:
                    kids2 = walk_kids[w2] if walk_label[w2] == c else frozenset([w2])
                    for w1 in partners:
                        kids1 = walk_kids[w1] if walk_label[w1] == c else frozenset([w1])
                        add((t, intern(c, kids1 | kids2)))
        trees: list = [None] * len(walk_label)
        for i in range(len(walk_label)):  # children are interned before parents
            trees[i] = Tree(walk_label[i], [trees[j] for j in walk_kids[i]])
        self._realizable = {(t, trees[w]) for t, w in seen}
        return self._realizable

    def realizable_walks(self) -> set:
        return {w for _, w in self.realizable()}

    def bounds_hint(self) -> dict:
        count = count_tree_walks(self.d)
        return {"tree_walks": count if count is not None else "astronomical"}

    # -- prefixes --------------------------------------------------------------
    def prefixes(self, w: Tree) -> frozenset:
        """Every duplicate-free connected subgraph of ``w`` whose leaves are leaves of ``w``."""
        return _all_prefixes(w)

    # -- walk automaton --------------------------------------------------------
    #
    # A state of the walk automaton is the set A(X) of realizable walks having
    # a prefix anchored at their root that X's image can induce; it is stored
    # as a bitmask over ``universe()``. The universe is closed under subtrees,
    # so "some prefix anywhere in W" means "some subtree of W lies in A(X)".

    def universe(self) -> list:
        """Realizable walks and all their subtrees, children before parents."""
        if self._universe is None:
            uni = set()
            for w in self.realizable_walks():
                uni.update(w.nodes())
            self._universe = sorted(uni)
            self._uid = {w: i for i, w in enumerate(self._universe)}
            self._prep_universe()
        return self._universe

    def _prep_universe(self):
        uni, uid = self._universe, self._uid
        self._kids = [tuple(uid[c] for c in w.children) for w in uni]
        self._kid_mask = [sum(1 << c for c in kids) for kids in self._kids]
        k = self.m.labels.size
        self._by_label = [
            [i for i, w in enumerate(uni) if not w.is_leaf and lab in self.d.glue_labels[w.label]]
            for lab in range(k)
        ]
        self._leaf_family = []
        for lab in range(k):
            fam = sum(1 << i for i in self._by_label[lab])
            init = uid.get(Tree(self.d.init_of_label[lab]))
            if init is not None:
                fam |= 1 << init
            self._leaf_family.append(fam)
        self._loopy = [bool(self.d.loopy[w.label]) for w in uni]
        self._target_mask = 0
        for s, w in self.realizable():
            if self.m.accept[s]:
                self._target_mask |= 1 << uid[w]
        self._has_cache: dict = {}

    def has_member(self, fam: int) -> int:
        """Walks having some subtree (themselves included) in ``fam``."""
        hit = self._has_cache.get(fam)
        if hit is None:
            hit = fam
            for i, kids in enumerate(self._kids):
                if not hit >> i & 1 and self._kid_mask[i] & hit:
                    hit |= 1 << i
            self._has_cache[fam] = hit
        return hit

    def n_leaf(self, lab: int) -> int:
        self.universe()
        return self._leaf_family[lab]

    def n_tree_step(self, lab: int, f1: int, f2: int) -> int:
        self.universe()
        key = (lab, f1, f2) if f1 <= f2 else (lab, f2, f1)
        hit = self._step_cache.get(key)
        if hit is None:
            h1, h2 = self.has_member(f1), self.has_member(f2)
            hit = 0
            for i in self._by_label[lab]:
                if self._loopy[i]:
                    ok = h1 >> i & 1 and h2 >> i & 1
                else:
                    ok = self._kid_mask[i] & h1 and self._kid_mask[i] & h2
                if ok:
                    hit |= 1 << i
            self._step_cache[key] = hit
        return hit

    def n_tree_run(self, x: Tree) -> int:
        if x.is_leaf:
            if not 0 <= x.label < self.m.labels.size:
                raise LabelMismatch(f"label {x.label} outside automaton labels")
            return self.n_leaf(x.label)
        a, b = (self.n_tree_run(c) for c in x.children)
        return self.n_tree_step(x.label, a, b)

    def wset_of_family(self, fam: int) -> int:
        self.universe()
        return self.has_member(fam) & self._target_mask

    def wset_tree(self, x: Tree) -> int:
        """Bitmask over ``universe()`` of the walks of members containing ``x``."""
        check_binary(x)
        return self.wset_of_family(self.n_tree_run(x))

    def wset_walks(self, x: Tree) -> set:
        mask = self.wset_tree(x)
        return {w for i, w in enumerate(self._universe) if mask >> i & 1}


def live_states(m: TreeAutomaton) -> list[bool]:
    """States from which some context still reaches acceptance."""
    n, k = m.n_states, m.labels.size
    live = [bool(m.accept[s]) for s in range(n)]
    changed = True
    while changed:
        changed = False
        for s in range(n):
            if live[s]:
                continue
            if any(live[int(m.m2[lab, s, t])] for lab in range(k) for t in range(n)):
                live[s] = True
                changed = True
    return live


@lru_cache(maxsize=None)
def _rooted_prefixes(w: Tree) -> frozenset:
    if w.is_leaf:
        return frozenset([w])
    options = [_rooted_prefixes(c) for c in w.children]
    out = set()
    for r in range(1, len(options) + 1):
        for chosen in itertools.combinations(options, r):
            for kids in itertools.product(*chosen):
                if len(set(kids)) == len(kids):
                    out.add(Tree(w.label, kids))
    return frozenset(out)


@lru_cache(maxsize=None)
def _all_prefixes(w: Tree) -> frozenset:
    out = set(_rooted_prefixes(w))
    for c in w.children:
        out |= _all_prefixes(c)
    return frozenset(out)


def walk_prefix(w1: Tree, w: Tree) -> bool:
    """True iff ``w1`` is isomorphic to a connected subgraph of ``w`` whose
    leaves are leaves of ``w`` (the subgraph may sit anywhere in ``w``)."""

    @lru_cache(maxsize=None)
    def match(a: Tree, v: Tree) -> bool:
        if a.label != v.label:
            return False
        if a.is_leaf:
            return v.is_leaf
        if len(a.children) > len(v.children):
            return False
        owner: dict = {}

        def augment(i, seen):
            for jx, c in enumerate(v.children):
                if jx in seen or not match(a.children[i], c):
                    continue
                seen.add(jx)
                if jx not in owner or augment(owner[jx], seen):
                    owner[jx] = i
                    return True
            return False

        return all(augment(i, set()) for i in range(len(a.children)))

    return any(match(w1, v) for v in w.nodes())


# ---------------------------------------------------------------------------
# public functions
# ---------------------------------------------------------------------------

def _pipe(m) -> TreePipeline:
    return m if isinstance(m, TreePipeline) else TreePipeline(m)


def walk_of_tree(m, z: Tree) -> Tree:
    return _pipe(m).walk_of_tree(z)


def realizable_walks(m) -> set:
    return _pipe(m).realizable()


def wset_tree(m, x: Tree) -> set:
    return _pipe(m).wset_walks(x)


def joint_tree_walks(m, x: Tree, y: Tree) -> bool:
    p = _pipe(m)
    return bool(p.wset_tree(x) & p.wset_tree(y))


def joint_witness(m, x: Tree, y: Tree) -> Tree | None:
    """Smallest ``Z`` in the language containing both ``x`` and ``y``."""
    auto = m.m if isinstance(m, TreePipeline) else m
    check_labels(x, auto.labels)
    check_labels(y, auto.labels)
    return intersection_witness(auto, sup_tree(x, auto.labels), sup_tree(y, auto.labels))


def joint_tree(m, x: Tree, y: Tree) -> bool:
    """Walk-set answer, cross-checked against product emptiness."""
    p = _pipe(m)
    a = joint_tree_walks(p, x, y)
    b = joint_witness(p.m, x, y) is not None
    if a != b:
        raise AssertionError(f"walk-set and product answers disagree on ({x}, {y})")
    return a


def reachable_classes(p: TreePipeline):
    """Reachable (state, walk family) pairs with their smallest witness tree."""
    m = p.m
    auto, states = explore(
        m.labels,
        lambda lab: (int(m.m0[lab]), p.n_leaf(lab)),
        lambda lab, s, t: (int(m.m2[lab, s[0], t[0]]), p.n_tree_step(lab, s[1], t[1])),
        lambda s: bool(m.accept[s[0]]),
        cap=p.caps.max_families,
    )
    wit = smallest_witnesses(auto)
    return {states[i]: t for i, t in wit.items()}


def decide_jep_tree(m, mode: str = "bad", caps: Caps | None = None) -> Verdict:
    """Decide JEP for the language of ``m`` (``mode="bad"``) or find the
    least semibad pair (``mode="semibad"``)."""
    if mode not in ("bad", "semibad"):
        raise ValueError("mode must be 'bad' or 'semibad'")
    p = m if isinstance(m, TreePipeline) else TreePipeline(ta_minimize(m), caps, live_only=True)
    classes = reachable_classes(p)
    reps: dict = {}
    for (s, fam), t in classes.items():
        if mode == "bad" and not p.m.accept[s]:
            continue
        if fam not in reps or t.key < reps[fam].key:
            reps[fam] = t
    items = sorted(reps.items(), key=lambda kv: kv[1].key)
    ws = [p.wset_of_family(f) for f, _ in items]
    best = None
    for i in range(len(items)):
        for jx in range(i, len(items)):
            if not ws[i] & ws[jx]:
                x, y = items[i][1], items[jx][1]
                key = (x.size + y.size, x.key, y.key)
                if best is None or key < best[0]:
                    best = (key, x, y)
    stats = {
        "realizable": len(p.realizable()),
        "universe": len(p.universe()),
        "classes": len(items),
        "product_states": len(classes),
    }
    if best is None:
        return Verdict(True, stats=stats)
    _, x, y = best
    if joint_witness(p.m, x, y) is not None:
        raise AssertionError(f"bad pair ({x}, {y}) failed product certification")
    return Verdict(False, x, y, "product-empty", stats)


def report_bounds(m) -> dict:
    """Walk count and the derived size bounds (exact integers when printable)."""
    p = _pipe(m)
    w = count_tree_walks(p.d)
    n_states, k = p.m.n_states, p.m.labels.size
    if w is None:
        return {
            "walks": "astronomical",
            "pair_size_bound": "2^(2^walks)",
            "realization_bound": "2^(walks*states*labels)",
            "states": n_states,
            "labels": k,
        }
    pair_bound = 2 ** (2**w) if w <= 12 else f"2^(2^{w})"
    real_exp = w * n_states * k
    real_bound = 2**real_exp if real_exp <= 4096 else f"2^{real_exp}"
    return {
        "walks": w,
        "pair_size_bound": pair_bound,
        "realization_bound": real_bound,
        "states": n_states,
        "labels": k,
    }
