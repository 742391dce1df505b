"""Rooted labeled trees, topological containment, enumeration and text I/O.

A single immutable :class:`Tree` type backs binary trees, general (unranked)
trees and tree walks. Children are kept in canonical order, so two trees
compare equal exactly when they are isomorphic as unordered labeled trees.
Arity rules are checked by :func:`check_binary` / :func:`check_general`
where an operation requires them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterator, Sequence

from .config import DEFAULT_CAPS
from .errors import ArityError, InvalidEncoding, LabelMismatch, ParseError, SizeLimitExceeded


@dataclass(frozen=True)
class LabelSet:
    size: int
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.size < 1:
            raise ValueError("a label set needs at least one label")
        if self.names is not None:
            if len(self.names) != self.size or len(set(self.names)) != self.size:
                raise ValueError("label names must be unique and match the size")
            for name in self.names:
                if not name or re.search(r"[\s(),%]", name):
                    raise ValueError(f"unprintable label token {name!r}")

    @classmethod
    def of(cls, names: Sequence[str]) -> "LabelSet":
        return cls(len(names), tuple(names))

    def name(self, index: int) -> str:
        return self.names[index] if self.names else str(index)

    def index(self, token: str) -> int:
        if self.names:
            try:
                return self.names.index(token)
            except ValueError:
                raise LabelMismatch(f"unknown label {token!r}") from None
        try:
            value = int(token)
        except ValueError:
            raise LabelMismatch(f"unknown label {token!r}") from None
        if not 0 <= value < self.size:
            raise LabelMismatch(f"label {value} out of range for {self.size} labels")
        return value

    def tokens(self) -> list[str]:
        return [self.name(i) for i in range(self.size)]

    def extended(self, name: str) -> "LabelSet":
        """This label set plus one fresh label, which gets index ``size``."""
        return LabelSet.of(self.tokens() + [name])


class Tree:
    """Immutable rooted labeled tree with canonically ordered children."""

    __slots__ = ("label", "children", "size", "key", "_hash")

    def __init__(self, label: int, children: Sequence["Tree"] = ()):
        kids = tuple(sorted(children, key=_key))
        self.label = label
        self.children = kids
        self.size = 1 + sum(c.size for c in kids)
        self.key = (self.size, label, tuple(c.key for c in kids))
        self._hash = hash(self.key)

    def __eq__(self, other):
        return isinstance(other, Tree) and self.key == other.key

    def __lt__(self, other):
        return self.key < other.key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Tree({to_sexpr(self)})"

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def nodes(self) -> Iterator["Tree"]:
        """Preorder traversal."""
        stack = [self]
        while stack:
            t = stack.pop()
            yield t
            stack.extend(reversed(t.children))

    def labels_used(self) -> set[int]:
        return {t.label for t in self.nodes()}

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0)


def _key(t: Tree):
    return t.key


def leaf(label: int) -> Tree:
    return Tree(label)


def node(label: int, *children: Tree) -> Tree:
    return Tree(label, children)


def check_labels(t: Tree, labels: LabelSet | None) -> None:
    if labels is None:
        return
    for u in t.nodes():
        if not 0 <= u.label < labels.size:
            raise LabelMismatch(f"label {u.label} outside label set of size {labels.size}")


def check_binary(t: Tree) -> None:
    for u in t.nodes():
        if len(u.children) not in (0, 2):
            raise ArityError(f"node {to_sexpr(u)} has {len(u.children)} children; binary trees need 0 or 2")


def check_general(t: Tree) -> None:
    for u in t.nodes():
        if len(u.children) == 1:
            raise ArityError(f"internal node {to_sexpr(u)} has exactly one child")


def is_binary(t: Tree) -> bool:
    return all(len(u.children) in (0, 2) for u in t.nodes())


# ---------------------------------------------------------------------------
# topological containment
# ---------------------------------------------------------------------------

def _postorder(t: Tree) -> list[Tree]:
    out = []
    stack = [(t, False)]
    while stack:
        u, done = stack.pop()
        if done:
            out.append(u)
        else:
            stack.append((u, True))
            stack.extend((c, False) for c in reversed(u.children))
    return out


def _index(t: Tree):
    """Postorder node list plus child index lists (positions, not identity:
    equal subtrees at different positions are distinct host nodes)."""
    order: list[Tree] = []
    kids: list[list[int]] = []

    def visit(u: Tree) -> int:
        ids = [visit(c) for c in u.children]
        order.append(u)
        kids.append(ids)
        return len(order) - 1

    visit(t)
    return order, kids


def _assignable(pattern_kids, host_kids, emb) -> bool:
    """Injective assignment of pattern children to host children (Kuhn matching).

    ``emb[c]`` is a bitmask over host nodes whose subtrees contain ``c``.
    """
    if len(pattern_kids) > len(host_kids):
        return False
    owner: dict[int, int] = {}

    def augment(c, seen):
        for h in host_kids:
            if h in seen or not (emb[c] >> h) & 1:
                continue
            seen.add(h)
            if h not in owner or augment(owner[h], seen):
                owner[h] = c
                return True
        return False

    return all(augment(c, set()) for c in pattern_kids)


def _match_table(host: Tree, pattern: Tree):
    hnodes, hkids = _index(host)
    pnodes, pkids = _index(pattern)
    emb = [0] * len(pnodes)
    match = [0] * len(pnodes)
    for q, pq in enumerate(pnodes):
        m = 0
        e = 0
        for h, ht in enumerate(hnodes):
            ok = ht.label == pq.label and (not pkids[q] or _assignable(pkids[q], hkids[h], emb))
            if ok:
                m |= 1 << h
            if ok or any((e >> c) & 1 for c in hkids[h]):
                e |= 1 << h
        match[q] = m
        emb[q] = e
    return match, emb


def binary_contains(host: Tree, pattern: Tree, labels: LabelSet | None = None) -> bool:
    """True iff ``pattern`` is topologically contained in ``host`` (binary trees)."""
    check_labels(host, labels)
    check_labels(pattern, labels)
    check_binary(host)
    check_binary(pattern)
    match, _ = _match_table(host, pattern)
    return match[-1] != 0


def general_contains(host: Tree, pattern: Tree, labels: LabelSet | None = None) -> bool:
    """Topological containment for unranked trees (internal arity >= 2)."""
    check_labels(host, labels)
    check_labels(pattern, labels)
    check_general(host)
    check_general(pattern)
    match, _ = _match_table(host, pattern)
    return match[-1] != 0


def contains_any_arity(host: Tree, pattern: Tree) -> bool:
    """Containment without arity checks; children go to distinct child branches."""
    match, _ = _match_table(host, pattern)
    return match[-1] != 0


# ---------------------------------------------------------------------------
# unranked <-> binary encoding
# ---------------------------------------------------------------------------

def encode_general(t: Tree, up: int) -> Tree:
    """Binary encoding of an unranked tree; ``up`` is the chain label.

    A node with children v1..vx becomes the chain u1..u(x-1): u1 keeps the
    label, the rest are labeled ``up``; u_i has children u(i+1) and v_i, and
    u(x-1) has children v(x-1) and v_x.
    """
    check_general(t)

    def enc(u: Tree) -> Tree:
        if u.is_leaf:
            if u.label == up:
                raise ArityError("the chain label cannot occur in the source tree")
            return Tree(u.label)
        kids = [enc(v) for v in u.children]
        x = len(kids)
        cur = Tree(u.label if x == 2 else up, (kids[x - 2], kids[x - 1]))
        for i in range(x - 2, 0, -1):
            cur = Tree(u.label if i == 1 else up, (kids[i - 1], cur))
        return cur

    return enc(t)


def decode_general(t: Tree, up: int) -> Tree:
    """Inverse of :func:`encode_general`."""

    def real(u: Tree) -> Tree:
        if u.label == up:
            raise InvalidEncoding("chain label where a real node is required", u)
        if u.is_leaf:
            return Tree(u.label)
        if len(u.children) != 2:
            raise InvalidEncoding("encoded nodes must have 0 or 2 children", u)
        return Tree(u.label, collect(u))

    def collect(u: Tree) -> list[Tree]:
        out = []
        while True:
            a, b = u.children
            chain = [c for c in (a, b) if c.label == up]
            if len(chain) == 2:
                raise InvalidEncoding("two chain children under one chain node", u)
            if not chain:
                out.extend((real(a), real(b)))
                return out
            nxt = chain[0]
            other = b if nxt is a else a
            out.append(real(other))
            if nxt.is_leaf or len(nxt.children) != 2:
                raise InvalidEncoding("chain node must have two children", nxt)
            u = nxt

    return real(t)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def enumerate_binary(labels: LabelSet | int, max_nodes: int, cap: int | None = None) -> list[Tree]:
    """Every full binary tree with at most ``max_nodes`` nodes, each isomorphism
    class once, ordered by size and then canonical key."""
    k = labels if isinstance(labels, int) else labels.size
    if max_nodes < 1:
        raise ValueError("max_nodes must be >= 1")
    cap = DEFAULT_CAPS.max_items if cap is None else cap
    by_size: dict[int, list[Tree]] = {1: [Tree(a) for a in range(k)]}
    total = k
    for n in range(3, max_nodes + 1, 2):
        level = []
        for a in range(1, (n - 1) // 2 + 1, 2):
            b = n - 1 - a
            left, right = by_size[a], by_size[b]
            for lab in range(k):
                if a == b:
                    for i in range(len(left)):
                        for j in range(i, len(left)):
                            level.append(Tree(lab, (left[i], left[j])))
                else:
                    for x in left:
                        for y in right:
                            level.append(Tree(lab, (x, y)))
        total += len(level)
        if total > cap:
            raise SizeLimitExceeded("binary tree enumeration", cap, {"max_nodes": max_nodes})
        level.sort()
        by_size[n] = level
    out = []
    for n in sorted(by_size):
        if n <= max_nodes:
            out.extend(by_size[n])
    return out


def count_ordered_binary(k: int, max_nodes: int) -> int:
    """Number of ordered (left/right distinguished) labeled full binary trees."""
    from math import comb

    total = 0
    for n in range(1, max_nodes + 1, 2):
        internal = (n - 1) // 2
        catalan = comb(2 * internal, internal) // (internal + 1)
        total += catalan * k**n
    return total


def enumerate_general(labels: LabelSet | int, max_nodes: int, cap: int | None = None) -> list[Tree]:
    """Every unranked tree (internal arity >= 2) with at most ``max_nodes`` nodes."""
    k = labels if isinstance(labels, int) else labels.size
    cap = DEFAULT_CAPS.max_items if cap is None else cap
    by_size: dict[int, list[Tree]] = {1: [Tree(a) for a in range(k)]}
    pool: list[Tree] = list(by_size[1])
    for n in range(2, max_nodes + 1):
        level = set()
        budget = n - 1
        smaller = [t for t in pool if t.size <= budget - 1]
        for arity in range(2, budget + 1):
            for combo in combinations_with_replacement(range(len(smaller)), arity):
                if sum(smaller[i].size for i in combo) != budget:
                    continue
                kids = [smaller[i] for i in combo]
                for lab in range(k):
                    level.add(Tree(lab, kids))
        by_size[n] = sorted(level)
        pool.extend(by_size[n])
        if len(pool) > cap:
            raise SizeLimitExceeded("general tree enumeration", cap, {"max_nodes": max_nodes})
    return pool


# ---------------------------------------------------------------------------
# s-expressions
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\(|\)|[^\s()]+)")


def to_sexpr(t: Tree, labels: LabelSet | None = None) -> str:
    name = labels.name(t.label) if labels else str(t.label)
    if t.is_leaf:
        return f"({name})"
    return f"({name} " + " ".join(to_sexpr(c, labels) for c in t.children) + ")"


def parse_tree(text: str, labels: LabelSet | None = None, arity: str = "any") -> Tree:
    """Parse ``(label child child ...)``; ``arity`` is ``any``, ``binary`` or ``general``."""
    tokens = []
    pos = 0
    line, col_base = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        start = m.start(1)
        line = text.count("\n", 0, start) + 1
        col = start - (text.rfind("\n", 0, start) + 1) + 1
        tokens.append((m.group(1), line, col))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError("unexpected trailing characters", line)
    if not tokens:
        raise ParseError("empty tree text", 1, 1)
    i = 0

    def label_of(tok, ln, cl):
        try:
            return labels.index(tok) if labels else int(tok)
        except (ValueError, LabelMismatch) as exc:
            raise ParseError(f"bad label {tok!r}: {exc}", ln, cl) from None

    def parse():
        nonlocal i
        if i >= len(tokens):
            raise ParseError("unexpected end of input", *tokens[-1][1:])
        tok, ln, cl = tokens[i]
        if tok != "(":
            raise ParseError(f"expected '(' but found {tok!r}", ln, cl)
        i += 1
        if i >= len(tokens) or tokens[i][0] in "()":
            raise ParseError("expected a label", ln, cl)
        lab = label_of(*tokens[i])
        i += 1
        kids = []
        while i < len(tokens) and tokens[i][0] == "(":
            kids.append(parse())
        if i >= len(tokens) or tokens[i][0] != ")":
            where = tokens[i][1:] if i < len(tokens) else tokens[-1][1:]
            raise ParseError("expected ')'", *where)
        i += 1
        if arity == "binary" and len(kids) not in (0, 2):
            raise ArityError(f"line {ln}, column {cl}: binary node with {len(kids)} children")
        if arity == "general" and len(kids) == 1:
            raise ArityError(f"line {ln}, column {cl}: internal node with exactly one child")
        return Tree(lab, kids)

    tree = parse()
    if i != len(tokens):
        raise ParseError("trailing tokens after tree", *tokens[i][1:])
    return tree
