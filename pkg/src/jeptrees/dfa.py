"""Total deterministic string automata over single-character alphabets."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from . import _accel
from .errors import AlphabetError, ParseError


class Dfa:
    """A total DFA. States are ``0..n-1``; ``delta[state, symbol_index]``."""

    __slots__ = ("alphabet", "delta", "start", "accept", "_index")

    def __init__(self, alphabet: Sequence[str], delta, start: int, accept: Iterable[int]):
        alphabet = tuple(alphabet)
        if len(set(alphabet)) != len(alphabet) or any(len(a) != 1 for a in alphabet):
            raise AlphabetError(f"alphabet must be distinct single characters: {alphabet!r}")
        delta = np.asarray(delta, dtype=np.int64)
        if delta.ndim != 2 or delta.shape[1] != len(alphabet) or delta.shape[0] == 0:
            raise ValueError("delta must have shape (n_states, n_symbols) with n_states >= 1")
        n = delta.shape[0]
        if delta.size and (delta.min() < 0 or delta.max() >= n):
            raise ValueError("transition target out of range")
        if not 0 <= start < n:
            raise ValueError("start state out of range")
        acc = np.zeros(n, dtype=np.bool_)
        for q in accept:
            if not 0 <= q < n:
                raise ValueError("accepting state out of range")
            acc[q] = True
        delta.setflags(write=False)
        acc.setflags(write=False)
        self.alphabet = alphabet
        self.delta = delta
        self.start = int(start)
        self.accept = acc
        self._index = {a: i for i, a in enumerate(alphabet)}

    @property
    def n_states(self) -> int:
        return self.delta.shape[0]

    @property
    def accepting(self) -> frozenset[int]:
        return frozenset(int(q) for q in np.flatnonzero(self.accept))

    def symbol_index(self, a: str) -> int:
        try:
            return self._index[a]
        except KeyError:
            raise AlphabetError(f"symbol {a!r} not in alphabet {''.join(self.alphabet)!r}") from None

    def encode(self, w: str) -> list[int]:
        return [self.symbol_index(a) for a in w]

    def step(self, q: int, a: str) -> int:
        return int(self.delta[q, self.symbol_index(a)])

    def run(self, w: str, state: int | None = None) -> int:
        q = self.start if state is None else state
        for c in self.encode(w):
            q = int(self.delta[q, c])
        return q

    def accepts(self, w: str) -> bool:
        return bool(self.accept[self.run(w)])

    def transitions(self):
        """``(source, symbol, target)`` triples in state-major, symbol order."""
        for q in range(self.n_states):
            for i, a in enumerate(self.alphabet):
                yield q, a, int(self.delta[q, i])

    def __repr__(self):
        return f"Dfa(alphabet={''.join(self.alphabet)!r}, states={self.n_states}, start={self.start}, accept={sorted(self.accepting)})"


def dfa_run(a: Dfa, w: str) -> int:
    return a.run(w)


def universal(alphabet: Sequence[str]) -> Dfa:
    return Dfa(alphabet, np.zeros((1, len(alphabet)), dtype=np.int64), 0, [0])


def empty_language(alphabet: Sequence[str]) -> Dfa:
    return Dfa(alphabet, np.zeros((1, len(alphabet)), dtype=np.int64), 0, [])


def _check_same(a: Dfa, b: Dfa) -> None:
    if a.alphabet != b.alphabet:
        raise AlphabetError(f"alphabets differ: {a.alphabet} vs {b.alphabet}")


def dfa_product(a: Dfa, b: Dfa, mode: str = "and") -> Dfa:
    """Product automaton restricted to pairs reachable from the start pair."""
    _check_same(a, b)
    if mode not in ("and", "or"):
        raise ValueError("mode must be 'and' or 'or'")
    k = len(a.alphabet)
    ids = {(a.start, b.start): 0}
    order = [(a.start, b.start)]
    rows = []
    i = 0
    while i < len(order):
        p, q = order[i]
        row = []
        for c in range(k):
            nxt = (int(a.delta[p, c]), int(b.delta[q, c]))
            if nxt not in ids:
                ids[nxt] = len(order)
                order.append(nxt)
            row.append(ids[nxt])
        rows.append(row)
        i += 1
    if mode == "and":
        acc = [j for j, (p, q) in enumerate(order) if a.accept[p] and b.accept[q]]
    else:
        acc = [j for j, (p, q) in enumerate(order) if a.accept[p] or b.accept[q]]
    return Dfa(a.alphabet, rows, 0, acc)


def dfa_complement(a: Dfa) -> Dfa:
    return Dfa(a.alphabet, a.delta.copy(), a.start, [q for q in range(a.n_states) if not a.accept[q]])


def dfa_trim(a: Dfa) -> Dfa:
    """Drop states unreachable from the start; renumber in BFS order."""
    ids = {a.start: 0}
    order = [a.start]
    i = 0
    while i < len(order):
        q = order[i]
        for c in range(len(a.alphabet)):
            r = int(a.delta[q, c])
            if r not in ids:
                ids[r] = len(order)
                order.append(r)
        i += 1
    rows = [[ids[int(a.delta[q, c])] for c in range(len(a.alphabet))] for q in order]
    return Dfa(a.alphabet, rows, 0, [ids[q] for q in order if a.accept[q]])


def intersection_witness(*automata: Dfa) -> str | None:
    """Shortlex-least string accepted by every automaton, or None."""
    if not automata:
        raise ValueError("need at least one automaton")
    for other in automata[1:]:
        _check_same(automata[0], other)
    autos = list(automata)
    while len(autos) > 3:
        autos = [dfa_product(autos[0], autos[1])] + autos[2:]
    one = universal(autos[0].alphabet)
    while len(autos) < 3:
        autos.append(one)
    (a, b, c) = autos
    hit, parent, symbol = _accel.triple_product_search(
        a.delta, a.start, a.accept, b.delta, b.start, b.accept, c.delta, c.start, c.accept
    )
    if hit < 0:
        return None
    out = []
    while parent[hit] >= 0:
        out.append(a.alphabet[symbol[hit]])
        hit = parent[hit]
    return "".join(reversed(out))


def dfa_empty_witness(a: Dfa) -> str | None:
    return intersection_witness(a)


def is_empty(a: Dfa) -> bool:
    return intersection_witness(a) is None


def sup_string(w: str, alphabet: Sequence[str]) -> Dfa:
    """Strings having ``w`` as a (scattered) subsequence; ``len(w)+1`` states."""
    alphabet = tuple(alphabet)
    for ch in w:
        if ch not in alphabet:
            raise AlphabetError(f"symbol {ch!r} not in alphabet")
    n = len(w) + 1
    delta = np.zeros((n, len(alphabet)), dtype=np.int64)
    for q in range(n):
        for i, a in enumerate(alphabet):
            delta[q, i] = q + 1 if q < len(w) and w[q] == a else q
    return Dfa(alphabet, delta, 0, [n - 1])


def forb_string(forbidden: Iterable[str], alphabet: Sequence[str]) -> Dfa:
    """Strings avoiding every member of ``forbidden`` as a subsequence."""
    result = universal(alphabet)
    for f in sorted(set(forbidden)):
        result = dfa_product(result, dfa_complement(sup_string(f, alphabet)))
    return dfa_trim(result)


def hash_pair_string(a: Dfa, b: Dfa, sep: str = "#") -> Dfa:
    """``{x + sep + y : x in L(a), y in L(b)}`` over the alphabet plus ``sep``."""
    _check_same(a, b)
    if sep in a.alphabet:
        raise AlphabetError(f"separator {sep!r} already in alphabet")
    k = len(a.alphabet)
    na, nb = a.n_states, b.n_states
    dead = na + nb
    delta = np.full((na + nb + 1, k + 1), dead, dtype=np.int64)
    for q in range(na):
        delta[q, :k] = a.delta[q]
        if a.accept[q]:
            delta[q, k] = na + b.start
    for q in range(nb):
        delta[na + q, :k] = na + b.delta[q]
    acc = [na + q for q in range(nb) if b.accept[q]]
    return dfa_trim(Dfa(a.alphabet + (sep,), delta, a.start, acc))


def all_strings(alphabet: Sequence[str], max_len: int, min_len: int = 0):
    """Shortlex enumeration of strings with ``min_len <= length <= max_len``."""
    level = [""]
    for n in range(max_len + 1):
        if n >= min_len:
            yield from level
        level = [w + a for w in level for a in alphabet]


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def format_dfa(a: Dfa) -> str:
    lines = [
        "alphabet: " + " ".join(a.alphabet),
        f"states: {a.n_states}",
        f"start: {a.start}",
        "accept: " + " ".join(str(q) for q in sorted(a.accepting)),
    ]
    lines += [f"trans: {q} {s} {r}" for q, s, r in a.transitions()]
    return "\n".join(lines) + "\n"


def parse_dfa(text: str) -> Dfa:
    alphabet = states = start = None
    accept: list[int] = []
    trans: dict[tuple[int, str], int] = {}
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("%", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        if not sep:
            raise ParseError(f"expected 'key: value', got {raw!r}", ln, 1)
        key = key.strip()
        parts = rest.split()
        try:
            if key == "alphabet":
                alphabet = parts
            elif key == "states":
                states = int(parts[0])
            elif key == "start":
                start = int(parts[0])
            elif key == "accept":
                accept = [int(p) for p in parts]
            elif key == "trans":
                q, s, r = parts
                if (int(q), s) in trans:
                    raise ParseError(f"duplicate transition for ({q}, {s})", ln, 1)
                if states is not None and not (0 <= int(q) < states and 0 <= int(r) < states):
                    raise ParseError(f"state out of range in transition ({q}, {s}) -> {r}", ln, 1)
                if alphabet is not None and s not in alphabet:
                    raise ParseError(f"symbol {s!r} not in alphabet", ln, 1)
                trans[int(q), s] = int(r)
            else:
                raise ParseError(f"unknown key {key!r}", ln, 1)
        except (ValueError, IndexError):
            raise ParseError(f"malformed {key!r} line", ln, 1) from None
    if alphabet is None or states is None or start is None:
        raise ParseError("missing alphabet, states or start header")
    delta = np.zeros((states, len(alphabet)), dtype=np.int64)
    for q in range(states):
        for i, s in enumerate(alphabet):
            if (q, s) not in trans:
                raise ParseError(f"automaton is not total: no transition for ({q}, {s})")
            delta[q, i] = trans[q, s]
    for (q, s) in trans:
        if s not in alphabet or not 0 <= q < states:
            raise ParseError(f"transition ({q}, {s}) outside alphabet or state range")
    try:
        return Dfa(alphabet, delta, start, accept)
    except (ValueError, AlphabetError) as exc:
        raise ParseError(str(exc)) from None


def dfa_minimize(a: Dfa) -> Dfa:
    """Moore partition refinement on the trimmed automaton."""
    a = dfa_trim(a)
    n, k = a.delta.shape
    block = a.accept.astype(np.int64)
    while True:
        sig = {}
        new = np.empty(n, dtype=np.int64)
        for q in range(n):
            key = (int(block[q]),) + tuple(int(block[r]) for r in a.delta[q])
            new[q] = sig.setdefault(key, len(sig))
        if len(sig) == len(set(block.tolist())):
            break
        block = new
    # renumber blocks in BFS order from the start for a canonical result
    rep = {}
    for q in range(n):
        rep.setdefault(int(block[q]), q)
    rows = {b: [int(block[a.delta[q, c]]) for c in range(k)] for b, q in rep.items()}
    acc = [b for b, q in rep.items() if a.accept[q]]
    ids = {int(block[a.start]): 0}
    order = [int(block[a.start])]
    i = 0
    while i < len(order):
        for r in rows[order[i]]:
            if r not in ids:
                ids[r] = len(order)
                order.append(r)
        i += 1
    return Dfa(a.alphabet, [[ids[r] for r in rows[b]] for b in order], 0, [ids[b] for b in acc])
