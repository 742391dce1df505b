import pytest

from jeptrees.errors import LabelMismatch, ParseError
from jeptrees.oracle import TrialConfig, random_ta
from jeptrees.tree_automata import (
    all_trees_of, forb_tree, format_ta, hash_pair_tree, intersection_witness, parse_ta, sup_tree,
    ta_complement, ta_empty_witness, ta_intersection, ta_is_empty, ta_minimize, ta_run, ta_trim,
    ta_union, universal_ta,
)
from jeptrees.trees import LabelSet, binary_contains, enumerate_binary, leaf, node

BIN = LabelSet.of(["0", "1"])
TREES5 = enumerate_binary(BIN, 5)
TREES7 = enumerate_binary(BIN, 7)


def test_run_unfolds():
    m = random_ta(TrialConfig(seed=2), 0, 3)
    assert ta_run(m, leaf(1)) == m.m0[1]
    t = node(0, leaf(1), leaf(0))
    assert ta_run(m, t) == m.m2[0, m.m0[1], m.m0[0]]


def test_complement_twice():
    m = random_ta(TrialConfig(seed=2), 1, 3)
    cc = ta_complement(ta_complement(m))
    assert all(cc.accepts(t) == m.accepts(t) for t in TREES5)


def test_boolean_operations():
    a = random_ta(TrialConfig(seed=4), 0, 3)
    b = random_ta(TrialConfig(seed=4), 1, 3)
    i, u = ta_intersection(a, b), ta_union(a, b)
    for t in TREES5:
        assert i.accepts(t) == (a.accepts(t) and b.accepts(t))
        assert u.accepts(t) == (a.accepts(t) or b.accepts(t))


def test_empty_intersection(all_zero):
    has_one = sup_tree(leaf(1), BIN)
    assert ta_is_empty(ta_intersection(all_zero, has_one))
    assert intersection_witness(all_zero, has_one) is None
    assert ta_empty_witness(universal_ta(BIN)).is_leaf


def test_sup_single_leaf():
    sup = sup_tree(leaf(1), BIN)
    assert all(sup.accepts(t) == (1 in t.labels_used()) for t in TREES5)


def test_sup_tree_matches_containment_exhaustively():
    for pattern in enumerate_binary(BIN, 5):
        sup = sup_tree(pattern, BIN)
        assert sup.accepts(pattern)
        for t in TREES7:
            assert sup.accepts(t) == binary_contains(t, pattern), (t, pattern)


def test_forb_tree(all_zero):
    assert all(all_zero.accepts(t) == (t.labels_used() == {0}) for t in TREES5)
    assert all(forb_tree([], BIN).accepts(t) for t in TREES5)
    assert ta_is_empty(forb_tree([leaf(0), leaf(1)], BIN))


def test_hash_pair_tree():
    only_leaf0 = forb_tree([leaf(1), node(0, leaf(0), leaf(0))], BIN)
    hp = hash_pair_tree(only_leaf0, only_leaf0)
    sep = hp.labels.index("#")
    assert hp.accepts(node(sep, leaf(0), leaf(0)))
    assert not hp.accepts(node(0, leaf(0), leaf(0)))
    assert not hp.accepts(node(sep, node(sep, leaf(0), leaf(0)), leaf(0)))


def test_hash_pair_tree_exhaustive():
    a = random_ta(TrialConfig(seed=8), 0, 2)
    b = random_ta(TrialConfig(seed=8), 1, 2)
    hp = hash_pair_tree(a, b)
    sep = hp.labels.index("#")
    small = enumerate_binary(BIN, 3)
    for x in small:
        for y in small:
            want_xy = a.accepts(x) and b.accepts(y)
            want_yx = a.accepts(y) and b.accepts(x)
            assert hp.accepts(node(sep, x, y)) == (want_xy or want_yx)


def test_trim_and_minimize_preserve_language():
    for trial in range(15):
        m = random_ta(TrialConfig(seed=6), trial, 4)
        for f in (ta_trim, ta_minimize):
            g = f(m)
            assert g.n_states <= m.n_states
            assert all(g.accepts(t) == m.accepts(t) for t in TREES5)


def test_minimize_merges_equivalent_states():
    zero_or_one = ta_union(forb_tree([leaf(1)], BIN), forb_tree([leaf(0)], BIN))
    assert ta_minimize(zero_or_one).n_states == 3


def test_all_trees_of(all_zero):
    got = all_trees_of(all_zero, 3)
    assert set(got) == {leaf(0), node(0, leaf(0), leaf(0))}


def test_text_round_trip():
    m = random_ta(TrialConfig(seed=1), 3, 3)
    m2 = parse_ta(format_ta(m))
    assert all(m2.accepts(t) == m.accepts(t) for t in TREES5)


@pytest.mark.parametrize(
    "text",
    [
        "labels: 0\nstates: 1\nm0: 0 -> 0\n",  # missing m2
        "labels: 0\nstates: 1\nm0: 0 -> 3\nm2: 0 (0,0) -> 0\n",  # out of range
        "labels: 0\nstates: x\n",
        "labels: 0\nstates: 1\nm0: 9 -> 0\n",  # unknown label
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_ta(text)


def test_label_mismatch():
    other = universal_ta(LabelSet.of(["0", "2"]))
    with pytest.raises(LabelMismatch):
        ta_intersection(universal_ta(BIN), other)
