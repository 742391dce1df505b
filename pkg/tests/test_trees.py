import itertools

import pytest
from hypothesis import given, settings, strategies as st

from jeptrees.errors import ArityError, ParseError
from jeptrees.oracle import brute_contains
from jeptrees.trees import (
    LabelSet, binary_contains, count_ordered_binary, decode_general, encode_general,
    enumerate_binary, enumerate_general, general_contains, leaf, node, parse_tree, to_sexpr,
)

L3 = LabelSet.of(["a", "b", "c"])
A, B, C = 0, 1, 2


def trees_st(k=2, max_leaves=4, arity=(2, 2)):
    return st.recursive(
        st.integers(0, k - 1).map(leaf),
        lambda kids: st.tuples(st.integers(0, k - 1), st.lists(kids, min_size=arity[0], max_size=arity[1])).map(
            lambda p: node(p[0], *p[1])
        ),
        max_leaves=max_leaves,
    )


def test_contains_self_and_single_node():
    t = node(B, leaf(A), leaf(B))
    assert binary_contains(t, t)
    assert binary_contains(t, leaf(A))


def test_distinct_children_required():
    assert not binary_contains(node(A, leaf(B), leaf(C)), node(A, leaf(B), leaf(B)))


def test_general_star_deletion():
    host = node(A, leaf(A), leaf(B), leaf(C))
    assert general_contains(host, node(A, leaf(A), leaf(B)))
    assert general_contains(host, host)


def test_general_path_through_node():
    # root a over b over two leaves: the two pattern leaves share the b branch
    host = node(A, node(B, leaf(C), leaf(C)), leaf(A))
    assert not general_contains(host, node(A, leaf(C), leaf(C)))
    assert general_contains(host, node(B, leaf(C), leaf(C)))
    assert general_contains(host, node(A, leaf(C), leaf(A)))


@settings(max_examples=150, deadline=None)
@given(trees_st(max_leaves=4), trees_st(max_leaves=3))
def test_binary_contains_matches_brute_force(host, pattern):
    assert binary_contains(host, pattern) == brute_contains(host, pattern)


@settings(max_examples=150, deadline=None)
@given(trees_st(max_leaves=5, arity=(2, 3)), trees_st(max_leaves=3, arity=(2, 3)))
def test_general_contains_matches_brute_force(host, pattern):
    assert general_contains(host, pattern) == brute_contains(host, pattern)


def test_encode_examples():
    up = 3
    assert encode_general(leaf(A), up) == leaf(A)
    assert encode_general(node(A, leaf(B), leaf(C)), up) == node(A, leaf(B), leaf(C))
    three = node(A, leaf(A), leaf(B), leaf(C))
    enc = encode_general(three, up)
    assert enc == node(A, leaf(A), node(up, leaf(B), leaf(C)))
    assert decode_general(enc, up) == three


def test_encoding_round_trip_exhaustive():
    for t in enumerate_general(2, 6):
        assert decode_general(encode_general(t, 2), 2) == t


def test_enumeration_counts():
    assert len(enumerate_binary(1, 1)) == 1
    assert len(enumerate_binary(2, 1)) == 2
    # children are unordered, so (r a b) and (r b a) coincide
    assert len(enumerate_binary(2, 3)) == 8
    assert count_ordered_binary(2, 3) == 10


def test_enumeration_is_duplicate_free():
    ts = enumerate_general(2, 5)
    assert len(ts) == len(set(ts))


def test_sexpr_round_trip():
    t = node(A, leaf(B), node(C, leaf(A), leaf(A)))
    text = to_sexpr(t, L3)
    assert parse_tree(text, L3, "binary") == t


@pytest.mark.parametrize(
    "text,err",
    [("(a (b)", ParseError), ("(z)", ParseError), ("(a (b) (c) (a))", ArityError), ("(a (b))", ArityError)],
)
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_tree(text, L3, "binary")


def test_label_set_rejects_bad_tokens():
    with pytest.raises(ValueError):
        LabelSet.of(["a b"])
    with pytest.raises(ValueError):
        LabelSet.of(["a", "a"])


def test_child_order_is_irrelevant():
    for x, y in itertools.permutations([leaf(A), node(B, leaf(A), leaf(C))], 2):
        assert node(C, x, y) == node(C, y, x)
