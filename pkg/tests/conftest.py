import pytest

from jeptrees.dfa import forb_string
from jeptrees.tree_automata import forb_tree, ta_union
from jeptrees.trees import LabelSet, leaf

BIN = LabelSet.of(["0", "1"])


@pytest.fixture
def labels():
    return BIN


@pytest.fixture
def all_zero():
    """Trees whose every node is labelled 0."""
    return forb_tree([leaf(1)], BIN)


@pytest.fixture
def zero_or_one():
    """Trees labelled entirely 0 or entirely 1."""
    return ta_union(forb_tree([leaf(1)], BIN), forb_tree([leaf(0)], BIN))


@pytest.fixture
def b_star_a_star():
    return forb_string(["ab"], "ab")


@pytest.fixture
def a_star_or_b_star():
    return forb_string(["ab", "ba"], "ab")
