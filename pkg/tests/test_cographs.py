import itertools
import warnings

import numpy as np
import pytest

from jeptrees import cographs as cg
from jeptrees.cographs import JOIN, K1, UNION, UP
from jeptrees.errors import InvalidCotree, MissingP4, NotCograph, ParseError
from jeptrees.oracle import brute_induced, cographs_up_to, random_cograph, scan_bad_cograph_pairs
from jeptrees.trees import LabelSet, Tree, enumerate_binary, general_contains, leaf, node

P3, P4 = cg.path_graph(3), cg.path_graph(4)
K2, TWO_K1 = cg.complete_graph(2), cg.edgeless_graph(2)


def k():
    return leaf(K1)


def test_cotree_of_examples():
    assert cg.cotree_of(cg.Cograph(1)) == cg.Cotree(K1, vertex=0)
    t = cg.cotree_of(P3)
    assert cg.to_sexpr_cotree(t) == "(J (K1 1) (U (K1 0) (K1 2)))"
    with pytest.raises(NotCograph):
        cg.cotree_of(P4)


def test_graph_of_examples():
    assert cg.graph_of(cg.Cotree(K1, vertex=0)) == cg.Cograph(1)
    t = cg.Cotree(JOIN, [cg.Cotree(K1, vertex=0), cg.Cotree(K1, vertex=1)])
    assert cg.graph_of(t) == K2


def test_round_trip_random():
    rng = np.random.default_rng(0)
    for _ in range(300):
        g = random_cograph(rng, int(rng.integers(1, 11)))
        assert cg.graph_of(cg.cotree_of(g)) == g


def test_check_cotree():
    bad = cg.Cotree(UNION, [cg.Cotree(UNION, [cg.Cotree(K1, vertex=0), cg.Cotree(K1, vertex=1)]), cg.Cotree(K1, vertex=2)])
    with pytest.raises(InvalidCotree):
        cg.check_cotree(bad)
    with pytest.raises(InvalidCotree):
        cg.check_cotree(cg.Cotree(JOIN, [cg.Cotree(K1, vertex=0)]))


def test_induced_examples():
    assert cg.induced_via_cotrees(P3, P3)
    assert cg.induced_via_cotrees(K2, P3)
    assert not cg.induced_via_cotrees(TWO_K1, K2)


def test_induced_differs_from_branch_injection():
    """Pattern children may share a host branch when a deeper same-label node splits them."""
    pattern = node(UNION, k(), k(), node(JOIN, k(), node(UNION, k(), k())))
    host = node(
        UNION,
        node(JOIN, k(), node(UNION, k(), k())),
        node(JOIN, k(), node(UNION, k(), k()), node(UNION, k(), node(JOIN, k(), k()))),
    )
    assert brute_induced(cg.graph_of_shape(pattern), cg.graph_of_shape(host))
    assert cg.cotree_embeds(host, pattern)
    assert not general_contains(host, pattern)


def test_induced_matches_brute_force_random():
    rng = np.random.default_rng(1)
    for _ in range(300):
        g1 = random_cograph(rng, int(rng.integers(1, 8)))
        g2 = random_cograph(rng, int(rng.integers(1, 10)))
        assert cg.induced_via_cotrees(g1, g2) == brute_induced(g1, g2)


def test_induced_exhaustive_small():
    graphs = cographs_up_to(5)
    for g1 in graphs:
        for g2 in graphs:
            if g1.n <= g2.n:
                assert cg.induced_via_cotrees(g1, g2) == brute_induced(g1, g2)


def test_cotree_language():
    lang = cg.cotree_language()
    assert lang.accepts(cg.encode_cotree(cg.cotree_of(P3)))
    assert not lang.accepts(node(K1, k(), k()))
    assert not lang.accepts(node(UNION, node(UNION, k(), k()), k()))
    # the violation hides behind a chain node: its effective parent is still U
    assert not lang.accepts(node(UNION, k(), node(UP, node(UNION, k(), k()), k())))
    assert lang.accepts(node(UNION, k(), node(UP, node(JOIN, k(), k()), k())))


def test_cotree_language_exhaustive():
    lang = cg.cotree_language()
    for t in enumerate_binary(cg.ENCODED_COTREE_LABELS, 7):
        try:
            cg.check_cotree(cg.decode_cotree(t))
            valid = True
        except Exception:
            valid = False
        assert lang.accepts(t) == valid, t


def test_sup_general_encoded_small():
    labels = LabelSet.of(["0", "1", "^"])
    sup = cg.sup_general_encoded(leaf(1), labels)
    assert sup.accepts(node(0, leaf(0), node(2, leaf(1), leaf(0))))
    assert not sup.accepts(node(0, leaf(0), leaf(0)))
    t = node(0, leaf(1), leaf(1), leaf(0))
    from jeptrees.trees import encode_general
    assert cg.sup_general_encoded(t, labels).accepts(encode_general(t, 2))


def test_sup_induced_encoded_matches_embedding():
    shapes = [cg.cotree_of(g).shape() for g in cographs_up_to(3)]
    hosts = [cg.cotree_of(g).shape() for g in cographs_up_to(5)]
    for pattern in shapes:
        sup = cg.sup_induced_encoded(pattern)
        for host in hosts:
            assert sup.accepts(cg.encode_cotree(host)) == cg.cotree_embeds(host, pattern)


@pytest.mark.parametrize("shortcut", [True, False])
def test_decide_examples(shortcut):
    assert cg.decide_jep_cographs([P4], closure_shortcut=shortcut).jep
    assert cg.decide_jep_cographs([P4, K2], closure_shortcut=shortcut).jep
    v = cg.decide_jep_cographs([P4, P3, cg.disjoint_union(K2, cg.Cograph(1))], closure_shortcut=shortcut)
    assert not v.jep and v.certificate == "product-empty"
    assert {v.g1, v.g2} == {K2, TWO_K1}
    assert cg.cotree_of(v.g1) == v.cotree1


def test_closure_shortcut():
    v = cg.decide_jep_cographs([P4, cg.complete_graph(3)])
    assert v.jep and v.stats == {"closed_under": "disjoint-union"}
    v = cg.decide_jep_cographs([P4, cg.edgeless_graph(3)])
    assert v.jep and v.stats == {"closed_under": "join"}


TRACTABLE = [
    [P4, TWO_K1],
    [P4, P3],
    [P4, cg.disjoint_union(K2, cg.Cograph(1))],
    [P4, P3, cg.edgeless_graph(3)],
    [P4, cg.complete_graph(3), cg.edgeless_graph(3)],
]


@pytest.mark.parametrize("forbidden", TRACTABLE)
def test_decide_verdicts_agree_with_scan(forbidden):
    v = cg.decide_jep_cographs(forbidden, closure_shortcut=False)
    bad = scan_bad_cograph_pairs(forbidden, 5)
    assert v.jep == (not bad)
    if not v.jep:
        assert not any(brute_induced(v.g1, h) and brute_induced(v.g2, h) for h in members(forbidden, 6))


def members(forbidden, max_vertices):
    return [h for h in cographs_up_to(max_vertices) if not any(brute_induced(f, h) for f in forbidden)]


def test_missing_p4_and_non_cographs():
    with pytest.raises(MissingP4):
        cg.decide_jep_cographs([K2])
    c5 = cg.Cograph(5, [(i, (i + 1) % 5) for i in range(5)])
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert cg.decide_jep_cographs([P4, c5]).jep
    assert caught


def test_decide_general():
    labels = LabelSet.of(["0", "1"])
    assert cg.decide_jep_general([], labels).jep
    assert cg.decide_jep_general([leaf(1)], labels).jep
    three = LabelSet.of(["l", "1", "2"])
    forbid = [node(lab, leaf(1), leaf(2)) for lab in range(3)]
    forbid += [node(1, leaf(2), leaf(x)) for x in range(3)] + [node(2, leaf(1), leaf(x)) for x in range(3)]
    v = cg.decide_jep_general(forbid, three)
    assert not v.jep and {v.x, v.y} == {leaf(1), leaf(2)}


def test_graph_text_format():
    g = cg.Cograph(3, [(0, 2)])
    assert cg.parse_graph(cg.format_graph(g)) == g
    with pytest.raises(ParseError):
        cg.parse_graph("n: 2\nedge: 0 5\n")
    with pytest.raises(ParseError):
        cg.parse_graph("edge: 0 1\n")
