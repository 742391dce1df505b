import itertools

import pytest
from hypothesis import given, settings, strategies as st

from jeptrees import string_jep as sj
from jeptrees.dfa import all_strings, forb_string, hash_pair_string, universal
from jeptrees.errors import AlphabetError, SizeLimitExceeded
from jeptrees.config import Caps
from jeptrees.oracle import TrialConfig, brute_subsequence, random_dfa


def independent_walks(m):
    """Walks recomputed from scratch: line graph, mutual reachability, paths."""
    trans = list(m.transitions())
    n = len(trans)
    adj = {i: {j for j in range(n) if trans[i][2] == trans[j][0]} for i in range(n)}
    reach = {}
    for i in range(n):
        seen, todo = {i}, [i]
        while todo:
            for j in adj[todo.pop()]:
                if j not in seen:
                    seen.add(j)
                    todo.append(j)
        reach[i] = seen
    scc = {i: frozenset(j for j in reach[i] if i in reach[j]) for i in range(n)}
    comps = set(scc.values())
    succ = {c: {scc[j] for i in c for j in adj[i]} - {c} for c in comps}
    initial = [c for c in comps if any(trans[i][0] == m.start for i in c)]
    paths, todo = [], [(c,) for c in initial]
    while todo:
        p = todo.pop()
        paths.append(p)
        todo.extend(p + (s,) for s in succ[p[-1]])
    return len(paths) + 1  # plus the empty walk


def test_line_graph_small_cases():
    assert sj.line_graph([(0, "a", 0)]).edges == ((0, 0),)
    lg = sj.line_graph([(0, "a", 1), (1, "b", 2)])
    assert lg.n == 2 and lg.edges == ((0, 1),)


def test_condensation_of_forb_ab(b_star_a_star):
    lg, d = sj.condensation(b_star_a_star)
    assert lg.n == 6 and d.n == 5
    name = {}
    for c in range(d.n):
        trans = {lg.vertices[v] for v in d.members[c]}
        name[c] = trans
    by_trans = {frozenset(t): c for c, t in name.items()}
    q0, q1 = b_star_a_star.start, b_star_a_star.run("a")
    dead = b_star_a_star.run("ab")
    c1 = by_trans[frozenset({(q0, "b", q0)})]
    c2 = by_trans[frozenset({(q0, "a", q1)})]
    c3 = by_trans[frozenset({(q1, "a", q1)})]
    c4 = by_trans[frozenset({(q1, "b", dead)})]
    c5 = by_trans[frozenset({(dead, "a", dead), (dead, "b", dead)})]
    assert set(d.edges()) == {(c1, c2), (c2, c3), (c2, c4), (c3, c4), (c4, c5)}
    assert [c for c in range(5) if d.loopy[c]] == sorted([c1, c3, c5])
    assert sorted(c for c in range(5) if d.initial[c]) == sorted([c1, c2])
    assert sorted(c for c in range(5) if d.accepting[c]) == sorted([c1, c2, c3])
    p = sj.build_pipeline(b_star_a_star)
    assert p.walk_of_string("") == ()
    assert p.walk_of_string("ba") == (c1, c2)
    assert p.walk_of_string("bb") == (c1,)
    assert (c1,) in {p.walks[i] for i in p.n_run("b")}


def test_walk_count_forb_ab(b_star_a_star):
    walks = sj.enumerate_walks(sj.condensation(b_star_a_star)[1])
    assert len(walks) == 14 == independent_walks(b_star_a_star)
    assert walks[0] == sj.EMPTY_WALK
    assert sj.report_bounds(b_star_a_star)["walks"] == 14
    assert sj.report_bounds(b_star_a_star)["minimal_pair_length_bound"] == 2**14


def test_walk_count_matches_independent_count():
    for trial in range(30):
        m = random_dfa(TrialConfig(seed=21), trial, 4)
        assert len(sj.build_pipeline(m).walks) == independent_walks(sj.dfa_trim(m))


def test_walk_cap():
    with pytest.raises(SizeLimitExceeded):
        sj.build_pipeline(forb_string(["ab"], "ab"), Caps(max_walks=5))


def test_unreachable_edge_adds_no_walks():
    d = sj.CondensationDag(
        members=((0,), (1,), (2,)), comp=(0, 1, 2), succ=((), (2,), ()),
        loopy=(False,) * 3, initial=(True, False, False), accepting=(True,) * 3,
    )
    assert sj.enumerate_walks(d) == [(), (0,)]


def test_n_step_monotone():
    p = sj.build_pipeline(random_dfa(TrialConfig(seed=2), 0, 4))
    ids = range(len(p.walks))
    for small, extra in itertools.product([frozenset(), frozenset(ids[:3])], [frozenset(ids[3:6])]):
        for a in p.dfa.alphabet:
            assert p.n_step(small, a) <= p.n_step(small | extra, a)
    with pytest.raises(AlphabetError):
        p.n_step(frozenset(), "z")


def test_wset_definitional(b_star_a_star):
    p = sj.build_pipeline(b_star_a_star)
    members = [z for z in all_strings("ab", 7) if b_star_a_star.accepts(z)]
    for x in all_strings("ab", 3):
        want = {p.walk_of_string(z) for z in members if brute_subsequence(x, z)}
        assert p.wset_walks(x) == want, x
    assert p.wset_walks("ab") == set()


@pytest.mark.parametrize("trial", range(10))
def test_wset_antitone_and_definitional_random(trial):
    m = random_dfa(TrialConfig(seed=31), trial, 3)
    p = sj.build_pipeline(m)
    members = [z for z in all_strings(m.alphabet, 8) if m.accepts(z)]
    for x in all_strings(m.alphabet, 3):
        got = p.wset_walks(x)
        # every sampled witness contributes its walk; nothing outside the language appears
        assert {p.walk_of_string(z) for z in members if brute_subsequence(x, z)} <= got
        for y in all_strings(m.alphabet, 3):
            if brute_subsequence(x, y):
                assert p.wset(y) <= p.wset(x)


def test_joint_string_examples(b_star_a_star, a_star_or_b_star):
    assert sj.joint_string(b_star_a_star, "b", "a")
    assert sj.joint_string_product(b_star_a_star, "b", "a") == "ba"
    assert not sj.joint_string(a_star_or_b_star, "a", "b")
    assert sj.joint_string(a_star_or_b_star, "aa", "aa")


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.text("ab", max_size=4), st.text("ab", max_size=4))
def test_two_routes_agree(seed, x, y):
    m = random_dfa(TrialConfig(seed=seed), 0, 4)
    assert sj.joint_string_walks(m, x, y) == (sj.joint_string_product(m, x, y) is not None)


def test_decide_examples(b_star_a_star, a_star_or_b_star):
    assert sj.decide_jep_string(b_star_a_star).jep
    assert sj.decide_jep_string(universal("ab")).jep
    v = sj.decide_jep_string(a_star_or_b_star)
    assert (v.jep, v.x, v.y, v.certificate) == (False, "a", "b", "product-empty")


def test_minimal_semibad(a_star_or_b_star, b_star_a_star):
    got = sj.minimal_semibad_string(a_star_or_b_star, bound=3)
    nonempty = {tuple(sorted(p)) for p in got if "" not in p}
    assert nonempty == {("a", "b")}
    # an empty member pairs with a non-factor of the language
    assert ("", "ab") in got
    assert sj.minimal_semibad_string(b_star_a_star, bound=4) == {("", "ab"), ("ab", "")}
    with pytest.raises(ValueError):
        sj.minimal_semibad_string(a_star_or_b_star, bound=0)


def test_badpair_automaton(a_star_or_b_star, b_star_a_star):
    b = sj.badpair_automaton_string(a_star_or_b_star, bound=3, mode="bad")
    assert b.accepts("a#b") and not b.accepts("a#a")
    assert not b.accepts("ab") and not b.accepts("a#b#")
    bb = sj.badpair_automaton_string(b_star_a_star, bound=4, mode="bad")
    members = [w for w in all_strings("ab", 4) if b_star_a_star.accepts(w)]
    assert not any(bb.accepts(f"{x}#{y}") for x in members for y in members)


def test_badpair_automaton_semibad_agrees_with_definition():
    for trial in range(10):
        m = random_dfa(TrialConfig(seed=41), trial, 3)
        b = sj.badpair_automaton_string(m, bound=4)
        for x, y in itertools.product(all_strings(m.alphabet, 3), repeat=2):
            assert b.accepts(f"{x}#{y}") == (sj.joint_string_product(m, x, y) is None)


def test_alphabet_error(b_star_a_star):
    with pytest.raises(AlphabetError):
        sj.wset(b_star_a_star, "c")
