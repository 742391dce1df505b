"""Acceptance run: nine criteria, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""

import itertools
import sys
import time
from dataclasses import replace

import numpy as np
import pytest

from jeptrees import cographs as cg
from jeptrees import oracle
from jeptrees import string_jep as sj
from jeptrees import tree_jep as tj
from jeptrees.dfa import all_strings, forb_string
from jeptrees.config import DEFAULT_CAPS
from jeptrees.errors import NotCograph, SizeLimitExceeded
from jeptrees.oracle import TrialConfig
from jeptrees.tree_automata import forb_tree, ta_union
from jeptrees.trees import LabelSet, enumerate_general, leaf

BIN = LabelSet.of(["0", "1"])


def _announce(number, title, ok, detail, started):
    line = f"ACCEPTANCE {number} {'PASS' if ok else 'FAIL'} {title}: {detail} ({time.time() - started:.1f}s)"
    capture = _announce.capture
    if capture is not None:
        with capture.disabled():
            print("\n" + line)
    else:
        print(line)
    return ok


_announce.capture = None


@pytest.fixture(autouse=True)
def _share_capture(capsys):
    _announce.capture = capsys
    yield
    _announce.capture = None


def _suite(suite, config, need=None):
    """Run an oracle suite. ``need`` is the number of trials that must finish
    within the caps; by default every trial must."""
    r = oracle.cross_validate(suite, config)
    need = r.trials if need is None else need
    detail = f"{r.trials} trials, {r.checks} checks, {len(r.discrepancies)} discrepancies, {r.skipped} skipped over cap"
    for d in r.discrepancies[:3]:
        detail += f" | {d.line()}"
    return r.clean and r.trials - r.skipped >= need, detail


# Some random tree automata have astronomically many realizable walks; they
# exceed this cap quickly and are counted as skipped, never as agreement.
TREE_CAPS = replace(DEFAULT_CAPS, max_walks=50_000)


def test_1_string_claim1():
    t0 = time.time()
    ok, detail = _suite("string-claim1", TrialConfig(seed=0, trials=200, states=4, alphabet_size=2, max_len=4))
    assert _announce(1, "string walk sets vs product emptiness", ok, detail, t0)


def test_2_tree_claim1():
    t0 = time.time()
    cfg = TrialConfig(seed=0, trials=60, states=3, alphabet_size=2, pairs=200, max_nodes=7, caps=TREE_CAPS)
    ok, detail = _suite("tree-claim1", cfg, need=50)
    assert _announce(2, "tree walk sets vs product emptiness", ok, detail, t0)


FORBIDDEN_GRAPH_SETS = [
    [cg.path_graph(4)],
    [cg.path_graph(4), cg.complete_graph(2)],
    [cg.path_graph(4), cg.edgeless_graph(2)],
    [cg.path_graph(4), cg.path_graph(3)],
    [cg.path_graph(4), cg.disjoint_union(cg.complete_graph(2), cg.Cograph(1))],
    [cg.path_graph(4), cg.path_graph(3), cg.disjoint_union(cg.complete_graph(2), cg.Cograph(1))],
    [cg.path_graph(4), cg.path_graph(3), cg.edgeless_graph(3)],
    [cg.path_graph(4), cg.complete_graph(3), cg.edgeless_graph(3)],
]


def test_3_verdict_certification():
    t0 = time.time()
    failures, counts = [], {"string": 0, "tree": 0, "tree-skipped": 0, "cograph": 0, "bad": 0}
    cfg = TrialConfig(seed=0, states=4)
    for trial in range(100):
        m = oracle.random_dfa(cfg, trial)
        v = sj.decide_jep_string(m)
        counts["string"] += 1
        if v.jep:
            ok = not oracle.scan_bad_pairs(m, 6)
        else:
            counts["bad"] += 1
            ok = m.accepts(v.x) and m.accepts(v.y) and sj.joint_string_product(m, v.x, v.y) is None
        if not ok:
            failures.append(f"string trial {trial}")
    tcfg = TrialConfig(seed=0, states=3)
    trial = 0
    while counts["tree"] < 40:
        a = oracle.random_ta(tcfg, trial)
        trial += 1
        try:
            v = tj.decide_jep_tree(a, caps=TREE_CAPS)
        except SizeLimitExceeded:
            counts["tree-skipped"] += 1
            continue
        counts["tree"] += 1
        if v.jep:
            ok = not oracle.scan_bad_pairs(a, 5)
        else:
            counts["bad"] += 1
            ok = a.accepts(v.x) and a.accepts(v.y) and tj.joint_witness(a, v.x, v.y) is None
        if not ok:
            failures.append(f"tree trial {trial - 1}")
    for i, forbidden in enumerate(FORBIDDEN_GRAPH_SETS):
        v = cg.decide_jep_cographs(forbidden, closure_shortcut=False)
        counts["cograph"] += 1
        bad = oracle.scan_bad_cograph_pairs(forbidden, 5)
        if v.jep:
            ok = not bad
        else:
            counts["bad"] += 1
            allowed = [h for h in oracle.cographs_up_to(7) if not any(oracle.brute_induced(f, h) for f in forbidden)]
            ok = bool(bad) and not any(
                oracle.brute_induced(v.g1, h) and oracle.brute_induced(v.g2, h) for h in allowed
            ) and cg.decide_jep_cographs(forbidden).jep is False
        if not ok:
            failures.append(f"cograph set {i}")
    detail = f"{counts} verdicts, {len(failures)} failures {failures[:5]}"
    assert _announce(3, "verdict certification", not failures, detail, t0)


def test_4_known_instances():
    t0 = time.time()
    got = {}
    got["Forb(ab)"] = sj.decide_jep_string(forb_string(["ab"], "ab")).jep
    v = sj.decide_jep_string(forb_string(["ab", "ba"], "ab"))
    got["Forb(ab,ba)"] = (v.jep, v.x, v.y)
    zero_or_one = ta_union(forb_tree([leaf(1)], BIN), forb_tree([leaf(0)], BIN))
    v = tj.decide_jep_tree(zero_or_one)
    got["all-0 or all-1"] = (v.jep, v.x, v.y)
    got["{P4}"] = cg.decide_jep_cographs([cg.path_graph(4)]).jep
    v = cg.decide_jep_cographs([cg.path_graph(4), cg.path_graph(3),
                                cg.disjoint_union(cg.complete_graph(2), cg.Cograph(1))])
    got["{P4,P3,K2+K1}"] = (v.jep, frozenset([v.g1, v.g2]))
    want = {
        "Forb(ab)": True,
        "Forb(ab,ba)": (False, "a", "b"),
        "all-0 or all-1": (False, leaf(0), leaf(1)),
        "{P4}": True,
        # a bad pair is unordered
        "{P4,P3,K2+K1}": (False, frozenset([cg.complete_graph(2), cg.edgeless_graph(2)])),
    }
    wrong = [k for k in want if got[k] != want[k]]
    detail = f"{len(want) - len(wrong)}/{len(want)} match" + (f"; wrong: {wrong}" if wrong else "")
    assert _announce(4, "known instances", not wrong, detail, t0)


def test_5_badpair_automaton():
    t0 = time.time()
    cfg = TrialConfig(seed=0, states=3)
    checks, failures = 0, []
    dfas = [oracle.random_dfa(cfg, trial) for trial in range(60)]
    dfas.append(forb_string(["ab", "ba"], "ab"))
    for idx, m in enumerate(dfas):
        b = sj.badpair_automaton_string(m)
        words = list(all_strings(m.alphabet, 4))
        for x, y in itertools.product(words, repeat=2):
            checks += 1
            if b.accepts(f"{x}#{y}") != (sj.joint_string_product(m, x, y) is None):
                failures.append((idx, x, y))
                break
    detail = f"{len(dfas)} automata, {checks} pairs, {len(failures)} disagreements {failures[:3]}"
    assert _announce(5, "bad-pair automaton membership", not failures, detail, t0)


def test_6_walk_routes():
    t0 = time.time()
    ok, detail = _suite("walkdef", TrialConfig(seed=0, trials=20, states=3, samples=1000, max_nodes=9))
    assert _announce(6, "definitional vs compositional tree walks", ok, detail, t0)


def test_7_cograph_suite():
    t0 = time.time()
    ok, detail = _suite("cotree", TrialConfig(seed=0, trials=1000))
    try:
        cg.cotree_of(cg.path_graph(4))
        raised = False
    except NotCograph:
        raised = True
    detail += f"; P4 raises NotCograph: {raised}"
    assert _announce(7, "cotree round trip and induced order", ok and raised, detail, t0)


def test_8_encoded_patterns():
    t0 = time.time()
    patterns = enumerate_general(LabelSet(2), 4)
    ok, detail = _suite("encoded-sup", TrialConfig(seed=0, trials=len(patterns), alphabet_size=2, max_nodes=9))
    assert _announce(8, f"encoded pattern automata ({len(patterns)} patterns)", ok, detail, t0)


def test_9_walk_count():
    t0 = time.time()
    m = forb_string(["ab"], "ab")
    count = sj.report_bounds(m)["walks"]
    # independent recount: line graph, mutual reachability, paths from initial SCCs
    trans = list(m.transitions())
    n = len(trans)
    reach = np.eye(n, dtype=bool)
    for i, j in itertools.product(range(n), repeat=2):
        if trans[i][2] == trans[j][0]:
            reach[i, j] = True
    for k in range(n):
        reach |= reach[:, [k]] & reach[[k], :]
    scc = {i: frozenset(np.flatnonzero(reach[i] & reach[:, i])) for i in range(n)}
    comps = set(scc.values())
    succ = {c: {scc[j] for i in c for j in range(n) if trans[i][2] == trans[j][0]} - {c} for c in comps}
    todo = [(c,) for c in comps if any(trans[i][0] == m.start for i in c)]
    paths = 0
    while todo:
        p = todo.pop()
        paths += 1
        todo.extend(p + (s,) for s in succ[p[-1]])
    ok = count == 14 == paths + 1
    detail = f"pipeline {count}, independent recount {paths + 1}, expected 14"
    assert _announce(9, "walk count for b*a*", ok, detail, t0)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
