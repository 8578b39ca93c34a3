import json
import operator

import pytest

from semigraph.algebra import (BUILTIN_NAMES, builtin_algebra, check_conditions,
                               custom_algebra, integers, integers_mod, table_algebra)
from semigraph.errors import InvalidWitnessError
from semigraph.graph import MISSING, SPURIOUS, adjacency, validate_adjacency
from semigraph.witness import (Counterexample, classify_tables,
                               counterexample_for, enumerate_table_algebras,
                               lemma1_instance, lemma2_instance, lemma3_instance,
                               test_theorem)

# 2 ⊗ 0 = 2: zero does not annihilate from the left; ⊕ is max on 0 < 1 < 2
LEFT_LEAK = table_algebra((0, 1, 2), [[0, 1, 2], [1, 1, 2], [2, 2, 2]],
                          [[0, 0, 0], [0, 1, 2], [2, 2, 2]], name="left-leak")


def _violation_kinds(g, pair):
    return validate_adjacency(adjacency(pair, "dense"), g).kinds()


def test_lemma1_integers():
    g, pair = lemma1_instance(1, -1, integers())
    assert len(g.edges) == 2 and len(set(g.out_vertices) | set(g.in_vertices)) == 2
    a = adjacency(pair)
    assert a.get("a", "b") == 0
    assert _violation_kinds(g, pair) == {MISSING}


def test_lemma1_rejects_nonnegative_reals():
    with pytest.raises(InvalidWitnessError):
        lemma1_instance(2, 3, builtin_algebra("plus.times"))


def test_lemma1_mod2():
    alg = integers_mod(2)
    # exhaustive scan of the 2-element table: only 1 ⊕ 1 = 0 among nonzeros
    assert [(v, w) for v in (1,) for w in (1,) if alg.plus(v, w) == 0] == [(1, 1)]
    g, pair = lemma1_instance(1, 1, alg)
    assert _violation_kinds(g, pair) == {MISSING}


def test_lemma2_disjoint_sets():
    alg = builtin_algebra("union.intersect", {1, 2})
    g, pair = lemma2_instance(frozenset({1}), frozenset({2}), alg)
    assert len(g.edges) == 1 and list(g.out_vertices) == ["a"]
    assert adjacency(pair).get("a", "a") == frozenset()
    assert _violation_kinds(g, pair) == {MISSING}


def test_lemma2_rejects_max_min():
    with pytest.raises(InvalidWitnessError):
        lemma2_instance(3, -2, builtin_algebra("max.min"))


def test_lemma2_three_element_scan():
    alg = table_algebra((0, 1, 2), [[0, 1, 2], [1, 1, 2], [2, 2, 2]],
                        [[0, 0, 0], [0, 1, 2], [0, 2, 0]])
    found = [(v, w) for v in (1, 2) for w in (1, 2) if alg.times(v, w) == 0]
    assert found == [(2, 2)]
    g, pair = lemma2_instance(*found[0], alg)
    assert _violation_kinds(g, pair) == {MISSING}


def test_lemma3_left_leak():
    g, pair = lemma3_instance(2, LEFT_LEAK)
    assert len(g.edges) == 2
    a = adjacency(pair, "dense")
    assert a.get("a", "b") == 2  # (2 ⊗ 0) ⊕ (0 ⊗ 2) = 2 ⊕ 0
    assert _violation_kinds(g, pair) == {SPURIOUS}


def test_lemma3_rejects_annihilating_algebras():
    with pytest.raises(InvalidWitnessError):
        lemma3_instance(4, builtin_algebra("plus.times"))
    with pytest.raises(InvalidWitnessError):
        lemma3_instance(5, builtin_algebra("max.plus"))


def test_lemma3_zero_times_zero():
    # only 0 ⊗ 0 = 2 breaks annihilation; the witness is 0 itself
    alg = table_algebra((0, 1, 2), [[0, 1, 2], [1, 1, 2], [2, 2, 2]],
                        [[2, 0, 0], [0, 1, 2], [0, 2, 2]], name="zz")
    report = check_conditions(alg)
    assert report.annihilator.witness == (0,)
    g, pair = lemma3_instance(0, alg)
    assert len(g.edges) == 3
    assert SPURIOUS in _violation_kinds(g, pair)


def test_theorem_plus_times():
    v = test_theorem(builtin_algebra("plus.times"), trials=1000, seed=0)
    assert v.counterexample is None and v.forward_trials == 1000 and v.equivalent


def test_theorem_integers():
    alg = integers()
    v = test_theorem(alg, trials=10)
    cex = v.counterexample
    assert cex.lemma == 1 and v.forward_trials == 0
    assert cex.pair.e_out.get("k1", "a") == 1 and cex.pair.e_out.get("k2", "a") == -1


def test_theorem_boolean_algebra():
    alg = builtin_algebra("union.intersect", {1, 2})
    cex = test_theorem(alg, trials=10).counterexample
    assert cex.lemma == 2
    assert cex.pair.e_out.get("k", "a") == frozenset({1})
    assert cex.pair.e_in.get("k", "a") == frozenset({2})


def test_first_failing_condition_wins():
    # ring Z/3: zero-sum-free fails first even though nothing else does
    assert counterexample_for(check_conditions(integers_mod(3)), integers_mod(3)).lemma == 1


@pytest.mark.parametrize("alg", [integers(), builtin_algebra("union.intersect", {1, 2}), LEFT_LEAK],
                         ids=lambda a: a.name)
def test_counterexample_replays_through_json(alg):
    verdict = test_theorem(alg, trials=5)
    doc = json.loads(json.dumps(verdict.to_json(alg)))
    cex = Counterexample.from_json(doc["counterexample"], alg if alg.name != "union.intersect" else None)
    replayed = cex.replay()
    assert json.dumps(replayed.to_json()) == json.dumps(doc["counterexample"]["violation"])
    assert cex.replay() == verdict.counterexample.violation


def test_forward_search_catches_undersampled_algebra():
    # zero divisors only between 7 and 11; a 4-pair budget cannot see them
    def times(a, b):
        return 0 if {a, b} == {7, 11} else a * b
    alg = custom_algebra(lambda rng: rng.choice([1, 7, 11]), operator.add, times, 0, 1, name="sneaky")
    v = test_theorem(alg, trials=300, seed=1, budget=4)
    assert v.conditions.all_hold()
    assert v.counterexample is not None and v.counterexample.lemma == 0
    assert not v.equivalent


def test_enumeration_size_and_identities():
    algs = list(enumerate_table_algebras())
    assert len(algs) == 3 ** 8
    assert len({a.name for a in algs}) == 3 ** 8


def test_classify_small_trials():
    verdicts = classify_tables(trials=5)
    assert all(v.equivalent for v in verdicts)
    compliant = [v for v in verdicts if v.conditions.all_hold()]
    # ⊕ cells off the identities all nonzero (2^4) × ⊗ annihilating with 2 ⊗ 2 != 0 (2)
    assert len(compliant) == 32
