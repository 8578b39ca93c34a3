import operator

import pytest
from hypothesis import given, strategies as st

from semigraph.algebra import (BUILTIN_NAMES, BOTTOM, FAILS, HOLDS, NEG_INF,
                               POS_INF, TOP, builtin_algebra, check_conditions,
                               custom_algebra, integers, integers_mod,
                               table_algebra)
from semigraph.errors import MalformedAlgebraError, UnknownAlgebraError


def test_numeric_identity_examples():
    assert builtin_algebra("min.plus").times(2, 1) == 3
    assert builtin_algebra("max.min").times(3, 1) == 1
    assert builtin_algebra("plus.times").plus(5, 0) == 5


@pytest.mark.parametrize("name, zero, one", [
    ("plus.times", 0, 1), ("max.times", 0, 1), ("min.times", POS_INF, 1),
    ("max.plus", NEG_INF, 0), ("min.plus", POS_INF, 0), ("max.min", NEG_INF, POS_INF),
    ("min.max", POS_INF, NEG_INF), ("maxlex.minlex", BOTTOM, TOP), ("maxlen.concat", BOTTOM, ""),
])
def test_identities(name, zero, one):
    alg = builtin_algebra(name)
    assert alg.zero is zero or alg.zero == zero
    assert alg.one is one or alg.one == one


def test_union_intersect_identities():
    alg = builtin_algebra("union.intersect", {"a", "b"})
    assert alg.zero == frozenset()
    assert alg.one == frozenset({"a", "b"})
    assert builtin_algebra("union.intersect").one == frozenset({1, 2})


def test_unknown_algebra():
    with pytest.raises(UnknownAlgebraError):
        builtin_algebra("plus.plus")


def test_builtin_is_cached():
    assert builtin_algebra("max.plus") is builtin_algebra("max.plus")


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_identity_laws_on_sample(name):
    alg = builtin_algebra(name)
    for v in alg.sample(64, seed=3):
        assert alg.equals(alg.plus(v, alg.zero), v)
        assert alg.equals(alg.plus(alg.zero, v), v)
        assert alg.equals(alg.times(v, alg.one), v)
        assert alg.equals(alg.times(alg.one, v), v)


@pytest.mark.parametrize("name", BUILTIN_NAMES[:7] + BUILTIN_NAMES[8:])
def test_builtins_satisfy_conditions(name):
    report = check_conditions(builtin_algebra(name))
    assert report.all_hold()
    assert report.zero_sum_free.verdict == HOLDS
    assert not report.exhaustive


def test_extended_arithmetic_is_case_analysis():
    min_plus = builtin_algebra("min.plus")
    assert min_plus.times(POS_INF, -7) is POS_INF
    assert min_plus.times(4, POS_INF) is POS_INF
    max_plus = builtin_algebra("max.plus")
    assert max_plus.times(5, NEG_INF) is NEG_INF
    min_times = builtin_algebra("min.times")
    assert min_times.times(POS_INF, 0) is POS_INF  # annihilation beats 0
    assert NEG_INF < -1e300 < 1e300 < POS_INF


def test_integers_fail_zero_sum_free_with_unit_witness():
    report = check_conditions(integers())
    assert report.zero_sum_free.verdict == FAILS
    assert report.zero_sum_free.witness == (1, -1)
    assert report.replay(integers())


def test_boolean_algebra_has_zero_divisors():
    alg = builtin_algebra("union.intersect", {1, 2})
    report = check_conditions(alg)
    assert report.exhaustive
    assert report.zero_sum_free.holds and report.annihilator.holds
    assert report.no_zero_divisors.witness == (frozenset({1}), frozenset({2}))
    assert report.replay(alg)


def test_singleton_universe_is_compliant():
    report = check_conditions(builtin_algebra("union.intersect", {"x"}))
    assert report.all_hold() and report.exhaustive


def test_budget_limits_pairs():
    report = check_conditions(builtin_algebra("plus.times"), budget=100)
    assert report.elements == 10 and report.sample_size == 100
    assert check_conditions(builtin_algebra("plus.times"), budget=1).sample_size == 1


def test_checks_are_reproducible():
    alg = builtin_algebra("max.plus")
    assert check_conditions(alg, 400, 7) == check_conditions.__wrapped__(alg, 400, 7)


def test_maxlen_concat_is_noncommutative():
    alg = builtin_algebra("maxlen.concat")
    assert alg.times("ab", "c") == "abc"
    assert alg.times("c", "ab") == "cab"
    assert alg.plus("ab", "c") == "ab"
    assert alg.plus("ab", "ba") == "ba"  # equal length: lexicographic tie-break
    assert alg.times(BOTTOM, "x") is BOTTOM


def test_boolean_custom_algebra():
    alg = custom_algebra([0, 1], operator.or_, operator.and_, 0, 1, name="bool")
    assert check_conditions(alg).all_hold()


def test_custom_algebra_rejects_bad_zero():
    with pytest.raises(MalformedAlgebraError, match="⊕-identity"):
        custom_algebra([0, 1, 2], max, min, 1, 2)


def test_custom_algebra_rejects_escape_from_domain():
    with pytest.raises(MalformedAlgebraError, match="leaves the domain"):
        custom_algebra([0, 1, 2], operator.add, operator.mul, 0, 1)


def _identity_ok(elements, pt, tt, zero=0, one=1):
    # independent check straight off the tables
    ix = {e: i for i, e in enumerate(elements)}
    return all(pt[ix[v]][ix[zero]] == v and pt[ix[zero]][ix[v]] == v
               and tt[ix[v]][ix[one]] == v and tt[ix[one]][ix[v]] == v for v in elements)


@pytest.mark.parametrize("pt, tt", [
    ([[0, 1, 2], [1, 1, 2], [2, 2, 2]], [[0, 0, 0], [0, 1, 2], [0, 2, 2]]),
    ([[0, 1, 2], [1, 2, 0], [2, 0, 1]], [[0, 0, 0], [0, 1, 2], [0, 2, 1]]),
    ([[0, 1, 2], [1, 1, 1], [2, 1, 2]], [[0, 0, 0], [0, 1, 2], [0, 2, 0]]),
    ([[1, 1, 2], [1, 1, 2], [2, 2, 2]], [[0, 0, 0], [0, 1, 2], [0, 2, 2]]),
    ([[0, 1, 2], [1, 1, 2], [2, 2, 2]], [[0, 0, 0], [0, 2, 2], [0, 2, 2]]),
])
def test_three_element_tables(pt, tt):
    if _identity_ok((0, 1, 2), pt, tt):
        alg = table_algebra((0, 1, 2), pt, tt)
        assert alg.times(2, 1) == 2
    else:
        with pytest.raises(MalformedAlgebraError):
            table_algebra((0, 1, 2), pt, tt)


def test_mod2_fails_zero_sum_free():
    report = check_conditions(integers_mod(2))
    assert report.exhaustive
    assert report.zero_sum_free.witness == (1, 1)


@given(st.sampled_from(BUILTIN_NAMES), st.integers(0, 10_000))
def test_witnesses_replay(name, seed):
    alg = builtin_algebra(name)
    report = check_conditions(alg, 256, seed)
    assert report.replay(alg)
    for c in report.CONDITIONS:
        res = getattr(report, c)
        assert (res.verdict == FAILS) == (res.witness is not None)


def test_real_equality_tolerance():
    alg = builtin_algebra("plus.times")
    assert alg.is_zero(1e-13)
    assert not alg.is_zero(1e-11)
    assert not alg.equals(POS_INF, 1e308)


def test_json_codecs():
    alg = builtin_algebra("min.plus")
    assert alg.encode(POS_INF) == "+inf" and alg.decode("+inf") is POS_INF
    assert alg.parse("2.5") == 2.5 and alg.parse("3") == 3
    s = builtin_algebra("maxlen.concat")
    assert s.encode(BOTTOM) is None and s.decode(None) is BOTTOM
    u = builtin_algebra("union.intersect", {"b", "a"})
    assert u.encode(frozenset({"b", "a"})) == ["a", "b"]
    assert u.parse("a,b") == frozenset({"a", "b"})
