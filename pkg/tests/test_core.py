import pickle
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geomfactor import (
    INF,
    Factorization,
    LengthSet,
    NegativeRational,
    NotAtomic,
    NotMember,
    SemiringClass,
    ZeroDenominator,
    as_rational,
    classify,
    divides,
    evaluate,
    fact_distance,
    fact_gcd,
    fact_length,
    format_rational,
    make_rational,
    max_length_factorization,
    member,
    min_length_factorization,
    parse_rational,
)
from geomfactor.core import is_max_form, is_min_form, trade_down, trade_up
from geomfactor.oracle import OracleBudget, enumerate_factorizations

RADICES = [Fraction(3, 2), Fraction(5, 2), Fraction(4, 3), Fraction(7, 4), Fraction(2, 3), Fraction(3, 5), Fraction(5, 8)]

radices = st.sampled_from(RADICES)
bundles = st.lists(st.integers(0, 6), min_size=0, max_size=10).map(Factorization.from_bundle)


# ---------------------------------------------------------------- rationals

def test_make_rational_reduces():
    assert make_rational(4, 6) == Fraction(2, 3)
    assert make_rational(3, 1) == 3
    assert make_rational(0, 5) == 0
    assert format_rational(make_rational(0, 5)) == "0/1"
    assert format_rational(make_rational(3, 1)) == "3/1"


def test_make_rational_errors():
    with pytest.raises(ZeroDenominator):
        make_rational(1, 0)
    with pytest.raises(NegativeRational):
        make_rational(-1, 2)
    with pytest.raises(NegativeRational):
        make_rational(1, -2)


def test_rational_parsing_refuses_floats():
    assert parse_rational(" 6/4 ") == Fraction(3, 2)
    assert as_rational("7") == 7
    with pytest.raises(TypeError):
        as_rational(1.5)
    with pytest.raises(ValueError):
        parse_rational("1.5")


# ---------------------------------------------------------------- classification

@pytest.mark.parametrize(
    "r, kind",
    [
        ("2/3", SemiringClass.ATOMIC_NON_INTEGER),
        ("1/2", SemiringClass.ANTIMATTER),
        ("2", SemiringClass.FACTORIAL_INTEGER),
        ("1", SemiringClass.FACTORIAL_INTEGER),
        ("7/4", SemiringClass.ATOMIC_NON_INTEGER),
    ],
)
def test_classify(r, kind):
    assert classify(r).kind is kind


def test_atoms():
    assert classify(2).atoms(5) == [1]
    assert classify("2/3").atoms(2) == [1, Fraction(2, 3), Fraction(4, 9)]


def test_antimatter_refuses_factorization_operations():
    S = classify("1/2")
    assert not S.is_atomic
    for op in (member, min_length_factorization, max_length_factorization):
        with pytest.raises(NotAtomic):
            op(S, 1)


def test_bf_iff_r_at_least_one():
    assert classify("3/2").is_bf and classify(1).is_bf
    assert not classify("2/3").is_bf


# ---------------------------------------------------------------- factorizations

def test_evaluate(s32):
    assert evaluate(s32, {0: 3}) == 3
    assert evaluate(s32, {1: 2}) == 3
    assert evaluate(s32, {0: 3, 1: 1, 2: 1, 4: 1}) == Fraction(189, 16)


def test_length_gcd_distance():
    assert fact_length({}) == 0
    assert fact_length({0: 3}) == 3
    assert fact_length({3: 2, 4: 1}) == 3
    z = Factorization({0: 5, 1: 1})
    assert fact_gcd({0: 3}, {1: 2}) == Factorization()
    assert fact_gcd(z, z) == z
    assert fact_gcd(z, {0: 2, 1: 3}) == Factorization({0: 2, 1: 1})
    assert fact_distance({0: 3}, {1: 2}) == 3
    assert fact_distance(z, z) == 0
    assert fact_distance(z, {0: 2, 1: 3}) == 3


def test_factorization_value_semantics():
    z = Factorization({4: 1, 3: 2, 7: 0})
    assert list(z) == [3, 4]
    assert z == {3: 2, 4: 1}
    assert hash(z) == hash(Factorization({3: 2, 4: 1}))
    assert z.to_json() == {"3": "2", "4": "1"}
    assert Factorization.from_json(z.to_json()) == z
    assert pickle.loads(pickle.dumps(z)) == z
    with pytest.raises(ValueError):
        Factorization({0: -1})
    with pytest.raises(ValueError):
        z - {3: 3}


# ---------------------------------------------------------------- membership and normal forms

def test_member_examples(s23):
    assert member(s23, Fraction(4, 3))
    assert not member(s23, Fraction(1, 3))
    assert member(s23, 0)
    assert member(classify("3/2"), 0)
    assert not member(classify("3/2"), Fraction(1, 2))
    assert not member(s23, Fraction(1, 5))


def test_min_length_examples(s32, s23):
    assert min_length_factorization(s32, 3) == {1: 2}
    assert min_length_factorization(s32, Fraction(189, 16)) == {3: 2, 4: 1}
    assert min_length_factorization(s23, 2) == {0: 2}
    assert min_length_factorization(s32, 0) == Factorization()


def test_max_length_examples(s32, s23, s2):
    assert max_length_factorization(s32, Fraction(189, 16)) == {0: 3, 1: 1, 2: 1, 4: 1}
    assert max_length_factorization(s32, 3) == {0: 3}
    assert max_length_factorization(s23, 2) is INF
    assert max_length_factorization(s2, 7) == {0: 7}


def test_not_member_raises(s23, s32):
    with pytest.raises(NotMember):
        min_length_factorization(s23, Fraction(1, 3))
    with pytest.raises(NotMember):
        max_length_factorization(s32, Fraction(5, 4))
    with pytest.raises(NotMember):
        min_length_factorization(classify(3), Fraction(1, 2))


def test_divides_examples(s32, s23):
    assert divides(s32, 1, 3)
    assert not divides(s23, 1, Fraction(2, 3))
    assert divides(s23, 0, Fraction(2, 3))


@settings(max_examples=150, deadline=None)
@given(radices, bundles)
def test_round_trip(r, z):
    S = classify(r)
    x = evaluate(S, z)
    assert member(S, x)
    zmin = min_length_factorization(S, x)
    assert evaluate(S, zmin) == x
    assert is_min_form(S, zmin)
    assert zmin.length <= z.length
    zmax = max_length_factorization(S, x)
    if zmax is not INF:
        assert evaluate(S, zmax) == x
        assert zmax.length >= z.length


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(RADICES[:4]), st.lists(st.integers(0, 4), min_size=1, max_size=6).map(Factorization.from_bundle))
def test_normal_forms_unique_among_oracle_factorizations(r, z):
    S = classify(r)
    x = evaluate(S, z)
    atoms = [S.atom(j) for j in range(12) if S.atom(j) <= x]
    enum = enumerate_factorizations(atoms, x, OracleBudget(len(atoms) - 1, int(x) + 1, 1))
    assert not enum.truncated
    assert [w for w in enum.factorizations if is_min_form(S, w)] == [min_length_factorization(S, x)]
    assert [w for w in enum.factorizations if is_max_form(S, w)] == [max_length_factorization(S, x)]


@settings(max_examples=100, deadline=None)
@given(bundles, bundles, bundles)
def test_distance_is_a_metric(z1, z2, z3):
    assert (fact_distance(z1, z2) == 0) == (z1 == z2)
    assert fact_distance(z1, z2) == fact_distance(z2, z1)
    assert fact_distance(z1, z3) <= fact_distance(z1, z2) + fact_distance(z2, z3)


@settings(max_examples=100, deadline=None)
@given(radices, bundles, bundles, st.integers(0, 6), st.sampled_from([11, 13, 17]))
def test_membership_closure(r, z1, z2, k, p):
    S = classify(r)
    x, y = evaluate(S, z1), evaluate(S, z2)
    assert member(S, x + y)
    # a denominator prime to n(r) d(r) can never be cleared
    assert not member(S, x + S.atom(k) / (S.b * p))


@settings(max_examples=100, deadline=None)
@given(radices, bundles, st.integers(0, 6))
def test_rewriting_soundness(r, z, i):
    S = classify(r)
    x = evaluate(S, z)
    grown = z + {i: S.a}
    up = trade_up(S, grown, i)
    assert evaluate(S, up) == evaluate(S, grown)
    assert up.length - grown.length == S.b - S.a
    grown = z + {i + 1: S.b}
    down = trade_down(S, grown, i + 1)
    assert evaluate(S, down) == evaluate(S, grown) == x + S.b * S.atom(i + 1)
    assert down.length - grown.length == S.a - S.b


# ---------------------------------------------------------------- LengthSet

def test_length_set_record():
    L = LengthSet(3, 1, 4)
    assert L.as_set() == {3, 4, 5, 6}
    assert L.max == 6 and L.delta() == {1}
    assert 5 in L and 7 not in L
    inf = LengthSet(2, 1, INF)
    assert inf.max is INF and not inf.is_finite
    assert inf.truncated(5) == {2, 3, 4, 5}
    assert inf.to_json() == {"start": 2, "difference": 1, "count": "inf"}
    assert LengthSet.singleton(7).to_json() == {"start": 7, "difference": 0, "count": 1}
    with pytest.raises(ValueError):
        LengthSet(2, 0, 3)
    with pytest.raises(ValueError):
        inf.as_set()
