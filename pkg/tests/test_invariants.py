from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from geomfactor import (
    INF,
    Factorization,
    InvalidTarget,
    LengthSet,
    NotAtomic,
    NotMember,
    UniqueFactorization,
    Unsupported,
    catenary_degree,
    classify,
    delta_set,
    dense_elasticity_sample,
    divides,
    elasticity,
    evaluate,
    explore_conjecture,
    fully_elastic_witness,
    length_set,
    local_elasticities,
    max_length_factorization,
    min_length_factorization,
    monoid_elasticity,
    omega_bounded,
    omega_one,
    tameness_report,
    tau_witness,
    union_of_lengths,
)
from geomfactor.invariants import is_fully_elastic, omega_witness_family
from geomfactor.oracle import OracleBudget


def test_length_set_examples(s32, s23, s2):
    assert length_set(s23, 2) == LengthSet(2, 1, INF)
    assert length_set(s32, Fraction(189, 16)).as_set() == {3, 4, 5, 6}
    assert length_set(s2, 7) == LengthSet.singleton(7)
    assert length_set(s32, 0) == LengthSet.singleton(0)
    assert length_set(s23, Fraction(4, 9)) == LengthSet.singleton(1)


def test_length_set_errors(s23):
    with pytest.raises(NotMember):
        length_set(s23, Fraction(1, 3))
    with pytest.raises(NotAtomic):
        length_set(classify("1/3"), 1)


def test_delta_and_catenary():
    assert delta_set(classify("3/2")) == {1}
    assert delta_set(classify(2)) == set()
    assert delta_set(classify("5/3")) == {2}
    assert catenary_degree(classify("3/2")) == 3
    assert catenary_degree(classify(2)) == 0
    assert catenary_degree(classify("2/3")) == 3
    with pytest.raises(NotAtomic):
        catenary_degree(classify("1/5"))


def test_elasticity_examples(s32, s23):
    assert elasticity(s32, Fraction(189, 16)) == 2
    assert elasticity(s23, 2) is INF
    assert elasticity(s32, 0) == 1
    for S in (s32, s23):
        for n in range(6):
            assert elasticity(S, S.atom(n)) == 1


def test_monoid_elasticity():
    assert monoid_elasticity(classify(2)) == (1, True)
    assert monoid_elasticity(classify("2/3")) == (INF, True)
    assert monoid_elasticity(classify("3/2")) == (INF, False)


def test_fully_elastic_witness_examples(s32):
    w = fully_elastic_witness(s32, 2)
    assert w.x == Fraction(189, 16)
    assert (w.zmin.length, w.zmax.length) == (3, 6)
    assert evaluate(s32, w.zmax) == w.x
    w = fully_elastic_witness(s32, Fraction(3, 2))
    assert w.x == Fraction(207, 16)
    assert (w.zmin.length, w.zmax.length) == (4, 6)
    with pytest.raises(InvalidTarget):
        fully_elastic_witness(s32, 1)
    with pytest.raises(Unsupported):
        fully_elastic_witness(classify("5/2"), 2)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["3/2", "4/3", "5/4"]), st.fractions(min_value=1, max_value=10, max_denominator=12))
def test_fully_elastic_witness_is_exact(r, q):
    if q == 1:
        return
    S = classify(r)
    w = fully_elastic_witness(S, q)
    assert elasticity(S, w.x) == q
    assert min_length_factorization(S, w.x) == w.zmin
    assert max_length_factorization(S, w.x) == w.zmax


def test_dense_sample_examples(s32):
    s = dense_elasticity_sample(s32, Fraction(189, 16), 1)
    assert (s.K, s.rho) == (3, Fraction(3, 2))
    assert elasticity(s32, s.y) == s.rho
    s = dense_elasticity_sample(s32, Fraction(189, 16), 2)
    assert (s.K, s.rho) == (6, Fraction(4, 3))
    s = dense_elasticity_sample(s32, 3, 1)
    assert (s.K, s.rho, s.y) == (1, Fraction(4, 3), 3 + Fraction(9, 4))
    assert elasticity(s32, s.y) == s.rho
    with pytest.raises(UniqueFactorization):
        dense_elasticity_sample(s32, 1, 1)
    with pytest.raises(Unsupported):
        dense_elasticity_sample(classify("2/3"), 2, 1)
    with pytest.raises(Unsupported):
        dense_elasticity_sample(classify(3), 3, 1)


def test_union_of_lengths_examples(s32, s23, s2):
    assert union_of_lengths(s32, 1).lengths == LengthSet.singleton(1)
    assert union_of_lengths(s32, 2).lengths == LengthSet(2, 1, INF)
    u = union_of_lengths(s32, 3)
    assert u.lengths == LengthSet(2, 1, INF) and u.lower_bound_certified
    assert {2, 3} <= length_set(s32, u.witness).as_set()
    assert local_elasticities(s2, 5)[:2] == (5, 5)
    assert local_elasticities(s23, 2)[:2] == (2, INF)
    assert local_elasticities(s32, 3)[:2] == (2, INF)
    assert union_of_lengths(s32, 3).to_json() == {
        "k": 3,
        "set": {"start": 2, "difference": 1, "count": "inf"},
        "lower_bound_certified": True,
        "witness": "3/1",
    }


def test_union_of_lengths_larger_difference():
    S = classify("5/2")
    assert union_of_lengths(S, 1).lengths == LengthSet.singleton(1)
    for k in (2, 3, 4):
        assert union_of_lengths(S, k).lambda_k == k
    for k in (5, 6, 7, 9):
        u = union_of_lengths(S, k)
        assert u.lambda_k < k and (k - u.lambda_k) % 3 == 0
        L = length_set(S, u.witness)
        assert u.lambda_k in L and k in L


def test_union_witness_keeps_k_in_the_set():
    for r in ("3/2", "2/3", "5/3", "3/5"):
        S = classify(r)
        for k in range(1, 9):
            u = union_of_lengths(S, k)
            assert k in u.lengths
            assert u.lengths.difference in (0, S.difference)


def test_omega_one_values():
    assert omega_one(classify("3/2")) == 2
    assert omega_one(classify("2/3")) is INF
    assert omega_one(classify(2)) == 1


def test_omega_bounded_examples(s32, s23):
    report = omega_bounded(s32, 1, OracleBudget(6, 40, 6))
    assert (report.value, report.certified) == (2, True)
    assert omega_bounded(s23, Fraction(2, 3), OracleBudget(4, 40, 3)).value >= 1
    report = omega_bounded(s23, 2, OracleBudget(9, 40, 3))
    assert report.value >= 10 and not report.certified
    with pytest.raises(NotMember):
        omega_bounded(s23, Fraction(1, 3))


def test_witness_family_is_minimal(s23):
    z = omega_witness_family(s23, 8)
    assert z.length == 11
    assert evaluate(s23, z) == 2
    assert divides(s23, 1, evaluate(s23, z))
    for e in z:
        assert not divides(s23, 1, evaluate(s23, z - {e: 1}))


def test_tau_witness_examples(s32):
    w = tau_witness(s32, 2)
    assert w.bundle == Factorization({2: 2})
    assert (w.remainder, w.remainder_min_length) == (Fraction(7, 2), 3)
    assert min_length_factorization(s32, Fraction(7, 2)) == {0: 2, 1: 1}
    w = tau_witness(s32, 3)
    assert (w.remainder, w.remainder_min_length) == (Fraction(23, 4), 4)
    assert tau_witness(s32, 10).remainder_min_length == 11
    with pytest.raises(Unsupported):
        tau_witness(classify("2/3"), 3)


def test_tameness_report():
    t = tameness_report(classify(2))
    assert (t.locally_tame, t.globally_tame, t.omega_one) == (True, True, 1)
    t = tameness_report(classify("3/2"))
    assert (t.locally_tame, t.omega_one) == (False, 2)
    t = tameness_report(classify("2/3"))
    assert (t.locally_tame, t.omega_one) == (False, INF)


def test_one_divides_b_times_power():
    for r in ("3/2", "5/2", "7/3", "9/4"):
        S = classify(r)
        assert all(divides(S, 1, S.b * S.atom(k)) for k in range(13))


@settings(max_examples=150, deadline=None)
@given(
    st.sampled_from(["2/3", "3/5", "5/8", "3/7"]),
    st.lists(st.integers(0, 6), min_size=1, max_size=10).map(Factorization.from_bundle),
)
def test_one_divides_iff_constant_digit(r, z):
    S = classify(r)
    x = evaluate(S, z)
    assert divides(S, 1, x) == (min_length_factorization(S, x).get(0) >= 1)


def test_fully_elastic_classification():
    assert is_fully_elastic(classify(3)) is True
    assert is_fully_elastic(classify("3/2")) is True
    assert is_fully_elastic(classify("2/3")) is False
    assert is_fully_elastic(classify("5/2")) is None


def test_explorer():
    S = classify("5/2")
    report = explore_conjecture(S, 2)
    assert report.found and elasticity(S, report.witness) == 2
    report = explore_conjecture(S, Fraction(7, 3), OracleBudget(12, 40, 8))
    assert report.found and elasticity(S, report.witness) == Fraction(7, 3)
    miss = explore_conjecture(S, Fraction(101, 100), OracleBudget(1, 40, 1))
    assert not miss.found and miss.to_json()["status"] == "none found within budget"
    with pytest.raises(Unsupported):
        explore_conjecture(classify("3/2"), 2)
    with pytest.raises(InvalidTarget):
        explore_conjecture(S, 1)
