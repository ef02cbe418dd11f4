"""Exact factorization invariants of the cyclic rational semirings S_r = <r^n | n >= 0>.

S_r is the additive monoid of nonnegative rationals generated by the powers of
a positive rational r.  The package computes normal forms, sets of lengths,
delta sets, catenary degrees, elasticities, unions of sets of lengths, omega
primality and tameness for S_r, checks them against an independent
brute-force oracle, and compares them with numerical monoids generated by
arithmetic sequences.  All arithmetic is exact.
"""

from .core import (
    EMPTY,
    INF,
    CyclicSemiring,
    Factorization,
    GeomFactorError,
    InvalidTarget,
    LengthSet,
    NegativeRational,
    NotAtomic,
    NotMember,
    SemiringClass,
    UniqueFactorization,
    Unsupported,
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
from .invariants import (
    UnionOfLengths,
    TamenessReport,
    catenary_degree,
    delta_set,
    dense_elasticity_sample,
    elasticity,
    explore_conjecture,
    fully_elastic_witness,
    length_set,
    local_elasticities,
    monoid_elasticity,
    omega_bounded,
    omega_one,
    tameness_report,
    tau_witness,
    union_of_lengths,
)
from .numerical import (
    NotArithmetic,
    NumericalMonoid,
    nm_closed_forms,
    nm_frobenius,
    nm_length_set,
    nm_member,
)
from .oracle import (
    OracleBudget,
    Truncated,
    enumerate_factorizations,
    oracle_catenary,
    oracle_length_set,
    oracle_omega,
)

__version__ = "0.1.0"
