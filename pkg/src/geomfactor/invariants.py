"""Closed-form factorization invariants of S_r and the witnesses behind them."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd
from typing import NamedTuple

from .core import (
    INF,
    CyclicSemiring,
    Extended,
    Factorization,
    InvalidTarget,
    LengthSet,
    NotMember,
    UniqueFactorization,
    Unsupported,
    as_rational,
    divides,
    evaluate,
    has_unique_factorization,
    is_min_form,
    max_length_factorization,
    member,
    min_length_factorization,
    require_atomic,
)
from .oracle import OracleBudget, oracle_omega


def length_set(S: CyclicSemiring, x) -> LengthSet:
    require_atomic(S)
    x = as_rational(x)
    zmin = min_length_factorization(S, x)
    if S.is_integral or has_unique_factorization(S, x):
        return LengthSet.singleton(zmin.length)
    if S.r < 1:
        return LengthSet(zmin.length, S.b - S.a, INF)
    zmax = max_length_factorization(S, x)
    steps = (zmax.length - zmin.length) // (S.a - S.b)
    return LengthSet(zmin.length, S.a - S.b, steps + 1)


def delta_set(S: CyclicSemiring) -> frozenset[int]:
    require_atomic(S)
    if S.is_integral:
        return frozenset()
    return frozenset({S.difference})


def catenary_degree(S: CyclicSemiring) -> int:
    require_atomic(S)
    if S.is_integral:
        return 0
    return max(S.a, S.b)


def elasticity(S: CyclicSemiring, x) -> Extended:
    """``sup L(x) / min L(x)`` as an exact Fraction, or INF."""
    L = length_set(S, x)
    if L.min == 0:
        return Fraction(1)
    if not L.is_finite:
        return INF
    return Fraction(L.max, L.min)


class MonoidElasticity(NamedTuple):
    value: Extended
    accepted: bool


def monoid_elasticity(S: CyclicSemiring) -> MonoidElasticity:
    require_atomic(S)
    if S.is_integral:
        return MonoidElasticity(Fraction(1), True)
    return MonoidElasticity(INF, S.r < 1)


class ElasticWitness(NamedTuple):
    x: Fraction
    zmin: Factorization
    zmax: Factorization


def fully_elastic_witness(S: CyclicSemiring, q) -> ElasticWitness:
    """An element of elasticity exactly ``q``, for r > 1 with n(r) = d(r) + 1.

    With m least such that m*d(q) > d(r), k = m*(n(q) - d(q)) and
    t = m*d(q) - d(r), the element is d(r)*r^k + r^(k+1) + ... + r^(k+t);
    its longest factorization expands d(r)*r^k into d(r) + 1 + r + ... + r^(k-1).
    """
    require_atomic(S)
    q = as_rational(q)
    if S.is_integral or S.r < 1 or S.a != S.b + 1:
        raise Unsupported(f"{S} does not satisfy n(r) = d(r) + 1 with r > 1")
    if q <= 1:
        raise InvalidTarget(f"target elasticity must exceed 1, got {q}")
    b = S.b
    m = b // q.denominator + 1
    k = m * (q.numerator - q.denominator)
    t = m * q.denominator - b
    tail = {k + i: 1 for i in range(1, t + 1)}
    zmin = Factorization({k: b, **tail})
    zmax = Factorization({0: b + 1, **{i: 1 for i in range(1, k)}, **tail})
    return ElasticWitness(evaluate(S, zmin), zmin, zmax)


class DenseSample(NamedTuple):
    y: Fraction
    rho: Fraction
    K: int


def dense_elasticity_sample(S: CyclicSemiring, x, k: int) -> DenseSample:
    """Pad ``x`` with K = k*gcd(min L, max L) atoms above its largest atom.

    Both extremal factorizations gain the same K atoms, so the elasticity
    becomes (max L(x) + K) / (min L(x) + K).
    """
    require_atomic(S)
    if S.is_integral or S.r < 1:
        raise Unsupported(f"{S}: needs r > 1 not an integer")
    if k < 1:
        raise ValueError("k must be positive")
    x = as_rational(x)
    zmin = min_length_factorization(S, x)
    zmax = max_length_factorization(S, x)
    if zmin == zmax:
        raise UniqueFactorization(f"{x} has a unique factorization in {S}")
    lo, hi = zmin.length, zmax.length
    K = k * gcd(lo, hi)
    top = max(zmin.top, zmax.top)
    y = x + sum((S.r ** (top + i) for i in range(1, K + 1)), Fraction(0))
    return DenseSample(y, Fraction(hi + K, lo + K), K)


@dataclass(frozen=True)
class UnionOfLengths:
    k: int
    lengths: LengthSet
    lower_bound_certified: bool
    witness: Fraction | None = None

    @property
    def lambda_k(self) -> int:
        return self.lengths.min

    @property
    def rho_k(self) -> Extended:
        return self.lengths.max

    def to_json(self) -> dict:
        from .core import format_rational

        return {
            "k": self.k,
            "set": self.lengths.to_json(),
            "lower_bound_certified": self.lower_bound_certified,
            "witness": None if self.witness is None else format_rational(self.witness),
        }


def _lambda_lower_bound(S: CyclicSemiring, k: int) -> int:
    # any element with a factorization shorter than min(n, d) factors uniquely,
    # so no length below that co-occurs with k > it
    diff = S.difference
    floor = min(S.a, S.b)
    return floor + (k - floor) % diff


def _min_forms_of_length(S: CyclicSemiring, length: int, max_exponent: int):
    for combo in combinations_with_replacement(range(max_exponent + 1), length):
        z = Factorization.from_bundle(combo)
        if is_min_form(S, z):
            yield z


def union_of_lengths(S: CyclicSemiring, k: int, budget: OracleBudget | None = None) -> UnionOfLengths:
    """U_k(S_r): all lengths sharing a set of lengths with ``k``.

    Below the first threshold U_k = {k}; in the middle band it is the infinite
    progression from k; above the second threshold its minimum lambda_k < k is
    found by searching, shortest first, over minimum-length factorizations with
    exponents within the budget.
    """
    require_atomic(S)
    if k < 1:
        raise ValueError("k must be positive")
    budget = budget or OracleBudget()
    if S.is_integral:
        return UnionOfLengths(k, LengthSet.singleton(k), True, Fraction(k))
    a, b, diff = S.a, S.b, S.difference
    low, high = min(a, b), max(a, b)
    if k < low:
        return UnionOfLengths(k, LengthSet.singleton(k), True)
    if k < high:
        # x = k (r < 1) or k*r^n (r > 1) has a length-k factorization of minimum length
        witness = Fraction(k) if S.r < 1 else k * S.r
        return UnionOfLengths(k, LengthSet(k, diff, INF), True, witness)

    bound = _lambda_lower_bound(S, k)
    for ell in range(bound, k, diff):
        for z in _min_forms_of_length(S, ell, budget.max_exponent):
            y = evaluate(S, z)
            if k in length_set(S, y):
                return UnionOfLengths(k, LengthSet(ell, diff, INF), ell == bound, y)
    # the canonical trade always succeeds: k = (k - a)*1 + b*r for r > 1,
    # and k*r = (k - b)*r + a*1 for r < 1
    y = Fraction(k) if S.r > 1 else k * S.r
    return UnionOfLengths(k, LengthSet(k - diff, diff, INF), False, y)


class LocalElasticities(NamedTuple):
    lambda_k: int
    rho_k: Extended
    certified: bool


def local_elasticities(S: CyclicSemiring, k: int, budget: OracleBudget | None = None) -> LocalElasticities:
    u = union_of_lengths(S, k, budget)
    return LocalElasticities(u.lambda_k, u.rho_k, u.lower_bound_certified)


def omega_one(S: CyclicSemiring) -> Extended:
    require_atomic(S)
    if S.is_integral:
        return 1
    if S.r < 1:
        return INF
    return S.b


def omega_witness_family(S: CyclicSemiring, n: int) -> Factorization:
    """d*r^(n+1) + (d - n)*(r + ... + r^n), a factorization of n(r) avoiding 1 (r < 1)."""
    if S.is_integral or S.r > 1:
        raise Unsupported(f"{S}: the family needs r < 1")
    return Factorization({n + 1: S.b, **{i: S.b - S.a for i in range(1, n + 1)}})


class OmegaBound(NamedTuple):
    value: int
    certified: bool
    witness: Factorization | None


def omega_bounded(S: CyclicSemiring, x, budget: OracleBudget | None = None) -> OmegaBound:
    """Budgeted omega(x): the largest minimal bundle of atoms that ``x`` divides.

    Certified only when the search closes: the atom list is complete (r an
    integer), or x = 1 with r > 1 where omega(1) <= d(r) is known and the
    search exhibits a bundle of that size.  For r < 1 the value is a proven
    lower bound only, strengthened by the witness family whenever x | n(r).
    """
    require_atomic(S)
    budget = budget or OracleBudget()
    x = as_rational(x)
    if x == 0:
        raise ValueError("omega is only searched for nonzero elements")
    if not member(S, x):
        raise NotMember(f"{x} is not in {S}")
    atoms = S.atoms(budget.max_exponent)
    upper = None
    seeds: list[Factorization] = []
    if S.is_integral:
        pass
    elif S.r > 1:
        if x == 1:
            upper = S.b
    elif divides(S, x, S.a):
        seeds = [omega_witness_family(S, n) for n in range(1, budget.max_exponent)]

    report = oracle_omega(
        atoms,
        x,
        budget,
        lambda u, v: divides(S, u, v),
        atoms_complete=S.is_integral,
        upper_bound=upper,
        seeds=seeds,
    )
    return OmegaBound(*report)


class TauWitness(NamedTuple):
    bundle: Factorization
    remainder: Fraction
    remainder_min_length: int


def tau_witness(S: CyclicSemiring, k: int) -> TauWitness:
    """The bundle d(r)*r^k in Z_min(k, 1) and min L(d(r)*r^k - 1).

    The remainder's shortest factorization has length k(n - d) + d - 1, which
    grows without bound in k.
    """
    require_atomic(S)
    if S.is_integral or S.r < 1:
        raise Unsupported(f"{S}: needs r > 1 not an integer")
    if k < S.b:
        raise Unsupported(f"k must be at least d(r) = {S.b}")
    bundle = Factorization({k: S.b})
    value = evaluate(S, bundle)
    if not divides(S, 1, value):
        raise AssertionError(f"1 does not divide {value}")
    if any(divides(S, 1, beta * S.r**k) for beta in range(1, S.b)):
        raise AssertionError(f"{bundle} is not a minimal bundle for 1")
    remainder = value - 1
    return TauWitness(bundle, remainder, min_length_factorization(S, remainder).length)


@dataclass(frozen=True)
class TamenessReport:
    locally_tame: bool
    globally_tame: bool
    omega_one: Extended


def tameness_report(S: CyclicSemiring) -> TamenessReport:
    require_atomic(S)
    tame = S.is_integral
    return TamenessReport(tame, tame, omega_one(S))


@dataclass(frozen=True)
class ExplorationReport:
    q: Fraction
    found: bool
    witness: Fraction | None
    base: Fraction | None
    padding: int | None
    candidates: int

    def to_json(self) -> dict:
        from .core import format_rational

        return {
            "q": format_rational(self.q),
            "found": self.found,
            "witness": None if self.witness is None else format_rational(self.witness),
            "base": None if self.base is None else format_rational(self.base),
            "padding": self.padding,
            "candidates_searched": self.candidates,
            "status": "witness found" if self.found else "none found within budget",
        }


def explore_conjecture(S: CyclicSemiring, q, budget: OracleBudget | None = None) -> ExplorationReport:
    """Experimental search for x with elasticity exactly q when n(r) > d(r) + 1.

    Candidates are minimum-length factorizations (length <= max_bundle,
    exponents <= max_exponent).  Padding a candidate with K single atoms above
    its support keeps both normal forms, so its elasticity becomes
    (max L + K)/(min L + K); K is solved for exactly.  A miss says nothing
    about existence.
    """
    require_atomic(S)
    q = as_rational(q)
    if S.is_integral or S.r < 1:
        raise Unsupported(f"{S}: the explorer needs r > 1 not an integer")
    if S.a == S.b + 1:
        raise Unsupported(f"{S} has n(r) = d(r) + 1; use fully_elastic_witness")
    if q <= 1:
        raise InvalidTarget(f"target elasticity must exceed 1, got {q}")
    budget = budget or OracleBudget()
    seen = 0
    for ell in range(1, budget.max_bundle + 1):
        for z in _min_forms_of_length(S, ell, budget.max_exponent):
            seen += 1
            x = evaluate(S, z)
            zmax = max_length_factorization(S, x)
            lo, hi = z.length, zmax.length
            K = (hi - q * lo) / (q - 1)
            if K < 0 or K.denominator != 1:
                continue
            K = int(K)
            top = max(z.top, zmax.top)
            y = x + sum((S.r ** (top + i) for i in range(1, K + 1)), Fraction(0))
            if elasticity(S, y) == q:
                return ExplorationReport(q, True, y, x, K, seen)
    return ExplorationReport(q, False, None, None, None, seen)


def is_fully_elastic(S: CyclicSemiring) -> bool | None:
    """True/False where settled; None for r > 1 with n(r) > d(r) + 1 (open)."""
    require_atomic(S)
    if S.is_integral or (S.r > 1 and S.a == S.b + 1):
        return True
    if S.r < 1:
        return False
    return None
