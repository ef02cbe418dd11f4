"""Oracle-versus-closed-form verification suites.

Every check compares a closed form (normal forms, invariants) against the
brute-force oracle, which shares no code with the normal-form extraction.
Runs are deterministic for a given (seed, budget, samples).
"""

from __future__ import annotations

import random
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement

import numpy as np

from .core import (
    CyclicSemiring,
    Factorization,
    LengthSet,
    classify,
    divides,
    evaluate,
    format_extended,
    format_rational,
    max_length_factorization,
    min_length_factorization,
)
from .invariants import (
    catenary_degree,
    length_set,
    omega_bounded,
    omega_one,
    tau_witness,
    union_of_lengths,
)
from .oracle import (
    OracleBudget,
    _Scaled,
    catenary_of_matrix,
    oracle_length_set,
    solution_matrix,
)

LENGTH_RADICES = tuple(
    Fraction(r) for r in ("3/2", "5/2", "4/3", "7/4", "8/3", "2/3", "3/5", "5/8")
)
UNION_RADICES = (Fraction(3, 2), Fraction(2, 3))
OMEGA_RADICES = tuple(Fraction(r) for r in ("3/2", "5/2", "4/3", "7/4"))
SMALL_RADICES = tuple(Fraction(r) for r in ("2/3", "3/5", "5/8"))

SAMPLE_ATOMS = 10
SAMPLE_EXPONENT = 6

FAULTS = ("length-difference",)
SUITES = ("lengths", "catenary", "unions", "omega")


@dataclass
class SuiteResult:
    suite: str
    checks: int = 0
    violations: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def check(self, ok: bool, **counterexample) -> bool:
        self.checks += 1
        if not ok:
            self.violations.append({"suite": self.suite, **counterexample})
        return ok

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": self.checks,
            "violations": self.violations,
            "details": self.details,
        }


def random_factorization(rng: random.Random) -> Factorization:
    """A random bundle of 1..10 atoms with exponents in 0..6."""
    size = rng.randint(1, SAMPLE_ATOMS)
    return Factorization.from_bundle(rng.randint(0, SAMPLE_EXPONENT) for _ in range(size))


def sample_members(S: CyclicSemiring, count: int, rng: random.Random) -> list[tuple[Factorization, Fraction]]:
    out = []
    for _ in range(count):
        z = random_factorization(rng)
        out.append((z, evaluate(S, z)))
    return out


def _lengths_json(lengths: Iterable[int]) -> list[int]:
    return sorted(lengths)


@dataclass(frozen=True)
class OracleView:
    """Oracle data for one element: atom list, coefficient rows, completeness."""

    atoms: list[Fraction]
    rows: np.ndarray
    truncated: bool
    lengths: frozenset[int]

    @property
    def complete(self) -> bool:
        return not self.truncated


def oracle_atoms(S: CyclicSemiring, x: Fraction, max_length: int, top: int = 0) -> tuple[list[Fraction], int]:
    """Atoms the oracle needs for ``x`` and the length cap to apply.

    For r > 1 every atom r^j <= x, with length cap floor(x), gives the complete
    factorization set.  For r < 1 the set is infinite; with exponents up to
    ``top + max_length`` all factorizations of length <= ``max_length`` are
    within reach of the list.
    """
    if S.r > 1:
        atoms, j = [], 0
        while S.atom(j) <= x:
            atoms.append(S.atom(j))
            j += 1
        return atoms or [Fraction(1)], max(int(x), 1)
    return S.atoms(top + max_length), max_length


def oracle_view(S: CyclicSemiring, x: Fraction, max_length: int, top: int = 0, rows: bool = True) -> OracleView:
    atoms, cap = oracle_atoms(S, x, max_length, top)
    budget = OracleBudget(len(atoms) - 1, cap, 1)
    if rows:
        matrix, truncated = solution_matrix(atoms, x, budget)
        lengths = frozenset(int(v) for v in matrix.sum(axis=1)) if len(matrix) else frozenset()
        return OracleView(atoms, matrix, truncated, lengths)
    report = oracle_length_set(atoms, x, budget)
    return OracleView(atoms, np.zeros((0, len(atoms)), dtype=np.int64), report.truncated, report.lengths)


def _closed_lengths(S: CyclicSemiring, x: Fraction, fault: str | None) -> LengthSet:
    L = length_set(S, x)
    if fault == "length-difference" and L.count != 1:
        L = LengthSet(L.start, L.difference + 1, L.count)
    return L


def _row_factorization(row) -> Factorization:
    return Factorization((j, int(c)) for j, c in enumerate(row) if c)


def run_lengths(
    seed: int = 0,
    budget: OracleBudget | None = None,
    samples: int = 200,
    radices: Iterable[Fraction] = LENGTH_RADICES,
    fault: str | None = None,
) -> SuiteResult:
    """Oracle L(x) against the closed-form progression, and normal-form uniqueness.

    For r < 1 both sides are truncated at ``budget.max_length``.
    """
    budget = budget or OracleBudget()
    result = SuiteResult("lengths")
    rng = random.Random(seed)
    for r in radices:
        S = classify(r)
        mismatches = 0
        for z, x in sample_members(S, samples, rng):
            closed = _closed_lengths(S, x, fault)
            zmin = min_length_factorization(S, x)
            if S.r > 1:
                view = oracle_view(S, x, budget.max_length)
                expected = closed.as_set()
                ok = result.check(
                    not view.truncated and view.lengths == expected,
                    check="length_set",
                    r=format_rational(r),
                    x=format_rational(x),
                    closed_form=_lengths_json(expected),
                    oracle=_lengths_json(view.lengths),
                )
                _check_normal_forms(result, S, x, view, zmin)
            else:
                cap = budget.max_length
                view = oracle_view(S, x, cap, zmin.top, rows=False)
                expected = closed.truncated(cap)
                ok = result.check(
                    view.lengths == expected,
                    check="length_set_truncated",
                    r=format_rational(r),
                    x=format_rational(x),
                    max_length=cap,
                    closed_form=_lengths_json(expected),
                    oracle=_lengths_json(view.lengths),
                )
            mismatches += not ok
        result.details[format_rational(r)] = {"samples": samples, "mismatches": mismatches}
    return result


def _check_normal_forms(result: SuiteResult, S: CyclicSemiring, x, view: OracleView, zmin) -> None:
    rows = view.rows
    a, b = S.a, S.b
    below_n = np.all(rows < a, axis=1)
    below_d = np.all(rows[:, 1:] < b, axis=1)
    mins = [_row_factorization(row) for row in rows[below_n]]
    maxs = [_row_factorization(row) for row in rows[below_d]]
    zmax = max_length_factorization(S, x)
    result.check(
        mins == [zmin],
        check="min_form_unique",
        r=format_rational(S.r),
        x=format_rational(x),
        digit_extraction=zmin.to_json(),
        oracle_candidates=[z.to_json() for z in mins],
    )
    result.check(
        maxs == [zmax],
        check="max_form_unique",
        r=format_rational(S.r),
        x=format_rational(x),
        digit_extraction=zmax.to_json(),
        oracle_candidates=[z.to_json() for z in maxs],
    )


def run_catenary(
    seed: int = 0,
    budget: OracleBudget | None = None,
    samples: int = 200,
    radices: Iterable[Fraction] = LENGTH_RADICES,
) -> SuiteResult:
    """Exact oracle c(x) and Delta(x) over the same samples as the length suite.

    Only r > 1 has finite, fully enumerable factorization sets, so the
    catenary comparison runs there; for r < 1 the deltas of the truncated
    oracle length sets are still collected.
    """
    budget = budget or OracleBudget()
    result = SuiteResult("catenary")
    rng = random.Random(seed)
    for r in radices:
        S = classify(r)
        bound = catenary_degree(S)
        deltas: set[int] = set()
        best, best_x = 0, None
        for _, x in sample_members(S, samples, rng):
            if S.r > 1:
                view = oracle_view(S, x, budget.max_length)
                c = catenary_of_matrix(view.rows, _Scaled(view.atoms))
                result.check(
                    c <= bound,
                    check="catenary_bound",
                    r=format_rational(r),
                    x=format_rational(x),
                    bound=bound,
                    oracle=c,
                )
                if c > best:
                    best, best_x = c, x
            else:
                zmin = min_length_factorization(S, x)
                view = oracle_view(S, x, budget.max_length, zmin.top, rows=False)
            ls = sorted(view.lengths)
            deltas.update(v - u for u, v in zip(ls, ls[1:]))
        result.check(
            deltas == {S.difference},
            check="delta_union",
            r=format_rational(r),
            closed_form=[S.difference],
            oracle=sorted(deltas),
        )
        entry = {"delta": sorted(deltas), "bound": bound}
        if S.r > 1:
            result.check(
                best == bound,
                check="catenary_attained",
                r=format_rational(r),
                bound=bound,
                oracle_max=best,
            )
            entry.update(max_catenary=best, attained_at=format_rational(best_x) if best_x is not None else None)
        result.details[format_rational(r)] = entry

    S = classify(Fraction(3, 2))
    view = oracle_view(S, Fraction(3), budget.max_length)
    c3 = catenary_of_matrix(view.rows, _Scaled(view.atoms))
    result.check(c3 == 3, check="catenary_at_3", r="3/2", x="3/1", expected=3, oracle=c3)
    result.details["3/2 at 3/1"] = c3
    return result


def _bundles(max_exponent: int, size: int) -> Iterable[Factorization]:
    for combo in combinations_with_replacement(range(max_exponent + 1), size):
        yield Factorization.from_bundle(combo)


def _oracle_lengths(S: CyclicSemiring, x: Fraction, cap: int) -> frozenset[int]:
    zmin = min_length_factorization(S, x)
    return oracle_view(S, x, cap, zmin.top, rows=False).lengths


def run_unions(
    seed: int = 0,
    budget: OracleBudget | None = None,
    radices: Iterable[Fraction] = UNION_RADICES,
    max_exponent: int = 4,
    extra: int = 3,
) -> SuiteResult:
    """Trichotomy of U_k around k = min(n, d) and k = max(n, d), checked by search.

    Every element with a length-k factorization over exponents <= max_exponent
    is enumerated and its oracle length set inspected.
    """
    budget = budget or OracleBudget()
    result = SuiteResult("unions")
    cap = budget.max_length
    for r in radices:
        S = classify(r)
        low, high, diff = min(S.a, S.b), max(S.a, S.b), S.difference
        rows = {}
        for k in range(1, high + extra):
            u = union_of_lengths(S, k, budget)
            partners: set[int] = set()
            for z in _bundles(max_exponent, k):
                partners |= _oracle_lengths(S, evaluate(S, z), max(cap, k + diff))
            below = sorted(p for p in partners if p < k)
            subject = {"r": format_rational(r), "k": k}
            if k < low:
                result.check(partners == {k}, check="U_k_singleton", **subject, oracle=sorted(partners))
                result.check(u.lengths == LengthSet.singleton(k), check="U_k_closed_singleton", **subject)
            elif k < high:
                result.check(not below and k + diff in partners, check="U_k_middle", **subject, oracle_below=below)
                result.check(u.lambda_k == k and not u.lengths.is_finite, check="U_k_closed_middle", **subject)
            else:
                y = Fraction(k) if S.r > 1 else k * S.r
                witness = _oracle_lengths(S, y, max(cap, k + diff))
                result.check(
                    {k - diff, k} <= witness,
                    check="U_k_trade_witness",
                    **subject,
                    witness=format_rational(y),
                    oracle=sorted(witness),
                )
                hit = _oracle_lengths(S, u.witness, max(cap, k + diff)) if u.witness is not None else frozenset()
                result.check(
                    u.lambda_k < k and {u.lambda_k, k} <= hit and min(below, default=k) >= u.lambda_k,
                    check="U_k_above",
                    **subject,
                    lambda_k=u.lambda_k,
                    oracle_below=below,
                )
            rows[k] = {"lambda_k": u.lambda_k, "rho_k": format_extended(u.rho_k), "certified": u.lower_bound_certified}
        result.details[format_rational(r)] = rows
    return result


def _one_in_some_factorization(S: CyclicSemiring, x: Fraction, cap: int) -> bool:
    # the oracle's own answer to "does some factorization of x use the atom 1"
    zmin = min_length_factorization(S, x)
    atoms = S.atoms(zmin.top + cap)
    rest = x - 1
    if rest < 0:
        return False
    if rest == 0:
        return True
    matrix, _ = solution_matrix(atoms, rest, OracleBudget(len(atoms) - 1, cap - 1, 1))
    return len(matrix) > 0


def run_omega(
    seed: int = 0,
    budget: OracleBudget | None = None,
    samples: int = 100,
    radices: Iterable[Fraction] = OMEGA_RADICES,
) -> SuiteResult:
    """omega(1), the r < 1 witness family, the tau(1) witnesses, and the 1 | x test."""
    budget = budget or OracleBudget()
    result = SuiteResult("omega")
    omega_budget = OracleBudget(budget.max_exponent, budget.max_length, min(budget.max_bundle, 6))
    for r in radices:
        S = classify(r)
        bound = omega_bounded(S, 1, omega_budget)
        result.check(
            bound.value == omega_one(S) and bound.certified,
            check="omega_one",
            r=format_rational(r),
            closed_form=omega_one(S),
            oracle=bound.value,
            certified=bound.certified,
        )
        result.details[format_rational(r)] = {"omega_one": bound.value, "certified": bound.certified}
        for k in range(0, 13):
            result.check(divides(S, 1, S.b * S.atom(k)), check="one_divides_d_r^k", r=format_rational(r), k=k)

    S = classify(Fraction(2, 3))
    family_budget = OracleBudget(max(budget.max_exponent, 9), budget.max_length, min(budget.max_bundle, 3))
    bound = omega_bounded(S, 1, family_budget)
    result.check(
        bound.value > 10 and not bound.certified,
        check="omega_one_lower_bound",
        r="2/3",
        oracle=bound.value,
        certified=bound.certified,
    )
    result.details["2/3"] = {"omega_one_lower_bound": bound.value, "certified": bound.certified}

    S = classify(Fraction(3, 2))
    taus = {}
    for k in range(2, 11):
        w = tau_witness(S, k)
        expected = k * (S.a - S.b) + S.b - 1
        oracle = oracle_view(S, w.remainder, budget.max_length, rows=False).lengths
        result.check(
            w.remainder_min_length == expected and min(oracle) == expected,
            check="tau_witness",
            r="3/2",
            k=k,
            formula=expected,
            closed_form=w.remainder_min_length,
            oracle=min(oracle, default=None),
        )
        taus[k] = w.remainder_min_length
    result.details["3/2 tau remainders"] = taus

    rng = random.Random(seed)
    agree = 0
    for i in range(samples):
        S = classify(SMALL_RADICES[i % len(SMALL_RADICES)])
        z = random_factorization(rng)
        x = evaluate(S, z)
        constant = min_length_factorization(S, x).get(0) >= 1
        by_divides = divides(S, 1, x)
        by_oracle = _one_in_some_factorization(S, x, min(budget.max_length, 20))
        ok = result.check(
            constant == by_divides == by_oracle,
            check="one_divides_iff_constant_term",
            r=format_rational(S.r),
            x=format_rational(x),
            constant_term=constant,
            divides=by_divides,
            oracle=by_oracle,
        )
        agree += ok
    result.details["1 | x iff constant term"] = {"samples": samples, "agree": agree}
    return result


RUNNERS: dict[str, Callable[..., SuiteResult]] = {
    "lengths": run_lengths,
    "catenary": run_catenary,
    "unions": run_unions,
    "omega": run_omega,
}


def run(
    suite: str = "all",
    seed: int = 0,
    budget: OracleBudget | None = None,
    samples: int | None = None,
    fault: str | None = None,
) -> list[SuiteResult]:
    if fault is not None and fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; choose from {FAULTS}")
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        if name not in RUNNERS:
            raise ValueError(f"unknown suite {name!r}")
        kwargs: dict = {"seed": seed, "budget": budget}
        if samples is not None and name in ("lengths", "catenary", "omega"):
            kwargs["samples"] = samples
        if name == "lengths":
            kwargs["fault"] = fault
        out.append(RUNNERS[name](**kwargs))
    return out
