"""Command-line front end: ``geomfactor <command> ...``.

Exit codes: 0 success, 1 property violation, 2 usage error, 3 not a member,
4 antimatter (no atoms), 5 request for an infinite object.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import invariants as inv
from . import verify as ver
from .core import (
    INF,
    CyclicSemiring,
    GeomFactorError,
    InvalidTarget,
    NotAtomic,
    NotMember,
    SemiringClass,
    Unsupported,
    classify,
    format_extended,
    format_rational,
    has_unique_factorization,
    max_length_factorization,
    member,
    min_length_factorization,
    parse_rational,
    require_atomic,
)
from .numerical import NotArithmetic, NumericalMonoid, nm_closed_forms
from .oracle import OracleBudget, enumerate_factorizations

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_NOT_MEMBER = 3
EXIT_NOT_ATOMIC = 4
EXIT_INFINITE = 5


class InfiniteObject(GeomFactorError):
    """The requested object (e.g. a longest factorization) does not exist."""


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except (ValueError, ZeroDivisionError, GeomFactorError) as exc:
        raise argparse.ArgumentTypeError(f"not a nonnegative rational: {text!r} ({exc})")


def _budget(text: str) -> OracleBudget:
    try:
        return OracleBudget.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _extended_int(v) -> int | str:
    return "inf" if v is INF else int(v)


def _atoms_text(S: CyclicSemiring) -> str:
    if S.kind is SemiringClass.ANTIMATTER:
        return "none"
    if S.is_integral:
        return "1"
    return f"({format_rational(S.r)})^n"


def cmd_classify(args) -> int:
    S = classify(args.r)
    _emit({
        "r": format_rational(S.r),
        "class": S.kind.value,
        "atomic": S.is_atomic,
        "atoms": _atoms_text(S),
        "bf": S.is_bf,
    })
    return EXIT_OK


def _all_factorizations(S: CyclicSemiring, x: Fraction, budget: OracleBudget) -> dict:
    if S.is_integral:
        atoms = [Fraction(1)]
        cut = False
    elif S.r > 1:
        atoms = [a for a in S.atoms(budget.max_exponent) if a <= x] or [Fraction(1)]
        cut = S.atom(budget.max_exponent + 1) <= x
    else:
        atoms = S.atoms(budget.max_exponent)
        zmin = min_length_factorization(S, x)
        cut = zmin.top > budget.max_exponent or not has_unique_factorization(S, x)
    enum = enumerate_factorizations(atoms, x, budget)
    return {
        "factorizations": [z.to_json() for z in enum.factorizations],
        "lengths": sorted({z.length for z in enum.factorizations}),
        "length_set": inv.length_set(S, x).to_json(),
        "truncated": enum.truncated or cut,
        "budget": budget.to_json(),
    }


def cmd_factor(args) -> int:
    S = classify(args.r)
    require_atomic(S)
    x = args.x
    if not member(S, x):
        raise NotMember(f"{format_rational(x)} is not in {S}")
    doc = {"r": format_rational(S.r), "x": format_rational(x), "form": args.form}
    if args.form == "all":
        doc.update(_all_factorizations(S, x, args.budget))
    else:
        z = min_length_factorization(S, x) if args.form == "min" else max_length_factorization(S, x)
        if z is INF:
            raise InfiniteObject(f"sup L(x) = inf: {format_rational(x)} has factorizations of every length in an infinite progression")
        doc.update(factorization=z.to_json(), length=z.length)
    _emit(doc)
    return EXIT_OK


def invariants_report(S: CyclicSemiring) -> dict:
    rho = inv.monoid_elasticity(S)
    tame = inv.tameness_report(S)
    return {
        "r": format_rational(S.r),
        "delta": sorted(inv.delta_set(S)),
        "catenary": inv.catenary_degree(S),
        "elasticity": format_extended(rho.value),
        "accepted": rho.accepted,
        "omega_one": _extended_int(tame.omega_one),
        "locally_tame": tame.locally_tame,
        "globally_tame": tame.globally_tame,
        "bf": S.is_bf,
    }


def cmd_invariants(args) -> int:
    S = classify(args.r)
    require_atomic(S)
    _emit(invariants_report(S))
    return EXIT_OK


def _set_text(values) -> str:
    return "{" + ",".join(str(v) for v in sorted(values)) + "}"


def _yes(flag: bool | None) -> str:
    return "open" if flag is None else str(bool(flag)).lower()


def compare_rows(S: CyclicSemiring, N: NumericalMonoid) -> list[list[str]]:
    require_atomic(S)
    rho = inv.monoid_elasticity(S)
    tame = inv.tameness_report(S)
    diff = min(inv.delta_set(S), default=0)
    if N.is_trivial:
        n_rho, n_delta, n_cat = Fraction(1), frozenset(), 0
    else:
        n_rho, n_delta, n_cat = nm_closed_forms(N)
    n_diff = min(n_delta, default=0)
    return [
        ["invariant", "numerical_monoid", "cyclic_semiring"],
        ["subject", str(N), str(S)],
        [
            "length_sets",
            f"progressions, difference {n_diff}" if n_diff else "singletons",
            f"progressions, difference {diff}" if diff else "singletons",
        ],
        ["delta", _set_text(n_delta), _set_text(inv.delta_set(S))],
        ["elasticity", format_rational(n_rho), format_extended(rho.value)],
        ["elasticity_accepted", "true", _yes(rho.accepted)],
        ["fully_elastic", _yes(N.is_trivial), _yes(inv.is_fully_elastic(S))],
        ["catenary", str(n_cat), str(inv.catenary_degree(S))],
        ["locally_tame", "true", _yes(tame.locally_tame)],
        ["globally_tame", "true", _yes(tame.globally_tame)],
        ["omega_monoid", "1" if N.is_trivial else "inf",
         "inf" if S.r < 1 else ("1" if S.is_integral else "not computed")],
        ["omega_one", "-", str(_extended_int(tame.omega_one))],
    ]


def cmd_compare(args) -> int:
    S = classify(args.r)
    try:
        N = NumericalMonoid.arithmetic(args.n, args.d, args.k)
    except ValueError as exc:
        raise Unsupported(str(exc))
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerows(compare_rows(S, N))
    return EXIT_OK


def cmd_verify(args) -> int:
    results = ver.run(args.suite, args.seed, args.budget, args.samples, args.inject_fault)
    passed = all(r.passed for r in results)
    _emit({
        "passed": passed,
        "seed": args.seed,
        "budget": args.budget.to_json(),
        "fault": args.inject_fault,
        "suites": [r.to_json() for r in results],
    })
    if not passed:
        first = next(v for r in results for v in r.violations)
        print("counterexample: " + json.dumps(first), file=sys.stderr)
        return EXIT_VIOLATION
    return EXIT_OK


def cmd_explore(args) -> int:
    S = classify(args.r)
    require_atomic(S)
    report = inv.explore_conjecture(S, args.q, args.budget)
    _emit({
        "r": format_rational(S.r),
        **report.to_json(),
        "experimental": True,
        "budget": args.budget.to_json(),
    })
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    budget_default = OracleBudget.from_env()
    parser = argparse.ArgumentParser(
        prog="geomfactor",
        description="Factorization invariants of the cyclic rational semirings S_r = <r^n | n >= 0>.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_budget(p):
        p.add_argument(
            "--budget", type=_budget, default=budget_default,
            help="max_exponent,max_length,max_bundle or 'default' (env GEOMFACTOR_BUDGET)",
        )
        return p

    p = sub.add_parser("classify", help="atomicity class of S_r")
    p.add_argument("r", type=_rational)
    p.set_defaults(func=cmd_classify)

    p = with_budget(sub.add_parser("factor", help="normal-form or all factorizations of x"))
    p.add_argument("r", type=_rational)
    p.add_argument("x", type=_rational)
    p.add_argument("--form", choices=("min", "max", "all"), default="min")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("invariants", help="delta set, catenary degree, elasticity, omega(1), tameness")
    p.add_argument("r", type=_rational)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("compare", help="CSV comparison of S_r with <n, n+d, ..., n+kd>")
    p.add_argument("r", type=_rational)
    p.add_argument("n", type=int)
    p.add_argument("d", type=int)
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_compare)

    p = with_budget(sub.add_parser("verify", help="oracle-versus-closed-form checks"))
    p.add_argument("--suite", choices=(*ver.SUITES, "all"), default="all")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=None, help="random members per radix")
    p.add_argument("--inject-fault", choices=ver.FAULTS, default=None, help="negative control")
    p.set_defaults(func=cmd_verify)

    p = with_budget(sub.add_parser("explore", help="experimental search for elasticity q (n(r) > d(r) + 1)"))
    p.add_argument("r", type=_rational)
    p.add_argument("q", type=_rational)
    p.set_defaults(func=cmd_explore)
    return parser


def _fail(code: int, exc: Exception) -> int:
    print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
    except ValueError as exc:
        return _fail(EXIT_USAGE, exc)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NotMember as exc:
        return _fail(EXIT_NOT_MEMBER, exc)
    except NotAtomic as exc:
        return _fail(EXIT_NOT_ATOMIC, exc)
    except InfiniteObject as exc:
        return _fail(EXIT_INFINITE, exc)
    except (Unsupported, InvalidTarget, NotArithmetic, ValueError, ZeroDivisionError) as exc:
        return _fail(EXIT_USAGE, exc)


if __name__ == "__main__":
    sys.exit(main())
