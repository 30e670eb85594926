"""Command line interface.

Subcommands read a system file in the text format of the dsl module and emit
one JSON document on stdout (schema "1", keys sorted, counts as decimal
strings). Exit codes: 0 success/agreement, 1 usage or parse error, 2 theorem
hypothesis violated or work cap exceeded, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Sequence

from .dsl import ParseError, SystemDocument, build_restrictions, build_system, parse_system
from .errors import CapExceededError, HypothesisError, UnsupportedShapeError
from .ffsystems import (
    PolyCongruenceSystem,
    crt_poly,
    enumerate_solutions_ff,
    eta,
    restricted_system_count_ff,
    system_count_ff,
)
from .gfpoly import GFPolynomial, PrimeField, format_poly, parse_poly, phi_poly, poly_lcm_many
from .intarith import euler_phi, nary_lcm
from .ramanujan import ramanujan_c
from .report import CountReport
from .snf import butson_stewart_count, lift_to_common_modulus, smith_normal_form
from .systems import (
    CongruenceSystem,
    DEFAULT_ENUMERATION_CAP,
    crt_solve,
    enumerate_solutions,
    lehmer_count,
    restricted_system_count,
    system_count,
)

SCHEMA = "1"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; the spec reserves 2 for
    # hypothesis violations, so route usage problems through exit code 1.
    def error(self, message: str):  # type: ignore[override]
        raise _UsageError(message)


def _jsonable(value: Any) -> Any:
    if isinstance(value, GFPolynomial):
        return format_poly(value)
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def _emit(payload: dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _load(path: str) -> SystemDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc}") from exc
    return parse_system(text)


def _report_payload(report: CountReport) -> dict[str, Any]:
    return {
        "schema": SCHEMA,
        "count": str(report.count),
        "solvable": report.solvable,
        "theorem": report.theorem,
        "details": _jsonable(dict(report.details)),
    }


def _formula_report(doc: SystemDocument) -> CountReport:
    system = build_system(doc)
    table = build_restrictions(doc)
    if isinstance(system, CongruenceSystem):
        if table is None:
            if system.k == 1:
                return lehmer_count(system.coefficients[0], system.rhs[0], system.moduli[0])
            return system_count(system)
        return restricted_system_count(system, table)
    assert isinstance(system, PolyCongruenceSystem)
    if table is None:
        return system_count_ff(system)
    return restricted_system_count_ff(system, table)


def _cmd_count(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    report = _formula_report(doc)
    _emit(_report_payload(report))
    return 0


def _ambient_modulus(doc: SystemDocument, system) -> Any:
    if isinstance(system, CongruenceSystem):
        return nary_lcm(system.moduli)
    return poly_lcm_many(system.moduli)


def _cmd_enumerate(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    system = build_system(doc)
    table = build_restrictions(doc)
    if isinstance(system, CongruenceSystem):
        count, solutions = enumerate_solutions(system, table, cap=args.cap)
    else:
        count, solutions = enumerate_solutions_ff(system, table, cap=args.cap)
    modulus = _ambient_modulus(doc, system)
    payload: dict[str, Any] = {
        "schema": SCHEMA,
        "count": str(count),
        "modulus": format_poly(modulus) if isinstance(modulus, GFPolynomial) else str(modulus),
    }
    if args.list:
        payload["solutions"] = None if solutions is None else _jsonable(solutions)
    _emit(payload)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    system = build_system(doc)
    table = build_restrictions(doc)
    methods: dict[str, Any] = {}
    counts: list[int] = []

    try:
        report = _formula_report(doc)
        methods["formula"] = {"count": str(report.count), "theorem": report.theorem}
        counts.append(report.count)
    except (HypothesisError, UnsupportedShapeError) as exc:
        methods["formula"] = {"skipped": str(exc)}

    if isinstance(system, CongruenceSystem):
        if table is not None:
            methods["snf"] = {"skipped": "restrictions present"}
        else:
            try:
                snf_report = butson_stewart_count(system)
                methods["snf"] = {
                    "count": str(snf_report.count),
                    "invariant_factors": [
                        str(e) for e in snf_report.details["invariant_factors"]
                    ],
                }
                counts.append(snf_report.count)
            except UnsupportedShapeError as exc:
                methods["snf"] = {"skipped": str(exc)}

    try:
        if isinstance(system, CongruenceSystem):
            count, _ = enumerate_solutions(system, table, cap=args.cap)
        else:
            count, _ = enumerate_solutions_ff(system, table, cap=args.cap)
        methods["oracle"] = {"count": str(count)}
        counts.append(count)
    except CapExceededError as exc:
        methods["oracle"] = {"skipped": str(exc)}

    agreement = len(set(counts)) <= 1
    _emit({"schema": SCHEMA, "methods": methods, "agreement": agreement})
    return 0 if agreement else 3


def _cmd_snf(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    system = build_system(doc)
    if not isinstance(system, CongruenceSystem):
        raise _UsageError("snf applies to integer systems only")
    matrix, _, modulus = lift_to_common_modulus(system)
    result = smith_normal_form(matrix)
    report = butson_stewart_count(system)
    _emit(
        {
            "schema": SCHEMA,
            "modulus": str(modulus),
            "invariant_factors": [str(e) for e in result.invariant_factors],
            "count": str(report.count),
            "solvable": report.solvable,
        }
    )
    return 0


def _cmd_crt(args: argparse.Namespace) -> int:
    doc = _load(args.file)
    system = build_system(doc)
    if isinstance(system, CongruenceSystem):
        solved = crt_solve(system.rhs, system.moduli)
        if solved is None:
            _emit({"schema": SCHEMA, "solvable": False})
            return 0
        b, m = solved
        _emit({"schema": SCHEMA, "solvable": True, "residue": str(b), "modulus": str(m)})
        return 0
    b, m = crt_poly(system.rhs, system.moduli)
    _emit(
        {
            "schema": SCHEMA,
            "solvable": True,
            "residue": format_poly(b),
            "modulus": format_poly(m),
        }
    )
    return 0


def _cmd_ramanujan(args: argparse.Namespace) -> int:
    _emit({"schema": SCHEMA, "value": str(ramanujan_c(args.m, args.a))})
    return 0


def _cmd_eta(args: argparse.Namespace) -> int:
    field = PrimeField(args.p)
    g = parse_poly(args.g, field)
    h = parse_poly(args.h, field)
    _emit({"schema": SCHEMA, "value": str(eta(g, h))})
    return 0


def _cmd_phi(args: argparse.Namespace) -> int:
    if len(args.values) == 1:
        n = int(args.values[0])
        if n < 1:
            raise _UsageError("phi expects a positive integer")
        _emit({"schema": SCHEMA, "value": str(euler_phi(n))})
        return 0
    if len(args.values) == 2:
        field = PrimeField(int(args.values[0]))
        h = parse_poly(args.values[1], field)
        _emit({"schema": SCHEMA, "value": str(phi_poly(h))})
        return 0
    raise _UsageError("phi expects N or P H")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="congruences", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(p: argparse.ArgumentParser) -> None:
        p.add_argument("file", help="system file in the congruence text format")

    p = sub.add_parser("count", help="exact solution count via the counting formulas")
    with_file(p)
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("enumerate", help="exhaustive enumeration (the oracle)")
    with_file(p)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP,
                   help="largest tuple space to scan (default 10^8)")
    p.add_argument("--list", action="store_true",
                   help="include the solutions when there are at most 1000")
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify", help="run all applicable methods and compare")
    with_file(p)
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP,
                   help="largest tuple space the oracle may scan")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("snf", help="invariant factors and the lifted-matrix count")
    with_file(p)
    p.set_defaults(func=_cmd_snf)

    p = sub.add_parser("crt", help="simultaneous residue of the right-hand sides")
    with_file(p)
    p.set_defaults(func=_cmd_crt)

    p = sub.add_parser("ramanujan", help="Ramanujan sum C_m(a)")
    p.add_argument("m", type=int)
    p.add_argument("a", type=int)
    p.set_defaults(func=_cmd_ramanujan)

    p = sub.add_parser("eta", help="polynomial Ramanujan sum eta(G, H) over F_p")
    p.add_argument("p", type=int)
    p.add_argument("g")
    p.add_argument("h")
    p.set_defaults(func=_cmd_eta)

    p = sub.add_parser("phi", help="totient: phi N (integers) or phi P H (F_p[t])")
    p.add_argument("values", nargs="+")
    p.set_defaults(func=_cmd_phi)

    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except ParseError as exc:
        print(exc.diagnostic.render(), file=sys.stderr)
        return 1
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (HypothesisError, UnsupportedShapeError, CapExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())
