"""Command-line front end: verify, convert, enumerate, decompose, report.

JSON goes to stdout (stable key order, so byte-identical for fixed input and
version); a short human summary goes to stderr.  Exit codes: 0 success/pass,
1 semantic failure (axiom or hypothesis), 2 input error.  TRUSSLAB_THREADS
overrides the enumeration worker count.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import enumeration, substructure, transforms
from .catalog import builtin_names, resolve_group
from .errors import (
    DotNotColumnConstant,
    DotNotDistributive,
    GroupValidationError,
    HypothesisFailed,
    InputError,
    NotAnIdeal,
    NotEndomorphism,
    NotIdempotent,
    NotInterchange,
    NotVerified,
    PreconditionFailed,
    SigmaDoesNotFixZero,
    SigmaNotIdempotentEndo,
    TrussLabError,
    VerificationFailed,
)
from .structures import (
    DITRUSS,
    SKEW_TRUSS,
    WEAK_TRUSS,
    AlgebraObject,
    check,
    ditruss_consequence_report,
    lambda_family,
    normalize_kind,
    skew_truss_consequence_report,
    structure_from_json,
    structure_to_json,
)

EXIT_OK = 0
EXIT_SEMANTIC = 1
EXIT_INPUT = 2

# errors that reflect a structure failing a semantic requirement, not bad input
_SEMANTIC_ERRORS = (
    VerificationFailed,
    HypothesisFailed,
    NotInterchange,
    NotAnIdeal,
    NotVerified,
    SigmaNotIdempotentEndo,
    SigmaDoesNotFixZero,
    DotNotColumnConstant,
    DotNotDistributive,
    PreconditionFailed,
    NotIdempotent,
    NotEndomorphism,
)


def _emit(payload: dict, output: str | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _load_structure(path: str) -> AlgebraObject:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return structure_from_json(data)


def cmd_verify(args) -> int:
    obj = _load_structure(args.input)
    result = check(obj)
    payload = result.to_json()
    payload["group"] = obj.group.name
    payload["order"] = obj.group.order
    if result.ok:
        payload["consequences"] = _consequences(obj)
    _emit(payload, args.output)
    _note(f"{obj.kind} on {obj.group.name}: {'PASS' if result.ok else 'FAIL'}")
    return EXIT_OK if result.ok else EXIT_SEMANTIC


def _consequences(obj: AlgebraObject) -> list[dict]:
    out = []
    if obj.kind == SKEW_TRUSS:
        out.append(skew_truss_consequence_report(obj).to_json())
    elif obj.kind == DITRUSS:
        from .ops import is_left_distributive

        if is_left_distributive(obj.dot).holds:
            out.append(ditruss_consequence_report(obj).to_json())
    return out


def cmd_convert(args) -> int:
    obj = _load_structure(args.input)
    source = normalize_kind(args.source) if args.source else obj.kind
    if source != obj.kind:
        raise InputError(f"input object has kind {obj.kind}, --from says {source}")
    result = check(obj)
    if not result.ok:
        bad = next(r for r in result.reports if not r.holds)
        raise VerificationFailed(
            f"input fails {bad.law} at {bad.witness}", report=bad
        )
    target = normalize_kind(args.target)
    converted, record = transforms.convert(obj, target)
    payload = {
        "result": structure_to_json(converted),
        "record": record.to_json(),
    }
    _emit(payload, args.output)
    _note(f"{obj.kind} -> {converted.kind} via {record.forward_name}")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    group = resolve_group(_group_argument(args.group))
    kind = normalize_kind(args.kind)
    if args.oracle:
        payload = _oracle_payload(group, kind)
        _emit(payload, args.output)
        _note(f"oracle on {group.name}/{kind}: {payload['oracle_count']} structures")
        agreement = payload.get("agreement", True)
        return EXIT_OK if agreement else EXIT_SEMANTIC

    kwargs = {}
    if args.cap is not None:
        kwargs["cap"] = args.cap
    if kind == SKEW_TRUSS:
        result = enumeration.enumerate_skew_trusses(group, **kwargs)
    elif kind == WEAK_TRUSS:
        result = enumeration.enumerate_weak_trusses(group, **kwargs)
    elif kind == DITRUSS:
        result = enumeration.enumerate_constant_lambda_ditrusses(group)
    else:
        result = enumeration.enumerate_interchange(group)
    payload = result.to_json(up_to_iso=args.up_to_iso)
    _emit(payload, args.output)
    _note(
        f"{group.name}/{kind}: {result.total_count} structures, "
        f"{result.iso_class_count} up to isomorphism"
    )
    return EXIT_OK


def _oracle_payload(group, kind) -> dict:
    if kind == SKEW_TRUSS:
        oracle = enumeration.raw_skew_truss_search(group)
        result = enumeration.enumerate_skew_trusses(group)
        param_keys = tuple(enumeration.skew_truss_key(o) for o in result.structures)
    elif kind == WEAK_TRUSS:
        oracle = enumeration.raw_weak_truss_search(group)
        result = enumeration.enumerate_weak_trusses(group)
        param_keys = tuple(enumeration.weak_truss_key(o) for o in result.structures)
    elif kind == DITRUSS:
        oracle = enumeration.raw_constant_lambda_ditruss_search(group)
        result = enumeration.enumerate_constant_lambda_ditrusses(group)
        param_keys = tuple(
            enumeration.constant_lambda_ditruss_key(o) for o in result.structures
        )
    else:
        oracle = enumeration.raw_interchange_search(group)
        result = enumeration.enumerate_interchange(group)
        param_keys = tuple(enumeration.interchange_key(o) for o in result.structures)
    return {
        "group": group.name,
        "kind": kind,
        "oracle_count": oracle.count,
        "parametrized_count": result.total_count,
        "agreement": oracle.keys == tuple(sorted(param_keys)),
    }


def cmd_decompose(args) -> int:
    obj = _load_structure(args.input)
    result = check(obj)
    if not result.ok:
        bad = next(r for r in result.reports if not r.holds)
        raise VerificationFailed(f"input fails {bad.law} at {bad.witness}", report=bad)
    t0, tc = substructure.zero_symmetric_constant_decomposition(obj)
    payload: dict = {"T0": list(t0), "Tc": list(tc)}
    if obj.kind == SKEW_TRUSS:
        ideal_list = substructure.ideals(obj)
        payload["ideals"] = [list(i) for i in ideal_list]
        payload["congruence_count"] = len(substructure.congruences(obj))
    _emit(payload, args.output)
    _note(f"T0 size {len(t0)}, Tc size {len(tc)}")
    return EXIT_OK


def cmd_report(args) -> int:
    obj = _load_structure(args.input)
    result = check(obj)
    payload = result.to_json()
    payload["group"] = obj.group.name
    payload["order"] = obj.group.order
    if result.ok:
        payload["consequences"] = _consequences(obj)
        if obj.sigma is not None and (obj.circ is not None or obj.dot is not None):
            lam = lambda_family(obj)
            payload["lambda"] = {
                "constant": lam.constant,
                "all_endomorphisms": lam.all_endomorphisms,
                "maps": [list(m.images) for m in lam.maps],
            }
        if obj.sigma is not None:
            flags = obj.sigma_flags()
            payload["sigma_flags"] = {
                "endomorphism": flags.endomorphism,
                "idempotent": flags.idempotent,
                "fixes_zero": flags.fixes_zero,
            }
    _emit(payload, args.output)
    _note(f"report for {obj.kind} on {obj.group.name}")
    return EXIT_OK if result.ok else EXIT_SEMANTIC


def _group_argument(value: str):
    if value.endswith(".json"):
        try:
            with open(value, encoding="utf-8") as fh:
                return json.load(fh)
        except OSError as exc:
            raise InputError(f"cannot read {value}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InputError(f"{value} is not valid JSON: {exc}") from exc
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trusslab",
        description=(
            "Verify, convert, enumerate and decompose finite skew trusses, "
            "ditrusses, weak trusses and interchange near-rings."
        ),
        epilog=(
            f"Built-in groups: {', '.join(builtin_names())}. "
            "Congruence/subgroup scans are capped at order 12."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    kinds = ["skew-truss", "ditruss", "weak-truss", "interchange"]

    p = sub.add_parser("verify", help="check the defining axioms of a structure file")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("convert", help="move a structure between kinds")
    p.add_argument("--input", required=True)
    p.add_argument("--from", dest="source", choices=kinds + ["interchange-nr"])
    p.add_argument("--to", dest="target", required=True, choices=kinds + ["interchange-nr"])
    p.add_argument("--output")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("enumerate", help="classify all structures of a kind on a group")
    p.add_argument("--group", required=True, help="built-in name or a group JSON file")
    p.add_argument("--kind", required=True, choices=kinds + ["interchange-nr"])
    p.add_argument("--up-to-iso", action="store_true")
    p.add_argument(
        "--oracle",
        action="store_true",
        help="raw brute-force over full tables (order <= 3) and agreement check",
    )
    p.add_argument("--cap", type=int, help="order cap override for the full search")
    p.add_argument("--output")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("decompose", help="0-symmetric/constant split plus ideals")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("report", help="axioms plus derived-structure reports")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _SEMANTIC_ERRORS as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, getattr(args, "output", None))
        _note(f"failure: {exc}")
        return EXIT_SEMANTIC
    except (InputError, GroupValidationError) as exc:
        _note(f"input error: {exc}")
        return EXIT_INPUT
    except TrussLabError as exc:
        _note(f"error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
