"""Command-line front end.

Every command reads one JSON payload (inline argument or ``--input FILE``) and
writes compact, key-sorted JSON to stdout.  Exit codes: 0 success, 2 bad
input, 3 domain error; errors are reported as ``{"error": Name, "message": ...}``.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Dict, List, Optional

from . import covers, fenchel_nielsen, scan as scanning, signature as sg, step_invariants, tower
from .errors import FenchelError, InvalidPayload, MalformedHom, UnknownCommand, ValidationError
from .groups import FiniteAbelianGroup
from .signature import Signature

EXIT_OK, EXIT_INVALID, EXIT_DOMAIN = 0, 2, 3


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# ---------------------------------------------------------------- parsing


def _int(value: Any, name: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidPayload(f"{name} must be an integer, got {value!r}")
    return value


def parse_signature(payload: Any) -> Signature:
    if isinstance(payload, dict) and "signature" in payload:
        payload = payload["signature"]
    if not isinstance(payload, dict):
        raise InvalidPayload("expected a signature object {\"g\", \"r\", \"periods\"}")
    missing = {"g", "r"} - payload.keys()
    if missing:
        raise InvalidPayload(f"signature is missing {sorted(missing)}")
    periods = payload.get("periods", [])
    if not isinstance(periods, list):
        raise InvalidPayload("periods must be a list")
    return sg.normalize_signature(
        _int(payload["g"], "g"), _int(payload["r"], "r"),
        [_int(n, "period") for n in periods],
    )


def _field(payload: Any, key: str, default: Any = ...) -> Any:
    if not isinstance(payload, dict):
        raise InvalidPayload("expected a JSON object")
    if key not in payload:
        if default is ...:
            raise InvalidPayload(f"missing field {key!r}")
        return default
    return payload[key]


# --------------------------------------------------------------- commands


def cmd_chi(payload, args) -> Any:
    return sg.format_rational(sg.euler_characteristic(parse_signature(payload)))


def cmd_classify(payload, args) -> Any:
    return sg.classify_nonhyperbolic(parse_signature(payload)).to_dict()


def cmd_ab(payload, args) -> Any:
    ab = sg.abelianization(parse_signature(payload))
    out = ab.to_dict()
    out["torsion_order"] = ab.torsion_order
    return out


def cmd_report(payload, args) -> Any:
    return sg.invariants_report(parse_signature(payload)).to_dict()


def cmd_table(payload, args) -> Any:
    return [
        {"pattern": row.pattern, "group": row.group, "euler": row.euler,
         "derived_length": row.derived_length}
        for row in sg.TABLE_1
    ]


def cmd_tower(payload, args) -> Any:
    return tower.derived_tower(parse_signature(payload), args.depth).to_dict()


def cmd_induced(payload, args) -> Any:
    s = parse_signature(payload)
    if "abelian_hom" in payload:
        h = covers.AbelianHom.from_dict(s, _field(payload, "abelian_hom"))
        return covers.induced_signature_abelian(s, h).to_dict()
    if "perm_hom" in payload:
        h = covers.PermHom.from_dict(s, _field(payload, "perm_hom"))
        if not covers.verify_perm_hom(h):
            raise MalformedHom("permutation images violate the relations or are not transitive")
        return covers.induced_signature(s, h).to_dict()
    return tower.torsion_kernel_signature(s).to_dict()


def cmd_homs(payload, args) -> Any:
    s = parse_signature(payload)
    if "degree" in payload:
        homs = covers.enumerate_perm_homs(
            s, _int(payload["degree"], "degree"),
            degree_bound=args.degree_bound, search_ceiling=args.ceiling,
        )
    else:
        moduli = _field(payload, "target_moduli")
        if not isinstance(moduli, list):
            raise InvalidPayload("target_moduli must be a list")
        target = FiniteAbelianGroup(tuple(_int(m, "modulus") for m in moduli))
        homs = covers.enumerate_abelian_homs(
            s, target, bool(_field(payload, "surjective_only", False)),
            order_bound=args.order_bound, search_ceiling=args.ceiling,
        )
    return {"count": len(homs), "homs": [h.to_dict() for h in homs]}


def cmd_fn_chain(payload, args) -> Any:
    chain = fenchel_nielsen.fn_chain(parse_signature(payload))
    out = chain.to_dict()
    out["certified"] = fenchel_nielsen.certify_chain(chain).to_dict()
    return out


def cmd_cusp_grow(payload, args) -> Any:
    s = parse_signature(payload)
    r0 = _int(_field(payload, "r0"), "r0")
    chain = fenchel_nielsen.cusp_growth_chain(s, r0)
    out = chain.to_dict()
    out["certified"] = fenchel_nielsen.certify_chain(chain).to_dict()
    return out


def cmd_chen(payload, args) -> Any:
    chen = step_invariants.chen_ranks(parse_signature(payload))
    out = chen.to_dict()
    out["affineness_equation"] = step_invariants.affineness_equation(chen)
    return out


def cmd_check_3step(payload, args) -> Any:
    s = parse_signature(payload)
    torsion = step_invariants.metabelian_torsion_free(s)
    return {
        "signature": s.to_dict(),
        "derived_length_upto3": step_invariants.derived_length_upto3(s),
        "hyperbolic_3step": step_invariants.hyperbolic_3step_check(s),
        "metabelian_torsion_free": torsion.torsion_free,
        "witness": torsion.witness,
        "m_delta_upper_bound": fenchel_nielsen.m_delta_upper_bound(s),
    }


def cmd_dm_chi(payload, args) -> Any:
    rig = parse_signature(_field(payload, "rigidified"))
    order = _int(_field(payload, "generic_inertia_order", 1), "generic_inertia_order")
    return sg.format_rational(sg.dm_euler_characteristic(sg.DMCurveData(rig, order)))


def cmd_scan(payload, args) -> List[Any]:
    bounds = scanning.ScanBounds(
        _int(_field(payload, "g_max"), "g_max"),
        _int(_field(payload, "r_max"), "r_max"),
        _int(_field(payload, "k_max"), "k_max"),
        _int(_field(payload, "n_max"), "n_max"),
    )
    checks = _field(payload, "checks", [])
    if not isinstance(checks, list) or not all(isinstance(c, str) for c in checks):
        raise InvalidPayload("checks must be a list of names")
    return [summ.to_dict() for summ in scanning.scan(bounds, checks, args.ceiling)]


COMMANDS: Dict[str, Callable[[Any, argparse.Namespace], Any]] = {
    "chi": cmd_chi,
    "classify": cmd_classify,
    "ab": cmd_ab,
    "report": cmd_report,
    "table": cmd_table,
    "tower": cmd_tower,
    "induced": cmd_induced,
    "homs": cmd_homs,
    "fn-chain": cmd_fn_chain,
    "cusp-grow": cmd_cusp_grow,
    "chen": cmd_chen,
    "check-3step": cmd_check_3step,
    "dm-chi": cmd_dm_chi,
    "scan": cmd_scan,
}
LINE_ORIENTED = {"scan"}  # one result per line


class _Parser(argparse.ArgumentParser):
    """Turns argparse failures into validation errors so they get a JSON document."""

    def error(self, message: str):
        raise InvalidPayload(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fenchel", description="Exact computations with orbifold signatures.")
    p.add_argument("command", help=", ".join(sorted(COMMANDS)))
    p.add_argument("payload", nargs="?", help="inline JSON payload")
    p.add_argument("--input", metavar="FILE", help="read the JSON payload from FILE")
    p.add_argument("--depth", type=int, default=tower.DEFAULT_DEPTH)
    p.add_argument("--degree-bound", type=int, default=covers.DEFAULT_DEGREE_BOUND)
    p.add_argument("--order-bound", type=int, default=covers.DEFAULT_ORDER_BOUND)
    p.add_argument("--ceiling", type=int, default=None,
                   help="search ceiling (enumeration candidates, or scan size)")
    return p


def _error(exc: BaseException, message: Optional[str] = None) -> str:
    return dumps({"error": type(exc).__name__, "message": message if message is not None else str(exc)})


def run(argv: Optional[List[str]] = None, out=None) -> int:
    out = out or sys.stdout
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)  # genera of deep covers can be huge
    try:
        args = build_parser().parse_intermixed_args(argv)
        if args.command not in COMMANDS:
            raise UnknownCommand(f"unknown command {args.command!r}; known: {sorted(COMMANDS)}")
        if args.ceiling is None:
            args.ceiling = scanning.DEFAULT_CEILING if args.command == "scan" else covers.DEFAULT_SEARCH_CEILING
        if args.input and args.payload:
            raise InvalidPayload("give either an inline payload or --input, not both")
        if args.input:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = args.payload
        if text is None:
            if args.command != "table":
                raise InvalidPayload(f"{args.command} needs a JSON payload")
            payload = None
        else:
            try:
                payload = json.loads(text)
            except json.JSONDecodeError as exc:
                raise InvalidPayload(f"payload is not valid JSON: {exc}") from None
        result = COMMANDS[args.command](payload, args)
    except ValidationError as exc:
        print(_error(exc), file=out)
        return EXIT_INVALID
    except OSError as exc:
        print(_error(InvalidPayload(), f"cannot read input: {exc}"), file=out)
        return EXIT_INVALID
    except FenchelError as exc:
        print(_error(exc), file=out)
        return EXIT_DOMAIN
    if args.command in LINE_ORIENTED:
        for item in result:
            print(dumps(item), file=out)
    else:
        print(dumps(result), file=out)
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
