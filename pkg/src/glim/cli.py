"""Command-line front end: descriptor files in, verdicts with certificates out.

Exit codes: 0 = yes/success, 1 = no, 2 = usage/validation error, 3 = unknown
(budget exhausted).  JSON output is canonical: UTF-8, sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .abelian import FinAbGroup, subgroup_basis
from .divalg import DivisionClass, bicharacter_from_generator_data, brauer_mul
from .groupring import GroupRingElem
from .limits import (
    DEFAULT_BUDGET,
    DEFAULT_PRIME_BUDGET,
    LimitDescriptor,
    TriBool,
    elem_payload,
    iso_elementary,
    iso_general,
    k0_realization,
    orbit_payload,
    standard_form,
    support_invariants,
    verify_absorbs_certificate,
    verify_general_iso_certificate,
    verify_iso_certificate,
)
from . import limits as _limits
from . import oracle as _oracle


class DescriptorError(ValueError):
    """A parse or validation error, annotated with the offending key path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _parse_label(group: FinAbGroup, payload, path: str) -> GroupRingElem:
    if not isinstance(payload, list) or not payload:
        raise DescriptorError(path, "label must be a nonempty list of terms")
    data = {}
    for i, term in enumerate(payload):
        tpath = f"{path}[{i}]"
        if not isinstance(term, dict) or "elem" not in term or "mult" not in term:
            raise DescriptorError(tpath, "term must have 'elem' and 'mult'")
        coords = term["elem"]
        if not isinstance(coords, list) or len(coords) != len(group.factors):
            raise DescriptorError(
                f"{tpath}.elem", f"expected {len(group.factors)} coordinates"
            )
        mult = term["mult"]
        if not isinstance(mult, int) or mult <= 0:
            raise DescriptorError(f"{tpath}.mult", "multiplicity must be a positive integer")
        g = group.element(tuple(coords))
        data[g] = data.get(g, 0) + mult
    z = GroupRingElem.from_dict(group, {g: Fraction(m) for g, m in data.items()})
    if z.is_zero:
        raise DescriptorError(path, "label must be nonzero")
    return z


def _parse_group(payload, path: str) -> FinAbGroup:
    if not isinstance(payload, list) or not payload:
        raise DescriptorError(path, "group must be a nonempty list of cyclic factors")
    if any(not isinstance(d, int) or d < 1 for d in payload):
        raise DescriptorError(path, "cyclic factors must be positive integers")
    return FinAbGroup(tuple(payload))


def _parse_division(group: FinAbGroup, payload, path: str) -> DivisionClass:
    for key in ("support_gens", "beta", "zeta_order"):
        if key not in payload:
            raise DescriptorError(path, f"missing key '{key}'")
    gens_raw = payload["support_gens"]
    if not isinstance(gens_raw, list):
        raise DescriptorError(f"{path}.support_gens", "expected a list of elements")
    gens = []
    for i, coords in enumerate(gens_raw):
        if not isinstance(coords, list) or len(coords) != len(group.factors):
            raise DescriptorError(
                f"{path}.support_gens[{i}]",
                f"expected {len(group.factors)} coordinates",
            )
        gens.append(group.element(tuple(coords)))
    zo = payload["zeta_order"]
    if not isinstance(zo, int) or zo < 1:
        raise DescriptorError(f"{path}.zeta_order", "must be a positive integer")
    try:
        bichar = bicharacter_from_generator_data(group, gens, payload["beta"], zo)
        return DivisionClass(bichar)
    except (ValueError, AssertionError) as exc:
        raise DescriptorError(f"{path}.beta", str(exc)) from exc


def parse_descriptor(payload: dict, path: str = "descriptor") -> LimitDescriptor:
    if not isinstance(payload, dict):
        raise DescriptorError(path, "expected a JSON object")
    for key in ("group", "x0", "cycle_labels"):
        if key not in payload:
            raise DescriptorError(path, f"missing key '{key}'")
    group = _parse_group(payload["group"], f"{path}.group")
    x0 = _parse_label(group, payload["x0"], f"{path}.x0")
    prefix = tuple(
        _parse_label(group, lbl, f"{path}.prefix_labels[{i}]")
        for i, lbl in enumerate(payload.get("prefix_labels", []))
    )
    cycle_raw = payload["cycle_labels"]
    if not isinstance(cycle_raw, list) or not cycle_raw:
        raise DescriptorError(f"{path}.cycle_labels", "at least one cycle label required")
    cycle = tuple(
        _parse_label(group, lbl, f"{path}.cycle_labels[{i}]")
        for i, lbl in enumerate(cycle_raw)
    )
    division = None
    if payload.get("division") is not None:
        division = _parse_division(group, payload["division"], f"{path}.division")
    return LimitDescriptor(group, x0, prefix, cycle, division)


def load_descriptor(path: str) -> LimitDescriptor:
    with open(path, encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DescriptorError(
                f"{path}:{exc.lineno}:{exc.colno}", exc.msg
            ) from exc
    return parse_descriptor(payload, path)


def load_division(path: str) -> DivisionClass:
    with open(path, encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DescriptorError(
                f"{path}:{exc.lineno}:{exc.colno}", exc.msg
            ) from exc
    if not isinstance(payload, dict) or "group" not in payload:
        raise DescriptorError(path, "division file needs a 'group' key")
    group = _parse_group(payload["group"], f"{path}.group")
    return _parse_division(group, payload, path)


def serialize_label(z: GroupRingElem) -> list[dict]:
    return elem_payload(z)


def serialize_division(d: DivisionClass) -> dict:
    gens, _orders, _ = subgroup_basis(d.support)
    return {
        "support_gens": [list(g.coords) for g in gens],
        "beta": [list(row) for row in d.bichar.matrix],
        "zeta_order": d.group.exponent,
    }


def serialize_descriptor(d: LimitDescriptor) -> dict:
    out = {
        "group": list(d.group.factors),
        "x0": serialize_label(d.x0),
        "prefix_labels": [serialize_label(a) for a in d.prefix],
        "cycle_labels": [serialize_label(a) for a in d.cycle],
    }
    if d.division is not None:
        out["division"] = serialize_division(d.division)
    return out


def _emit(payload: dict, as_json: bool):
    if as_json:
        print(json.dumps(payload, sort_keys=True, ensure_ascii=False))
    else:
        for key in sorted(payload):
            print(f"{key}: {json.dumps(payload[key], sort_keys=True)}")


_EXIT = {"yes": 0, "no": 1, "unknown": 3}


def cmd_standard_form(args) -> int:
    d = load_descriptor(args.file)
    sf = standard_form(d)
    s, s0 = support_invariants(d)
    payload = {
        "descriptor": serialize_descriptor(sf),
        "S": [orbit_payload(o) for o in sorted(s, key=lambda o: o.sort_key())],
        "S0": [orbit_payload(o) for o in sorted(s0, key=lambda o: o.sort_key())],
    }
    _emit(payload, args.json)
    return 0


def _verdict_exit(result: TriBool, args, payload_extra=None, checker=None) -> int:
    payload = {"verdict": result.verdict, "certificate": result.certificate}
    if payload_extra:
        payload.update(payload_extra)
    if args.check_certificate and result.is_certified:
        if checker is None:
            raise DescriptorError("certificate", "no replay available for this command")
        ok = checker(result)
        payload["certificate_ok"] = ok
        if not ok:
            _emit(payload, args.json)
            print("error: certificate failed to replay", file=sys.stderr)
            return 2
    _emit(payload, args.json)
    return _EXIT[result.verdict]


def cmd_iso(args) -> int:
    a = load_descriptor(args.file_a)
    b = load_descriptor(args.file_b)
    if a.group != b.group:
        raise DescriptorError("group", "descriptors are graded by different groups")
    if a.division is None and b.division is None:
        result = iso_elementary(
            a, b, args.budget, args.budget_primes, args.label_bound
        )
        checker = lambda r: verify_iso_certificate(a, b, r.verdict, r.certificate)
    else:
        result = iso_general(a, b, args.budget, args.budget_primes)
        checker = lambda r: verify_general_iso_certificate(
            a, b, r.verdict, r.certificate
        )
    return _verdict_exit(result, args, checker=checker)


def cmd_absorbs(args) -> int:
    d = load_descriptor(args.file)
    cls = load_division(args.division)
    if cls.group != d.group:
        raise DescriptorError("group", "division class over a different group")
    result = _limits.absorbs(d, cls, args.budget)
    checker = lambda r: verify_absorbs_certificate(d, cls, r.verdict, r.certificate)
    return _verdict_exit(result, args, checker=checker)


def cmd_brauer(args) -> int:
    if args.op == "mul":
        d1 = load_division(args.files[0])
        d2 = load_division(args.files[1])
        if d1.group != d2.group:
            raise DescriptorError("group", "division classes over different groups")
        e_class, y, h = brauer_mul(d1, d2)
        payload = {
            "E": serialize_division(e_class),
            "y": serialize_label(y),
            "H": [list(g.coords) for g in h.sorted_elements()],
        }
        _emit(payload, args.json)
        return 0
    if args.op == "inv":
        from .divalg import op_class

        d1 = load_division(args.files[0])
        _emit({"E": serialize_division(op_class(d1))}, args.json)
        return 0
    # equiv: two classes relative to a limit descriptor
    if len(args.files) < 3:
        raise DescriptorError("files", "equiv needs two division files and a descriptor")
    d1 = load_division(args.files[0])
    d2 = load_division(args.files[1])
    desc = load_descriptor(args.files[2])
    if d1.group != desc.group or d2.group != desc.group:
        raise DescriptorError("group", "inputs graded by different groups")
    from .divalg import brauer_equivalent
    from .limits import verify_absorbs_k0_certificate

    k0 = k0_realization(desc)
    result = brauer_equivalent(d1, d2, k0, args.budget)

    def checker(r):
        e_class, _y, _h = brauer_mul(d1, d2)
        return verify_absorbs_k0_certificate(k0, e_class, r.verdict, r.certificate)

    return _verdict_exit(result, args, checker=checker)


# every abelian group of order <= 16 except (Z2)^4, whose several thousand
# class pairs put it outside the interactive time budget of this command
_ORACLE_CATALOG = [
    (1,),
    (2,),
    (3,),
    (4,),
    (2, 2),
    (5,),
    (6,),
    (7,),
    (8,),
    (4, 2),
    (2, 2, 2),
    (9,),
    (3, 3),
    (10,),
    (11,),
    (12,),
    (6, 2),
    (13,),
    (14,),
    (15,),
    (16,),
    (8, 2),
    (4, 4),
    (4, 2, 2),
]


def cmd_oracle_check(args) -> int:
    failures: list[str] = []
    checked = []
    for factors in _ORACLE_CATALOG:
        group = FinAbGroup(factors)
        if group.order > args.max_group_order:
            continue
        checked.append(group)
        failures += _oracle.round_trip_failures(group)
        failures += _oracle.cross_validate_group(group)
    payload = {
        "groups_checked": [list(g.factors) for g in checked],
        "failures": failures,
        "ok": not failures,
    }
    _emit(payload, args.json)
    return 0 if not failures else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glim",
        description=(
            "Exact classification of direct limits of graded matrix algebras: "
            "standard forms, K-theory realizations, absorption and isomorphism "
            "verdicts with replayable certificates."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                       help="unrolled cycle periods to search (default 32)")
        p.add_argument("--budget-primes", type=int, default=DEFAULT_PRIME_BUDGET,
                       help="largest prime scaling invariant to test (default 13)")
        p.add_argument("--label-bound", type=int, default=0,
                       help="coefficient bound for extra candidate multipliers "
                            "in the isomorphism search (default 0: off)")
        p.add_argument("--check-certificate", action="store_true",
                       help="replay the certificate before reporting")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--text", dest="json", action="store_false",
                       help="human-readable output (default)")

    p = sub.add_parser("standard-form", help="canonicalize a descriptor, report S and S0")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.add_argument("--text", dest="json", action="store_false")
    p.set_defaults(func=cmd_standard_form)

    p = sub.add_parser("iso", help="decide isomorphism of two limits")
    p.add_argument("file_a")
    p.add_argument("file_b")
    common(p)
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("absorbs", help="decide absorption of a division algebra")
    p.add_argument("file")
    p.add_argument("--division", required=True, help="division class file")
    common(p)
    p.set_defaults(func=cmd_absorbs)

    p = sub.add_parser("brauer", help="graded Brauer arithmetic")
    p.add_argument("op", choices=["mul", "inv", "equiv"])
    p.add_argument("files", nargs="+")
    common(p)
    p.set_defaults(func=cmd_brauer)

    p = sub.add_parser("oracle-check", help="run the structure-constants cross-validation")
    p.add_argument("--max-group-order", type=int, default=4)
    p.add_argument("--json", action="store_true")
    p.add_argument("--text", dest="json", action="store_false")
    p.set_defaults(func=cmd_oracle_check)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DescriptorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
