"""Batch command line interface.

Subcommands map one-to-one onto library operations and emit
machine-readable reports (json by default, text or csv on request).
Exit codes: 0 success, 1 a mathematical invariant failed, 2 usage or
parse errors.
"""

from __future__ import annotations

import argparse
import ast
import json
import sys

from . import deform, level, moduli
from .base_ring import AField, BaseIdeal, parse_base_poly
from .drinfeld_modules import (
    DrinfeldModule,
    base_change,
    height_at_characteristic,
    j_invariant,
    splitting_field,
    torsion_structure,
)
from .fields import make_field, parse_field
from .isogeny import TorsionSubmodule, kernel_polynomial, quotient_by, verify_isogeny

SCHEMA_VERSION = 1


class UsageError(Exception):
    pass


def _prime_power(q: int):
    if q < 2:
        raise UsageError(f"q={q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    e = 0
    n = q
    while n % p == 0:
        n //= p
        e += 1
    if n != 1:
        raise UsageError(f"q={q} is not a prime power")
    return p, e


def _session_field(args):
    if getattr(args, "field", None):
        try:
            K = parse_field(args.field)
        except ValueError as exc:
            raise UsageError(f"bad --field (at {args.field!r}): {exc}") from exc
        if args.q and K.q != args.q:
            raise UsageError(f"--field has q={K.q} but --q={args.q}")
        return K
    if not args.q:
        raise UsageError("--q is required when --field is not given")
    p, e = _prime_power(args.q)
    return make_field(p, e)


def _parse_value(text, what):
    try:
        return ast.literal_eval(text)
    except (ValueError, SyntaxError) as exc:
        raise UsageError(f"cannot parse {what} at {text!r}: {exc}") from exc


def _element(K, raw, what):
    try:
        return K.element(raw)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"bad {what} {raw!r} for {K}: {exc}") from exc


def _module(args):
    K = _session_field(args)
    gamma = _element(K, _parse_value(args.gamma, "--gamma"), "--gamma")
    coeff_raw = _parse_value(args.a, "--a")
    if not isinstance(coeff_raw, list) or not coeff_raw:
        raise UsageError(f"--a must be a nonempty list, got {args.a!r}")
    coeffs = [_element(K, c, "--a entry") for c in coeff_raw]
    try:
        return DrinfeldModule(AField(K, gamma), coeffs)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _ideal(text, base, what="ideal"):
    try:
        gen = parse_base_poly(text, base)
        return BaseIdeal(gen)
    except ValueError as exc:
        raise UsageError(f"bad {what} at {text!r}: {exc}") from exc


def _extension_of(E, n, args):
    if args.extension == "auto":
        return splitting_field(E, n, cap=args.cap)
    try:
        deg = int(args.extension)
    except ValueError as exc:
        raise UsageError(f"--extension must be an integer or 'auto'") from exc
    return E.field.extension(deg)


# ---------------------------------------------------------------------------
# Output


def _flatten(prefix, value, rows):
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, (list, tuple)):
        rows.append((prefix, json.dumps(value)))
    else:
        rows.append((prefix, value))


def emit(report: dict, args) -> None:
    fmt = args.format
    if fmt == "json":
        text = json.dumps(report, indent=2, default=str)
    elif fmt == "csv":
        rows = []
        _flatten("", report, rows)
        text = "\n".join(f"{k},{v}" for k, v in rows)
    else:
        rows = []
        _flatten("", report, rows)
        width = max((len(k) for k, _ in rows), default=0)
        text = "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# Commands


def cmd_classify(args) -> int:
    E = _module(args)
    report = {
        "schema": f"drinfeld.classify/{SCHEMA_VERSION}",
        "produced_by": "height_at_characteristic",
        "rank": E.rank,
        "characteristic": str(E.characteristic.gen),
        "h": height_at_characteristic(E),
    }
    if E.rank == 2:
        report["class"] = "supersingular" if report["h"] == 0 else "ordinary"
        report["j"] = list(j_invariant(E).coeffs)
    emit(report, args)
    return 0


def cmd_torsion(args) -> int:
    E = _module(args)
    n = _ideal(args.ideal, E.base)
    L = _extension_of(E, n, args)
    try:
        tm = torsion_structure(E, n, L)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = {
        "schema": f"drinfeld.torsion/{SCHEMA_VERSION}",
        "produced_by": "torsion_structure",
        "ideal": str(n.gen),
        "field_degree_over_q": L.k,
        "dimension": tm.dimension,
        "points": tm.point_count(),
        "invariant_factors": [str(i.gen) for i in tm.invariant_factors],
        "basis": [list(b.coeffs) for b in tm.basis],
        "t_action": [[list(c.coeffs) for c in row] for row in tm.t_action],
    }
    emit(report, args)
    return 0


def cmd_quotient(args) -> int:
    E = _module(args)
    L = E.field.extension(args.points_extension) if args.points_extension > 1 else E.field
    raw_pts = _parse_value(args.kernel_points, "--kernel-points")
    if not isinstance(raw_pts, list):
        raise UsageError("--kernel-points must be a list of coefficient lists")
    pts = [_element(L, p, "kernel point") for p in raw_pts]
    mult = args.mult
    if mult.startswith("q^"):
        exponent = int(mult[2:])
    else:
        value = int(mult)
        exponent = 0
        while E.q**exponent < value:
            exponent += 1
        if E.q**exponent != value:
            raise UsageError(f"--mult {value} is not a power of q={E.q}")
    try:
        H = TorsionSubmodule(E, L, pts, local_exponent=exponent)
    except ValueError as exc:
        raise UsageError(f"invalid kernel: {exc}") from exc
    F, iso = quotient_by(E, H)
    ok = verify_isogeny(iso)
    report = {
        "schema": f"drinfeld.quotient/{SCHEMA_VERSION}",
        "produced_by": "quotient_by",
        "target": {
            "gamma": list(F.afield.t_image.coeffs),
            "a": [list(c.coeffs) for c in F.coeffs],
        },
        "xi": [list(c.coeffs) for c in iso.xi.coeffs],
        "checks": {
            "verified": ok,
            "kernel_order": H.order,
            "xi_rank": iso.degree_rank(),
        },
    }
    emit(report, args)
    return 0 if ok else 1


def cmd_levels(args) -> int:
    E = _module(args)
    n = _ideal(args.ideal, E.base)
    L = _extension_of(E, n, args)
    EL = E if L == E.field else base_change(E, L)
    report = {
        "schema": f"drinfeld.levels/{SCHEMA_VERSION}",
        "produced_by": "enumerate_gamma0/enumerate_gamma1/enumerate_gamma_full",
        "ideal": str(n.gen),
        "field_degree_over_q": L.k,
    }
    kinds = [args.kind] if args.kind != "all" else ["gamma0", "gamma1", "gamma_full"]
    for kind in kinds:
        if kind == "gamma0":
            structures = level.enumerate_gamma0(EL, n, L)
            report["gamma0"] = {
                "count": len(structures),
                "structures": [s.to_json() for s in structures],
            }
        elif kind == "gamma1":
            structures = level.enumerate_gamma1(EL, n, L)
            report["gamma1"] = {
                "count": len(structures),
                "generators": [list(s.generator.coeffs) for s in structures],
            }
        else:
            structures = level.enumerate_gamma_full(EL, n, L)
            report["gamma_full"] = {
                "count": len(structures),
                "bases": [
                    [list(s.pair[0].coeffs), list(s.pair[1].coeffs)] for s in structures
                ],
            }
    emit(report, args)
    return 0


def cmd_ihara(args) -> int:
    if not args.q:
        raise UsageError("--q is required")
    p_prime, e = _prime_power(args.q)
    base = make_field(p_prime, e)
    p = _ideal(args.p, base, "--p")
    n = _ideal(args.n, base, "--n")
    if not p.is_prime():
        raise UsageError(f"--p {args.p!r} is not prime")
    try:
        rep = moduli.ihara_report(n, p, genus=args.genus)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    out = rep.to_json(verbose=args.verbose)
    out["schema"] = f"drinfeld.ihara/{SCHEMA_VERSION}"
    out["produced_by"] = "ihara_report"
    emit(out, args)
    if rep.S > rep.N2:
        return 1
    if args.genus is not None and not rep.passed:
        return 1
    return 0


def cmd_verify_graphs(args) -> int:
    if not args.q:
        raise UsageError("--q is required")
    p_prime, e = _prime_power(args.q)
    base = make_field(p_prime, e)
    p = _ideal(args.p, base, "--p")
    n = _ideal(args.n, base, "--n")
    try:
        rep = moduli.verify_reduction_is_union_of_graphs(n, p)
    except ValueError as exc:
        report = {
            "schema": f"drinfeld.verify-graphs/{SCHEMA_VERSION}",
            "produced_by": "verify_reduction_is_union_of_graphs",
            "all_on_union": False,
            "error": str(exc),
        }
        emit(report, args)
        return 1
    rep["schema"] = f"drinfeld.verify-graphs/{SCHEMA_VERSION}"
    rep["produced_by"] = "verify_reduction_is_union_of_graphs"
    if not args.verbose:
        rep.pop("triples")
    emit(rep, args)
    return 0


def cmd_deform_check(args) -> int:
    E = _module(args)
    try:
        rep = deform.check_char_lifts(args.kind, E)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = {
        "schema": f"drinfeld.deform-check/{SCHEMA_VERSION}",
        "produced_by": "check_char_lifts",
        "kind": rep["kind"],
        "supersingular": rep["supersingular"],
        "bases": rep["bases"],
        "base_kinds": rep["base_kinds"],
        "matches": rep["matches"],
        "observed_summary": _stringify_keys(rep["observed_summary"]),
        "expected_summary": _stringify_keys(rep["expected_summary"]),
    }
    emit(report, args)
    return 0 if rep["matches"] else 1


def _stringify_keys(obj):
    if isinstance(obj, dict):
        return {str(k): _stringify_keys(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify_keys(v) for v in obj]
    return obj


# ---------------------------------------------------------------------------
# Argument plumbing


def _read_config(path):
    out = {}
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise UsageError(
                        f"{path}:{lineno}: expected key=value, got {line!r}"
                    )
                k, v = line.split("=", 1)
                out[k.strip()] = v.strip()
    except OSError as exc:
        raise UsageError(f"cannot read config {path!r}: {exc}") from exc
    return out


def _add_common(sub, module_args=True):
    sub.add_argument("--q", type=int, default=None, help="base cardinality q = p^e")
    sub.add_argument("--field", default=None, help="field description 'p=.. deg=.. mod=[..] ext=..'")
    sub.add_argument("--config", default=None, help="key=value config file")
    sub.add_argument("--format", choices=["json", "text", "csv"], default="json")
    sub.add_argument("--out", default=None, help="write the report to a file")
    sub.add_argument("--seed", type=int, default=0, help="seed echoed into reports")
    sub.add_argument("--cap", type=int, default=36, help="extension-degree budget over F_q")
    if module_args:
        sub.add_argument("--gamma", required=True, help="image of T, e.g. 0 or [0,1]")
        sub.add_argument("--a", required=True, help="coefficient list, e.g. [1,1]")


def build_parser():
    ap = argparse.ArgumentParser(
        prog="drinfeld",
        description="Exact computations with Drinfeld modules over F_q[T]",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="rank, height, ordinary/supersingular, j")
    _add_common(s)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("torsion", help="torsion module structure over an extension")
    _add_common(s)
    s.add_argument("--ideal", required=True, help="ideal generator, e.g. T^2+T+1")
    s.add_argument("--extension", default="auto", help="extension degree over K, or 'auto'")
    s.set_defaults(func=cmd_torsion)

    s = sub.add_parser("quotient", help="quotient by a finite submodule")
    _add_common(s)
    s.add_argument("--kernel-points", required=True, help="list of points, e.g. [[0],[1]]")
    s.add_argument("--mult", default="q^0", help="local multiplicity at 0, e.g. q^1")
    s.add_argument("--points-extension", type=int, default=1, help="extension degree the points live in")
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("levels", help="level-structure counts and listings")
    _add_common(s)
    s.add_argument("--ideal", required=True)
    s.add_argument("--kind", choices=["gamma0", "gamma1", "gamma_full", "all"], default="gamma0")
    s.add_argument("--extension", default="auto")
    s.set_defaults(func=cmd_levels)

    s = sub.add_parser("ihara", help="point-count report for X_0(n) mod p")
    _add_common(s, module_args=False)
    s.add_argument("--p", required=True, help="reduction prime, e.g. T")
    s.add_argument("--n", required=True, help="level ideal coprime to p, e.g. T+1")
    s.add_argument("--genus", type=int, default=None)
    s.add_argument("--verbose", action="store_true", help="include the point list")
    s.set_defaults(func=cmd_ihara)

    s = sub.add_parser("verify-graphs", help="check the reduction is the union of the two Frobenius graphs")
    _add_common(s, module_args=False)
    s.add_argument("--p", required=True)
    s.add_argument("--n", required=True)
    s.add_argument("--verbose", action="store_true")
    s.set_defaults(func=cmd_verify_graphs)

    s = sub.add_parser("deform-check", help="exhaustive dual-number lift tables")
    _add_common(s)
    s.add_argument("--kind", choices=["gamma_full", "gamma1", "gamma0"], required=True)
    s.set_defaults(func=cmd_deform_check)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.config:
            cfg = _read_config(args.config)
            if "q" in cfg and args.q is None:
                args.q = int(cfg["q"])
            if "field" in cfg and args.field is None:
                args.field = cfg["field"]
            if "format" in cfg and args.format == "json":
                args.format = cfg["format"]
            if "seed" in cfg:
                args.seed = int(cfg["seed"])
            if "cap" in cfg:
                args.cap = int(cfg["cap"])
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
