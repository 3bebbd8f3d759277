"""Command-line front end. Every command prints one JSON document.

Exit codes: 0 success, 1 a verification failed or two counting algorithms
disagreed, 2 bad input, 3 an instance exceeded a size guard.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .errors import CapExceeded, OrbitAtlasError, TooLarge
from .field import field_new, format_rational
from .incidence import check_transform, solve_epsilon
from .orbits import (DEFAULT_CAP, FlagVariety, GroupSpec, Grassmannian, burnside_count,
                     group_closure, orbit_count, verify_flag_theorems, verify_grassfin)
from .partitions import (conjugate, dominance_geq, q_binomial, q_multinomial, raising,
                         raising_witness, sort_to_partition)
from .skeleton import fixed_flag_dim, parse_skeleton, verify_all_skeletons
from .subspaces import enumerate_flags, enumerate_subspaces

SPEC_KEYS = {"p", "n", "generators"}


class InputError(Exception):
    pass


def _ints(text):
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError as exc:
        raise InputError(f"expected comma separated integers, got {text!r}") from exc


def load_spec(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read spec {path}: {exc}") from exc
    if not isinstance(data, dict) or set(data) != SPEC_KEYS:
        raise InputError(f"spec must be an object with exactly the keys {sorted(SPEC_KEYS)}")
    try:
        return GroupSpec.from_dict(data)
    except (TypeError, ValueError) as exc:
        raise InputError(f"invalid spec: {exc}") from exc


def _space(args, n):
    if args.grass is not None:
        if not 0 <= args.grass <= n:
            raise InputError(f"--grass must be between 0 and {n}")
        return Grassmannian(args.grass)
    comp = _ints(args.flag)
    if sum(comp) != n or any(a < 0 for a in comp):
        raise InputError(f"--flag terms must be naturals summing to n={n}")
    return FlagVariety(comp)


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def cmd_orbits(args):
    spec = load_spec(args.spec)
    space = _space(args, spec.n)
    report = orbit_count(spec, space)
    try:
        closure = group_closure(spec, args.cap)
        burnside = burnside_count(spec, space, closure=closure)
        agreement = burnside == report.orbit_count
    except CapExceeded:
        closure, burnside, agreement = None, None, None
    out = {
        "orbit_count": report.orbit_count,
        "orbit_sizes": list(report.orbit_sizes),
        "burnside_count": burnside,
        "agreement": agreement,
        "group_order": None if closure is None else closure.order,
        "space": str(space),
    }
    return out, 1 if agreement is False else 0


def cmd_verify(args):
    if args.all_skeletons is not None:
        failures = verify_all_skeletons(args.all_skeletons)
        checks = {name: not bad for name, bad in failures.items()}
        out = {"n": args.all_skeletons, "checks": checks,
               "failures": _json_safe(failures), "passed": all(checks.values())}
        return out, 0 if out["passed"] else 1
    if args.spec is None:
        raise InputError("verify needs a spec file or --all-skeletons N")
    spec = load_spec(args.spec)
    grass = verify_grassfin(spec, args.cap)
    flags = verify_flag_theorems(spec, args.cap)
    out = {
        "n": spec.n,
        "p": spec.p,
        "checks": {
            "grassmannian_duality": not grass["duality_violations"],
            "grassmannian_monotonicity": not grass["monotonicity_violations"],
            "grassmannian_agreement": grass["agreement"],
            "flag_permutation_invariance": not flags["permutation_violations"],
            "flag_dominance_monotonicity": not flags["monotonicity_violations"],
            "flag_agreement": not flags["disagreements"],
        },
        "grassmannian": _json_safe(grass),
        "flags": _json_safe(flags),
    }
    out["passed"] = all(out["checks"].values())
    return out, 0 if out["passed"] else 1


def cmd_partition(args):
    if args.action == "witness":
        mu, lam = _ints(args.from_), _ints(args.to)
        r = max(len(mu), len(lam))
        w = raising_witness(mu + (0,) * (r - len(mu)), lam + (0,) * (r - len(lam)))
        return {"from": list(mu), "to": list(lam),
                "witness": None if w is None else list(w)}, 0
    if args.action == "dominates":
        lhs, rhs = _ints(args.lhs), _ints(args.rhs)
        return {"lhs": list(lhs), "rhs": list(rhs), "dominates": dominance_geq(lhs, rhs)}, 0
    if args.action == "conjugate":
        lam = sort_to_partition(_ints(args.of))
        return {"partition": list(lam), "conjugate": list(conjugate(lam))}, 0
    if args.action == "raise":
        lam = _ints(args.of)
        return {"partition": list(lam), "i": args.i, "result": list(raising(args.i, lam))}, 0
    raise InputError(f"unknown partition action {args.action}")


def cmd_incidence(args):
    field_new(args.p)
    eps = solve_epsilon(args.n, args.r, args.k, args.p)
    ok = check_transform(args.n, args.r, args.k, args.p)
    out = {"A": eps.A, "epsilon": [format_rational(e) for e in eps.coefficients],
           "identity_check": ok}
    return out, 0 if ok else 1


def cmd_fixed_dim(args):
    s = parse_skeleton(args.blocks)
    comp = _ints(args.comp)
    return {"skeleton": str(s), "composition": list(comp), "dim": fixed_flag_dim(s, comp)}, 0


def cmd_enumerate(args):
    field_new(args.p)
    if args.flag is not None:
        comp = _ints(args.flag)
        points = enumerate_flags(comp, args.p)
        out = {"composition": list(comp), "p": args.p, "count": len(points),
               "q_multinomial": q_multinomial(comp, args.p)}
        if args.list:
            out["points"] = [[[list(r) for r in s.rows] for s in f.chain] for f in points]
        return out, 0
    if args.n is None or args.k is None:
        raise InputError("enumerate needs --n and --k, or --flag")
    points = enumerate_subspaces(args.n, args.k, args.p)
    out = {"n": args.n, "k": args.k, "p": args.p, "count": len(points),
           "q_binomial": q_binomial(args.n, args.k, args.p)}
    if args.list:
        out["points"] = [[list(r) for r in s.rows] for s in points]
    return out, 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser():
    env_cap = os.environ.get("ORBIT_ATLAS_CAP")
    default_cap = int(env_cap) if env_cap else DEFAULT_CAP
    parser = _Parser(prog="orbit-atlas", description=__doc__.splitlines()[0])
    parser.add_argument("--json-indent", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("orbits", help="count orbits on a Grassmannian or flag variety")
    p.add_argument("spec")
    sel = p.add_mutually_exclusive_group(required=True)
    sel.add_argument("--grass", type=int)
    sel.add_argument("--flag")
    p.add_argument("--cap", type=int, default=default_cap)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("verify", help="check the orbit-count and skeleton theorems")
    p.add_argument("spec", nargs="?")
    p.add_argument("--all-skeletons", type=int)
    p.add_argument("--cap", type=int, default=default_cap)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("partition", help="partition calculus")
    p.add_argument("action", choices=["witness", "dominates", "conjugate", "raise"])
    p.add_argument("--from", dest="from_")
    p.add_argument("--to")
    p.add_argument("--lhs")
    p.add_argument("--rhs")
    p.add_argument("--of")
    p.add_argument("--i", type=int)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("incidence", help="intersection-count matrix and inverse transform")
    for name in ("n", "r", "k", "p"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_incidence)

    p = sub.add_parser("fixed-dim", help="fixed-locus dimension from a skeleton")
    p.add_argument("--blocks", nargs="+", required=True)
    p.add_argument("--comp", required=True)
    p.set_defaults(func=cmd_fixed_dim)

    p = sub.add_parser("enumerate", help="list subspaces or flags")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--flag")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        out, code = args.func(args)
    except (TooLarge, CapExceeded) as exc:
        print(f"orbit-atlas: {exc}", file=sys.stderr)
        return 3
    except (InputError, OrbitAtlasError, ValueError, TypeError) as exc:
        print(f"orbit-atlas: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - report, never traceback
        print(f"orbit-atlas: internal error: {exc!r}", file=sys.stderr)
        return 1
    if args.json_indent is None:
        text = json.dumps(out, separators=(",", ":"))
    else:
        text = json.dumps(out, indent=args.json_indent)
    print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
