"""padic-lattes command line.

Exit codes: 0 when every check passes, 1 on a failed check, 2 on a usage,
parse or domain error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import general as gen
from . import legendre as leg
from . import suites
from . import weierstrass as wei
from .errors import DomainError, ParseError
from .exact.text import parse_poly, parse_rat
from .padic import check_prime, newton_report, root_valuations, val_of
from .reports import build_report, jsonable, report_csv, report_json

FAMILIES = ("weierstrass", "legendre", "general")
DEFAULT_CAPS = {"weierstrass": 5, "legendre": 3, "general": 4}
ENV_CAP = "PADIC_LATTES_LEVEL_CAP"


class UsageError(Exception):
    pass


def level_cap(args, family: str) -> int:
    if args.level_cap is not None:
        return args.level_cap
    env = os.environ.get(ENV_CAP)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_CAP} must be an integer, got {env!r}")
    return DEFAULT_CAPS[family]


def _check_level(args, family: str, n: int) -> None:
    cap = level_cap(args, family)
    if n < 1:
        raise UsageError("--level must be >= 1")
    if n > cap:
        raise UsageError(f"--level {n} exceeds the {family} cap {cap}; pass --level-cap to raise it")


def _params(args) -> gen.GenFamilyParams:
    if args.d is None or args.p is None:
        raise UsageError("--family general needs --d and --p")
    return gen.GenFamilyParams(args.d, args.p)


# ---------------------------------------------------------------------------
# subcommands; each returns (payload, ok)


def cmd_newton(args):
    p = check_prime(args.prime)
    f = parse_poly(args.poly)
    if f.is_zero():
        raise DomainError("the zero polynomial has no Newton polygon")
    rep = newton_report(f, p)
    total = sum(e["multiplicity"] for e in rep["spectrum"])
    return rep, total == f.degree - f.ord0


def cmd_orbit(args):
    lam, seed = parse_rat(args.lam), parse_rat(args.seed)
    if args.family == "weierstrass":
        rec = wei.weierstrass_orbit(lam, seed, args.max_steps)
    elif args.family == "legendre":
        rec = leg.legendre_orbit(lam, seed, args.max_steps)
    else:
        rec = gen.gen_orbit(_params(args), lam, seed, args.max_steps)
    out = {"family": args.family, "lambda": str(lam)}
    out.update(rec.to_dict())
    return out, True


def cmd_torsion(args):
    seed = parse_rat(args.seed)
    _check_level(args, args.family, args.level)
    n = args.level
    if args.family == "weierstrass":
        tp = wei.torsion_pair(seed, n)
        p, extra = 2, {}
    elif args.family == "legendre":
        tp = leg.legendre_torsion_pair(seed, n)
        p, extra = 2, {"cancelled": str(tp.cancelled)}
    else:
        params = _params(args)
        tp = gen.gen_torsion_pair(params, seed, n)
        p, extra = params.p, {"d": params.d, "p": params.p,
                              "cancellations": [[k, str(g)] for k, g in tp.cancellations]}
    out = {
        "family": args.family, "seed": str(seed), "n": n, "prime": p,
        "A": str(tp.A), "B": str(tp.B),
        "degrees": [tp.A.degree, tp.B.degree],
        "spectrum_A": root_valuations(tp.A, p).to_dict()["spectrum"] if tp.A.degree > 0 else [],
        "spectrum_B": root_valuations(tp.B, p).to_dict()["spectrum"] if tp.B.degree > 0 else [],
    }
    out.update(extra)
    return out, True


def cmd_classify(args):
    if args.alpha is not None and args.lam is not None:
        alpha, lam = parse_rat(args.alpha), parse_rat(args.lam)
        cls = wei.classify_parameter(alpha, lam)
        out = {"alpha": str(alpha), "lambda": str(lam),
               "v_alpha": jsonable(val_of(alpha, 2)), "v_lambda": jsonable(val_of(lam, 2))}
    elif args.v_alpha is not None and args.v_lambda is not None:
        va, vl = parse_rat(args.v_alpha), parse_rat(args.v_lambda)
        cls = wei.trichotomy_classify(va, vl)
        out = {"v_alpha": str(va), "v_lambda": str(vl)}
    else:
        raise UsageError("give --alpha and --lambda, or --v-alpha and --v-lambda")
    out["class"] = str(cls)
    return out, True


def cmd_intersect(args):
    a, b = parse_rat(args.a), parse_rat(args.b)
    _check_level(args, args.family, args.level)
    if args.family == "weierstrass":
        rep = wei.intersection_report(a, b, args.level)
        return rep.to_dict(), rep.all_verified
    if args.family == "general":
        rep = gen.disjointness_check(_params(args), a, b, args.level)
        return rep.to_dict(), True
    raise UsageError("intersect supports --family weierstrass or general")


def cmd_verify(args):
    cap = args.level_cap
    if cap is None and os.environ.get(ENV_CAP):
        cap = level_cap(args, "weierstrass")
    if cap is None:
        cap = suites.DEFAULT_LEVEL_CAP
    start = time.perf_counter()
    records = suites.run_suite(args.suite, cap)
    wall = None if args.omit_wall_time else time.perf_counter() - start
    report = build_report(records, wall)
    return report, report["summary"]["failures"] == 0


# ---------------------------------------------------------------------------


def _flat_csv(payload: dict) -> str:
    lines = ["key,value"]
    for k in sorted(payload):
        v = payload[k]
        text = v if isinstance(v, str) else json.dumps(jsonable(v), sort_keys=True)
        lines.append(f"{k},\"{text.replace(chr(34), chr(34) * 2)}\"")
    return "\n".join(lines) + "\n"


def render(payload: dict, fmt: str, is_report: bool) -> str:
    if fmt == "csv":
        return report_csv(payload) if is_report else _flat_csv(payload)
    return report_json(jsonable(payload))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--level-cap", type=int, default=None, help="override the per-family level cap")

    ap = argparse.ArgumentParser(prog="padic-lattes", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("newton", parents=[common], help="Newton polygon and root-valuation spectrum")
    s.add_argument("--prime", type=int, required=True)
    s.add_argument("--poly", required=True)
    s.set_defaults(func=cmd_newton)

    def family_flags(s, default="weierstrass"):
        s.add_argument("--family", choices=FAMILIES, default=default)
        s.add_argument("--d", type=int, help="degree for the general family")
        s.add_argument("--p", type=int, help="prime for the general family")

    s = sub.add_parser("orbit", parents=[common], help="exact orbit of a seed")
    family_flags(s)
    s.add_argument("--lambda", dest="lam", required=True)
    s.add_argument("--seed", required=True)
    s.add_argument("--max-steps", type=int, default=12)
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("torsion", parents=[common], help="torsion pair A_n, B_n of a seed")
    family_flags(s)
    s.add_argument("--seed", required=True)
    s.add_argument("--level", type=int, required=True)
    s.set_defaults(func=cmd_torsion)

    s = sub.add_parser("classify", parents=[common], help="2-adic trichotomy class")
    s.add_argument("--alpha")
    s.add_argument("--lambda", dest="lam")
    s.add_argument("--v-alpha")
    s.add_argument("--v-lambda")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("intersect", parents=[common], help="common torsion parameters of two seeds")
    family_flags(s)
    s.add_argument("--a", required=True)
    s.add_argument("--b", required=True)
    s.add_argument("--level", type=int, required=True)
    s.set_defaults(func=cmd_intersect)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("--suite", choices=("all",) + tuple(suites.SUITES), default="all")
    s.add_argument("--omit-wall-time", action="store_true", help="leave wall_time out of the summary")
    s.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        payload, ok = args.func(args)
    except (ParseError, DomainError, UsageError) as exc:
        print(f"padic-lattes: error: {exc}", file=sys.stderr)
        return 2
    text = render(payload, args.format, args.command == "verify")
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
