"""Command-line front end.

Exit codes: 0 success, 1 verification negative, 2 usage or input error,
3 internal consistency failure.  JSON output has sorted keys and exact
rationals written as strings, so identical invocations are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import config
from .arith import fundamental_discriminant
from .bernoulli import QuadraticCharacter, bernoulli_number, chi_p, first_irregular_index, generalized_bernoulli
from .eisenstein import eis_deg1, eis_deg2
from .errors import CompletenessError, ConsistencyError
from .exact import check_prime, format_rational
from .hecke import level_vanishing_ok, up_theta_check, up_theta_decompose
from .padic import WeightTarget, verify_main_theorem, verify_up_fixed
from .qexpansion import QExpansion
from .quadforms.classes import enumerate_classes, genus_partition, load_gram
from .quadforms.invariants import character_discriminant, level
from .theta import theta_qexp

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _with_version(obj: dict) -> dict:
    out = dict(obj)
    out.setdefault("version", config.VERSION)
    return out


# --------------------------------------------------------------------------
# subcommand bodies: each returns (payload dict, exit code)
# --------------------------------------------------------------------------


def _qexp_payload(f: QExpansion, params: dict) -> dict:
    return _with_version({"params": params, "expansion": f.to_dict()})


def cmd_eisenstein(args):
    params = {"degree": args.degree, "weight": args.weight, "trace_bound": args.trace_bound, "route": args.route}
    if args.degree == 1:
        if args.route != "primitive":
            raise UsageError("--route applies to degree 2 only")
        f = eis_deg1(args.weight, args.trace_bound)
    else:
        f = eis_deg2(args.weight, args.trace_bound, route=args.route)
    return _qexp_payload(f, params), EXIT_OK


def cmd_theta(args):
    form = load_gram(args.gram)
    f = theta_qexp(form, args.degree, args.trace_bound)
    params = {"gram": form.base.to_json(), "degree": args.degree, "trace_bound": args.trace_bound}
    return _qexp_payload(f, params), EXIT_OK


def genus_payload(rank: int, det2: int, level_divides: int) -> dict:
    genera = genus_partition(enumerate_classes(rank, det2, level_divides))
    rows = []
    for g in genera:
        rows.append(
            {
                "classes": [{"twice_gram": c.form.base.to_json(), "epsilon": c.epsilon} for c in g.classes],
                "level": g.level,
                "character_discriminant": g.character_discriminant,
                "mass": format_rational(g.mass),
            }
        )
    return _with_version(
        {
            "params": {"rank": rank, "det2": det2, "level_divides": level_divides},
            "class_count": sum(len(g.classes) for g in genera),
            "genera": rows,
        }
    )


def cmd_genus(args):
    return genus_payload(args.rank, args.det2, args.level_divides), EXIT_OK


def _parse_chi(text: str) -> QuadraticCharacter:
    kind, _, value = text.partition(":")
    try:
        n = int(value)
    except ValueError:
        raise UsageError(f"bad character {text!r}; use p:P or d:D") from None
    if kind == "p":
        return chi_p(n)
    if kind == "d":
        return QuadraticCharacter.kronecker(n)
    raise UsageError(f"bad character {text!r}; use p:P or d:D")


def cmd_bernoulli(args):
    if args.k < 0:
        raise UsageError("--k must be nonnegative")
    if args.chi:
        chi = _parse_chi(args.chi)
        value = generalized_bernoulli(args.k, chi)
        label = chi.label()
    else:
        value = bernoulli_number(args.k)
        label = "trivial"
    return _with_version({"k": args.k, "chi": label, "value": format_rational(value)}), EXIT_OK


def cmd_regular(args):
    check_prime(args.p)
    idx = first_irregular_index(args.p)
    return _with_version({"p": args.p, "regular": idx is None, "first_irregular_index": idx}), EXIT_OK


def cmd_verify_main(args):
    report = verify_main_theorem(
        WeightTarget(args.k, args.j, args.p),
        args.degree,
        args.m,
        args.trace_bound,
        min_order=args.min_order,
        extra_periods=args.extra_periods,
    )
    return report.to_dict(), EXIT_OK if report.ok else EXIT_NEGATIVE


def cmd_verify_up(args):
    report = verify_up_fixed(
        WeightTarget(args.k, args.j, args.p),
        args.degree,
        args.m,
        args.trace_bound,
        min_order=args.min_order,
        extra_periods=args.extra_periods,
    )
    return report.to_dict(), EXIT_OK if report.ok else EXIT_NEGATIVE


def up_theta_forms(p: int, e: int) -> list:
    """Binary classes with level | p^e and the character of the discriminant -p."""
    forms = []
    for s in range(1, 2 * e + 1):
        for f in enumerate_classes(2, p**s, p**e):
            if fundamental_discriminant(character_discriminant(f.base)) == fundamental_discriminant(-p):
                forms.append(f)
    return forms


def up_theta_payload(p: int, e: int, degree: int, trace_bound: int):
    check_prime(p)
    if p == 2 or e < 1:
        raise UsageError("need an odd prime p and e >= 1")
    forms = up_theta_forms(p, e)
    if not forms:
        raise UsageError(f"no binary form of level dividing {p}^{e} has character disc {-p}")
    alpha, ordered = up_theta_decompose(forms, p)
    check = up_theta_check(ordered, alpha, p, degree, trace_bound)
    vanishing = level_vanishing_ok(ordered, alpha, p, e)
    ok = check["integral"] and vanishing and not check["mismatches"]
    payload = _with_version(
        {
            "params": {"rank": 2, "p": p, "e": e, "degree": degree, "trace_bound": trace_bound},
            "forms": [{"twice_gram": f.base.to_json(), "det2": f.det2, "level": level(f.base)} for f in ordered],
            "alpha": [[format_rational(a) for a in row] for row in alpha],
            "integral": check["integral"],
            "level_vanishing": vanishing,
            "effective_trace_bound": check["effective_trace_bound"],
            "mismatches": [
                {"row": i, "t": t, "lhs": format_rational(a), "rhs": format_rational(b)}
                for i, t, a, b in check["mismatches"]
            ],
            "ok": ok,
        }
    )
    return payload, ok


def cmd_verify_up_theta(args):
    if args.rank != 2:
        raise UsageError("only rank 2 is supported")
    trace_bound = args.trace_bound if args.trace_bound is not None else 2 * args.p
    payload, ok = up_theta_payload(args.p, args.e, args.degree, trace_bound)
    return payload, EXIT_OK if ok else EXIT_NEGATIVE


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def _tsv(payload: dict) -> str:
    lines = []
    if "rank_valuations" in payload:
        lines.append("rank\tvaluation")
        for r, v in payload["rank_valuations"].items():
            lines.append(f"{r}\t{'inf' if v is None else v}")
        lines.append(f"achieved_order\t{'inf' if payload['achieved_order'] is None else payload['achieved_order']}")
        lines.append(f"effective_trace_bound\t{payload['effective_trace_bound']}")
        lines.append(f"ok\t{str(payload['ok']).lower()}")
    elif "expansion" in payload:
        lines.append("t\tc")
        for entry in payload["expansion"]["coeffs"]:
            lines.append(f"{json.dumps(entry['t'])}\t{entry['c']}")
    else:
        for key in sorted(payload):
            lines.append(f"{key}\t{json.dumps(payload[key], sort_keys=True)}")
    return "\n".join(lines)


# --------------------------------------------------------------------------
# fixtures
# --------------------------------------------------------------------------


def fixture_runs() -> dict:
    """The acceptance runs, as (file name -> argv)."""
    runs = {
        "eisenstein_deg2_k4_B4.json": ["eisenstein", "--degree", "2", "--weight", "4", "--trace-bound", "4"],
        "eisenstein_deg1_k4_B3.json": ["eisenstein", "--degree", "1", "--weight", "4", "--trace-bound", "3"],
        "regular_7.json": ["regular", "--p", "7"],
        "verify_main_k2_j0_p7_m1.json": "verify main --k 2 --j 0 --p 7 --m 1 --degree 2 --trace-bound 4".split(),
        "verify_up_k1_j1_p7_n1.json": "verify up --k 1 --j 1 --p 7 --m 1 --degree 1 --trace-bound 14".split(),
        "verify_up_k1_j1_p7_n2.json": "verify up --k 1 --j 1 --p 7 --m 1 --degree 2 --trace-bound 14".split(),
        "verify_up_theta_p7_e2.json": "verify up-theta --rank 2 --p 7 --e 2 --degree 2".split(),
    }
    for p in (7, 11, 23):
        runs[f"verify_main_k1_j1_p{p}_m1.json"] = (
            f"verify main --k 1 --j 1 --p {p} --m 1 --degree 2 --trace-bound 5".split()
        )
    runs["verify_main_k1_j1_p7_m2.json"] = "verify main --k 1 --j 1 --p 7 --m 2 --degree 2 --trace-bound 5".split()
    return runs


def seed_fixtures(directory: str) -> int:
    os.makedirs(directory, exist_ok=True)
    worst = EXIT_OK
    for name, argv in sorted(fixture_runs().items()):
        payload, code = dispatch(build_parser().parse_args(argv))
        with open(os.path.join(directory, name), "w") as fh:
            fh.write(_dump(payload) + "\n")
        worst = max(worst, code)
    return worst


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------


def _add_verify_args(p):
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, choices=(0, 1), required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--trace-bound", type=int, required=True)
    p.add_argument("--min-order", type=int, default=1, help="order needed for exit code 0 (default 1)")
    p.add_argument("--extra-periods", type=int, default=0, help="add multiples of p-1 to a_j(m)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="siegel-padic", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "tsv"), default="json")
    parser.add_argument("--threads", type=int, default=None, help="worker count; results do not depend on it")
    parser.add_argument("--seed-fixtures", metavar="DIR", help="write every acceptance-run output to DIR")
    parser.add_argument("--version", action="version", version=config.VERSION)
    # the shared options are also accepted after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("eisenstein", help="Siegel-Eisenstein q-expansion", parents=[common])
    p.add_argument("--degree", type=int, choices=(1, 2), required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--trace-bound", type=int, required=True)
    p.add_argument("--route", choices=("primitive", "oracle"), default="primitive")
    p.set_defaults(func=cmd_eisenstein)

    p = sub.add_parser("theta", help="theta series of a Gram file", parents=[common])
    p.add_argument("--gram", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--trace-bound", type=int, required=True)
    p.set_defaults(func=cmd_theta)

    p = sub.add_parser("genus", help="class and genus enumeration", parents=[common])
    gsub = p.add_subparsers(dest="genus_command", required=True)
    q = gsub.add_parser("enumerate", parents=[common])
    q.add_argument("--rank", type=int, choices=(2, 4), required=True)
    q.add_argument("--det2", type=int, required=True)
    q.add_argument("--level-divides", type=int, required=True)
    q.set_defaults(func=cmd_genus)

    p = sub.add_parser("bernoulli", help="B_k or B_{k,chi}", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--chi", help="p:P for the quadratic character mod P, d:D for Kronecker (D/.)")
    p.set_defaults(func=cmd_bernoulli)

    p = sub.add_parser("regular", help="regularity of a prime", parents=[common])
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_regular)

    p = sub.add_parser("verify", help="finite-stage verifications", parents=[common])
    vsub = p.add_subparsers(dest="verify_command", required=True)
    q = vsub.add_parser("main", help="Eisenstein vs genus theta series", parents=[common])
    _add_verify_args(q)
    q.set_defaults(func=cmd_verify_main)
    q = vsub.add_parser("up", help="U(p)-invariance of the normalised Eisenstein series", parents=[common])
    _add_verify_args(q)
    q.set_defaults(func=cmd_verify_up)
    q = vsub.add_parser("up-theta", help="theta_S | U(p) as a combination of theta series", parents=[common])
    q.add_argument("--rank", type=int, default=2)
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--e", type=int, required=True)
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--trace-bound", type=int, default=None, help="default 2p")
    q.set_defaults(func=cmd_verify_up_theta)
    return parser


def dispatch(args):
    if args.threads is not None and args.threads < 1:
        raise UsageError("--threads must be positive")
    return args.func(args)


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.seed_fixtures:
            return seed_fixtures(args.seed_fixtures)
        if not getattr(args, "func", None):
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        payload, code = dispatch(args)
    except (CompletenessError, ConsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (UsageError, ValueError, FileNotFoundError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - anything else is an internal failure
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(_tsv(payload) if args.format == "tsv" else _dump(payload), file=out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
