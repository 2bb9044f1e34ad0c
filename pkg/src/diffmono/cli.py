"""Command-line interface.

Every subcommand prints one JSON document on stdout (``--text`` for a
human-readable rendering).  Exit codes: 0 success, 1 a counterexample or
campaign violation was found, 2 usage, parse or hypothesis error.

Spec strings use ``n:n1,n2,...:t1,t2,...``; for example ``0:4:1`` is
``(f^4)'`` and ``2:3,2:1,1`` is ``f^2 (f^3)' (f^2)'``.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .campaigns import CAMPAIGNS, exp_identity_error, run_campaign
from .errors import DiffMonoError, ParseError
from .exact import GaussianRational, Polynomial, format_polynomial
from .expr import Const, parse_constant, parse_rational, print_expr, substitute
from .generators import CampaignConfig
from .monomial import MonomialSpec, exp_image, profile
from .numeric import (
    DEFAULT_RADIUS,
    DEFAULT_RESOLUTION,
    DEFAULT_THRESHOLD,
    NumericFunction,
    RescaleSpec,
    marty_scan,
    zalcman_rescale,
)
from .ppoints import (
    check_lemma4_hypotheses,
    degree_drop_check,
    degree_drop_equality_check,
    distinct_ppoints,
    factor_profile,
    lemma4_verdict,
    shares_value,
)
from .ratfunc import build_monomial, deg_infinity, format_rf, rf_derivative

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageFailure(Exception):
    pass


def _spec(text: str) -> MonomialSpec:
    try:
        return MonomialSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _m_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"m range {text!r} is not A:B") from None


def _default_seed() -> int:
    raw = os.environ.get("MN_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageFailure(f"MN_SEED={raw!r} is not an integer") from None


def _target(args) -> Polynomial:
    if getattr(args, "target", None) is not None:
        t = parse_rational(args.target)
        if not t.is_polynomial():
            raise UsageFailure("--target must be a polynomial in z")
        return t.num
    if getattr(args, "p", None) is not None:
        return Polynomial.constant(parse_constant(args.p))
    raise UsageFailure("give the value with --p or --target")


def _real_rational(text: str, name: str) -> Fraction:
    c = parse_constant(text)
    if c.im != 0:
        raise UsageFailure(f"--{name} must be real")
    return Fraction(int(c.re.numerator), int(c.re.denominator))




# ----------------------------------------------------------------- commands


def cmd_ppoints(args) -> tuple[dict, int]:
    f = parse_rational(args.expr)
    target = _target(args)
    out = {"command": "ppoints", "expression": format_rf(f), "spec": str(args.spec),
           "spec_profile": profile(args.spec).to_json()}
    code = EXIT_OK
    if args.verdict:
        if not target.is_constant():
            raise UsageFailure("verdict mode needs a constant --p")
        try:
            check_lemma4_hypotheses(f, args.spec, target[0])
        except DiffMonoError as exc:
            raise UsageFailure(f"verdict mode: {exc}") from None
        holds = lemma4_verdict(f, args.spec, target[0])
        out["lemma4"] = {"verdict": holds}
        code = EXIT_OK if holds else EXIT_VIOLATION
    m = build_monomial(f, args.spec)
    out["monomial"] = format_rf(m)
    out["report"] = distinct_ppoints(f, args.spec, target).to_json()
    if args.profile:
        out["factor_profile"] = factor_profile(f, args.spec).to_json()
    return out, code


def cmd_share(args) -> tuple[dict, int]:
    f = parse_rational(args.expr1)
    g = parse_rational(args.expr2)
    target = _target(args)
    verdict = shares_value(f, g, args.spec, target)
    return {"command": "share", "left": format_rf(f), "right": format_rf(g), "spec": str(args.spec),
            "target": format_polynomial(target), **verdict.to_json()}, EXIT_OK


def cmd_monomial(args) -> tuple[dict, int]:
    f = parse_rational(args.expr)
    m = build_monomial(f, args.spec)
    out = {"command": "monomial", "expression": format_rf(f), "spec": str(args.spec),
           "spec_profile": profile(args.spec).to_json(), "monomial": format_rf(m),
           "numerator": format_polynomial(m.num), "denominator": format_polynomial(m.den)}
    if not m.is_zero():
        out["deg_infinity"] = deg_infinity(m)
    return out, EXIT_OK


def cmd_deg_inf(args) -> tuple[dict, int]:
    f = parse_rational(args.expr)
    out = {"command": "deg-inf", "expression": format_rf(f), "deg_infinity": deg_infinity(f)}
    code = EXIT_OK
    if args.k is not None:
        if args.k < 1:
            raise UsageFailure("--k must be positive")
        d = rf_derivative(f, args.k)
        out["k"] = args.k
        out["derivative"] = format_rf(d)
        out["deg_infinity_derivative"] = None if d.is_zero() else deg_infinity(d)
        if f.den.degree >= 1:
            out["degree_drop_holds"] = degree_drop_check(f, args.k)
            code = EXIT_OK if out["degree_drop_holds"] else EXIT_VIOLATION
        try:
            out["degree_equality_holds"] = degree_drop_equality_check(f, args.k)
            if not out["degree_equality_holds"]:
                code = EXIT_VIOLATION
        except DiffMonoError as exc:
            out["degree_equality_holds"] = None
            out["degree_equality_note"] = str(exc)
    return out, code


def cmd_campaign(args) -> tuple[dict, int]:
    seed = args.seed if args.seed is not None else _default_seed()
    try:
        cfg = CampaignConfig(seed=seed, trials=args.trials, max_poly_degree=args.max_poly_degree,
                             max_k=args.max_k, max_exponent=args.max_exponent,
                             coefficient_height=args.coefficient_height)
    except ValueError as exc:
        raise UsageFailure(str(exc)) from None
    report = run_campaign(args.name, cfg, jobs=args.jobs, negative_controls=args.negative_controls)
    out = report.to_json()
    if args.figure:
        from .plotting import plot_campaign

        out["figure"] = plot_campaign(out, args.figure)
    return out, EXIT_OK if report.verdict == "pass" else EXIT_VIOLATION


def cmd_marty(args) -> tuple[dict, int]:
    family = NumericFunction.parse(args.family)
    report = marty_scan(family, args.m_range, radius=args.radius, resolution=args.resolution,
                        threshold=args.threshold, heatmap=args.heatmap)
    out = report.to_json()
    if args.figure:
        from .plotting import plot_marty

        out["figure"] = plot_marty(report, args.figure)
    return {"command": "marty", **out}, EXIT_OK


def cmd_rescale(args) -> tuple[dict, int]:
    family = NumericFunction.parse(args.family, args.m)
    if family.has_parameter and args.m is None:
        raise UsageFailure("the family has a free parameter; give --m")
    z0 = parse_constant(args.z0)
    rho = _real_rational(args.rho, "rho")
    alpha = _real_rational(args.alpha, "alpha")
    if rho <= 0:
        raise UsageFailure("--rho must be positive")
    g = zalcman_rescale(family, RescaleSpec(z0=z0, rho=rho, alpha=alpha))
    rng = random.Random(args.seed if args.seed is not None else _default_seed())
    samples = []
    for _ in range(args.samples):
        zeta = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        v = g(zeta)
        samples.append({"zeta": [zeta.real, zeta.imag],
                        "value": None if v is None else [v.real, v.imag]})
    out = {"command": "rescale", "family": family.text(), "m": args.m, "z0": str(z0),
           "rho": str(rho), "alpha": str(alpha), "rescaled": g.text()}
    if args.m is not None and family.has_parameter:
        bound = substitute(g.expression, param=Const(GaussianRational(args.m)))
        out["rescaled_bound"] = print_expr(bound)
    out["samples"] = samples
    return out, EXIT_OK


def cmd_exp_identity(args) -> tuple[dict, int]:
    c = parse_constant(args.c)
    d = parse_constant(args.d)
    img = exp_image(args.spec, c, d)
    rng = random.Random(args.seed if args.seed is not None else _default_seed())
    pts = [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(args.points)]
    err, rate_ok = exp_identity_error(args.spec, c, d, pts)
    ok = rate_ok and err <= 1e-9
    return {"command": "exp-identity", "spec": str(args.spec), "c": str(c), "d": str(d),
            "image": img.to_json(), "closed_form": _closed_form(img, d),
            "rate_exact": rate_ok, "max_relative_error": err, "points": args.points,
            "holds": ok}, EXIT_OK if ok else EXIT_VIOLATION


def _closed_form(img, d) -> str:
    arg = f"{img.rate}*z"
    if d:
        arg += f" + {GaussianRational(img.offset_scale) * d}"
    return f"{img.coefficient}*exp({arg})"


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--text", action="store_true", help="human-readable output instead of JSON")

    p = argparse.ArgumentParser(
        prog="diffmono",
        description="Exact p-point analysis of differential monomials f^n (f^n1)^(t1)...(f^nk)^(tk).",
        epilog="SPEC format: n:n1,n2,...:t1,t2,... (e.g. 0:4:1 or 2:3,2:1,1). "
               "Expressions: + - * / ^integer, z, i, rationals a/b; numeric families add m and exp(...).",
    )
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("ppoints", parents=[common], help="count distinct p-points of M(f)")
    s.add_argument("expr")
    s.add_argument("--spec", type=_spec, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--p", help="constant target value")
    g.add_argument("--target", help="polynomial target alpha(z)")
    s.add_argument("--verdict", action="store_true", help="also apply the two-p-point lemma (needs p != 0)")
    s.add_argument("--profile", action="store_true", help="include zero/pole bookkeeping")
    s.set_defaults(func=cmd_ppoints)

    s = sub.add_parser("share", parents=[common], help="check IM sharing of a value by M(f) and M(g)")
    s.add_argument("expr1")
    s.add_argument("expr2")
    s.add_argument("--spec", type=_spec, required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--target")
    g.add_argument("--p")
    s.set_defaults(func=cmd_share)

    s = sub.add_parser("monomial", parents=[common], help="build M(f) exactly")
    s.add_argument("expr")
    s.add_argument("--spec", type=_spec, required=True)
    s.set_defaults(func=cmd_monomial)

    s = sub.add_parser("deg-inf", parents=[common], help="degree at infinity, optionally of f^(k)")
    s.add_argument("expr")
    s.add_argument("--k", type=int)
    s.set_defaults(func=cmd_deg_inf)

    s = sub.add_parser("campaign", parents=[common], help="run a seeded verification campaign")
    s.add_argument("name", choices=CAMPAIGNS)
    s.add_argument("--trials", type=int, default=1000)
    s.add_argument("--seed", type=int, help="64-bit seed (default: $MN_SEED or 0)")
    s.add_argument("--max-poly-degree", type=int, default=4)
    s.add_argument("--max-k", type=int, default=3)
    s.add_argument("--max-exponent", type=int, default=4)
    s.add_argument("--coefficient-height", type=int, default=5)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--negative-controls", action="store_true",
                   help="lemma4 only: also sample specs violating condition (b)")
    s.add_argument("--figure", help="write a PNG summary figure to this path")
    s.set_defaults(func=cmd_campaign)

    s = sub.add_parser("marty", parents=[common], help="spherical-derivative growth scan of a family in m")
    s.add_argument("family")
    s.add_argument("--m-range", type=_m_range, required=True)
    s.add_argument("--radius", type=float, default=DEFAULT_RADIUS)
    s.add_argument("--resolution", type=int, default=DEFAULT_RESOLUTION)
    s.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    s.add_argument("--heatmap", action="store_true", help="include a text heatmap of the last member")
    s.add_argument("--figure", help="write a PNG heatmap/growth figure to this path")
    s.set_defaults(func=cmd_marty)

    s = sub.add_parser("rescale", parents=[common], help="rho^alpha F(z0 + rho zeta) as an expression")
    s.add_argument("family")
    s.add_argument("--z0", required=True)
    s.add_argument("--rho", required=True)
    s.add_argument("--alpha", required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--samples", type=int, default=5)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_rescale)

    s = sub.add_parser("exp-identity", parents=[common], help="closed form of M(exp(cz+d))")
    s.add_argument("--spec", type=_spec, required=True)
    s.add_argument("--c", required=True)
    s.add_argument("--d", default="0")
    s.add_argument("--points", type=int, default=10)
    s.add_argument("--seed", type=int)
    s.set_defaults(func=cmd_exp_identity)
    return p


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not all(isinstance(x, (int, float, str)) for x in v):
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict) and all(not isinstance(x, dict) for x in v.values()):
                lines.append(pad + "- " + "  ".join(f"{a}={_scalar(b)}" for a, b in v.items()))
            elif isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    return lines


def _scalar(v) -> str:
    if isinstance(v, list):
        return ", ".join(map(str, v))
    return str(v)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        out, code = args.func(args)
    except (UsageFailure, DiffMonoError, ValueError) as exc:
        kind = "parse error" if isinstance(exc, ParseError) else "error"
        print(f"diffmono: {kind}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.text:
        if args.command == "marty" and "heatmap" in out:
            heat = out.pop("heatmap")
            print("\n".join(_text(out)))
            print("\n".join(heat))
        else:
            print("\n".join(_text(out)))
    else:
        print(json.dumps(out, indent=2))
    return code


def run() -> None:
    sys.exit(main())

