"""Command line interface: ``fanostrata {analyze,apolar,fano-count,verify}``.

Exit codes: 0 success, 1 a verdict or verification failed, 2 usage or parse
error, 3 enumeration cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from . import __version__
from .apolarity import essential_subspace, quadratic_rank
from .fields import QQ, FieldError, GF
from .forms import ParseError, parse_tuple
from .oracle import DEFAULT_CAP, EnumerationCapExceeded, enumeration_cap, fano_points, gaussian_binomial
from .strata import (
    FAILS,
    NOT_APPLICABLE,
    FanoParameters,
    compute_R,
    derived_constants,
    endpoint_minimum_check,
)
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    seed: int = 0
    enumeration_cap: int = DEFAULT_CAP
    output_format: str = "text"


def parse_degrees(text: str) -> tuple[int, ...]:
    try:
        d = tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise UsageError(f"bad multidegree {text!r}; use e.g. 3 or 2,3")
    if not d:
        raise UsageError("empty multidegree")
    return d


def _params(args) -> FanoParameters:
    try:
        return FanoParameters(args.n, args.r, parse_degrees(args.d))
    except ValueError as exc:
        raise UsageError(str(exc))


def _emit(payload: dict, text: str, config: RunConfig) -> None:
    if config.output_format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def _config_dict(config: RunConfig) -> dict:
    return asdict(config)


# ----------------------------------------------------------------- analyze


def analysis_report(params: FanoParameters, forms_zero: bool | None = None) -> dict:
    c = derived_constants(params)
    table = compute_R(params)
    endpoint = endpoint_minimum_check(params)
    applicable = c.delta_lower >= 0 and not params.has_linear
    verdicts = {
        "inequality_holds": table.inequality,
        "sharpness_holds": table.sharpness,
        "endpoint_min_holds": endpoint.endpoint_min_holds if applicable else NOT_APPLICABLE,
        "trivial_case_flag": forms_zero if forms_zero is not None else NOT_APPLICABLE,
    }
    if c.delta_lower >= 0:
        conclusion = {
            "isomorphism_degrees": list(range(c.delta_lower)),
            "injective_degree": c.delta_lower,
        }
    else:
        conclusion = {"isomorphism_degrees": [], "injective_degree": None}
    notes = []
    if params.has_linear:
        notes.append("some d_i = 1: linear equations only cut down the ambient space; verdicts not applicable")
    if c.delta_lower < 0:
        notes.append("delta_ < 0: the cohomological statement is vacuous; verdicts not applicable")
    if forms_zero:
        notes.append("f = 0: F_r(X) = G(r+1, n+1) and restriction is an isomorphism in every degree")
    return {
        "params": {"n": params.n, "r": params.r, "d": list(params.d), "s": params.s},
        "constants": asdict(c),
        "table": table.to_dict(),
        "endpoint": {k: v for k, v in endpoint.to_dict().items() if k != "params"},
        "verdicts": verdicts,
        "conclusion": conclusion,
        "notes": notes,
    }


def format_analysis(rep: dict) -> str:
    p, c, t, v = rep["params"], rep["constants"], rep["table"], rep["verdicts"]
    lines = [
        f"n = {p['n']}, r = {p['r']}, d = {tuple(p['d'])}, s = {p['s']}",
        f"dim G = {c['dim_G']}   C(d+r, r) = {c['binom_d_r']}   delta = {c['delta']}   delta_ = {c['delta_lower']}",
        "",
        f"{'k':>3} {'F(k)':>8} {'bound':>8} {'d(k)':>6} {'candidate':>10}",
    ]
    for row in t["rows"]:
        lines.append(
            f"{row['k']:>3} {row['F']:>8} {row['stratum_bound']:>8} {row['fiber_dim']:>6} {row['candidate']:>10}"
        )
    lines += [
        "",
        f"R (bound-based) = {t['R']}   2 dim G - delta_ = {t['two_dim_G_minus_delta_lower']}",
        f"candidate(k) + F(k) = 2 dim G for all k: {t['identity_candidate_plus_F_eq_2dimG']}",
    ]
    for key, val in v.items():
        lines.append(f"{key}: {val}")
    concl = rep["conclusion"]
    if concl["injective_degree"] is not None:
        iso = concl["isomorphism_degrees"]
        rng = f"i in {{0, ..., {iso[-1]}}}" if iso else "no degrees"
        lines.append(f"restriction H^i(G) -> H^i(F_r(X)): isomorphism for {rng}, injective at i = {concl['injective_degree']}")
    lines.extend(f"note: {n}" for n in rep["notes"])
    return "\n".join(lines)


def cmd_analyze(args, config: RunConfig) -> int:
    params = _params(args)
    forms_zero = None
    if args.forms is not None:
        field = GF(args.p) if args.p else QQ
        try:
            f = parse_tuple(args.forms, params.n, field, params.d)
        except (ParseError, FieldError) as exc:
            raise UsageError(str(exc))
        forms_zero = not f
    rep = analysis_report(params, forms_zero)
    rep["config"] = _config_dict(config)
    _emit(rep, format_analysis(rep), config)
    return EXIT_FAIL if FAILS in rep["verdicts"].values() or not rep["table"]["identity_candidate_plus_F_eq_2dimG"] else EXIT_OK


# ----------------------------------------------------------------- apolar


def cmd_apolar(args, config: RunConfig) -> int:
    field = GF(args.p) if args.p else QQ
    text = args.forms
    if args.file:
        with open(args.file) as fh:
            text = fh.read().strip()
    if text is None:
        raise UsageError("give the forms inline or with --file")
    try:
        phi = parse_tuple(text, args.n, field)
        prof = essential_subspace(phi)
    except ParseError as exc:
        raise UsageError(f"parse error: {exc}")
    payload = {
        "field": str(field),
        "n": args.n,
        "forms": str(phi),
        "multidegree": list(phi.multidegree),
        "A_basis": prof.A.to_json(),
        "M_basis": prof.M.to_json(),
        "m": prof.m,
        "config": _config_dict(config),
    }
    lines = [
        f"phi = {phi}   over {field}",
        f"A(phi) basis (in X0..X{args.n}): {prof.A.to_json()}",
        f"M(phi) basis (in x0..x{args.n}): {prof.M.to_json()}",
        f"m(phi) = {prof.m}",
    ]
    status = EXIT_OK
    if phi.multidegree == (2,):
        rk = quadratic_rank(phi)
        payload["quadratic_rank"] = rk
        payload["quadratic_rank_matches"] = rk == prof.m
        lines.append(f"rank of the symmetric matrix = {rk} ({'matches' if rk == prof.m else 'MISMATCH'})")
        if rk != prof.m:
            status = EXIT_FAIL
    if not phi:
        lines.append("note: phi = 0 gives A = V*, M = 0, m = 0")
    _emit(payload, "\n".join(lines), config)
    return status


# ----------------------------------------------------------------- fano-count


def cmd_fano_count(args, config: RunConfig) -> int:
    params = _params(args)
    try:
        f = parse_tuple(args.forms, params.n, GF(args.q), params.d)
    except (ParseError, FieldError) as exc:
        raise UsageError(str(exc))
    if not f:
        msg = ("f = 0: every r-plane lies on X, so F_r(X) = G(r+1, n+1) "
               f"with {gaussian_binomial(params.r + 1, params.n + 1, args.q)} points over GF({args.q}); "
               "restriction of cohomology is trivially an isomorphism")
        _emit({"trivial_case": True, "message": msg, "config": _config_dict(config)}, msg, config)
        return EXIT_OK
    planes = fano_points(params, f, args.q, cap=config.enumeration_cap, workers=args.workers)
    payload = {
        "params": {"n": params.n, "r": params.r, "d": list(params.d)},
        "field_modulus": args.q,
        "forms": str(f),
        "count": len(planes),
        "grassmannian_points": gaussian_binomial(params.r + 1, params.n + 1, args.q),
        "config": _config_dict(config),
    }
    lines = [f"|F_{params.r}(X)(GF({args.q}))| = {len(planes)}   for f = {f}"]
    if args.members:
        payload["members"] = [p.to_json() for p in planes]
        lines += [f"  {p.to_json()}" for p in planes]
    _emit(payload, "\n".join(lines), config)
    return EXIT_OK


# ----------------------------------------------------------------- verify


def cmd_verify(args, config: RunConfig) -> int:
    kw = {
        "n_max": args.n_max, "r_max": args.r_max, "s_max": args.s_max, "d_max": args.d_max,
        "dim_max": args.dim_max, "ambient_max": args.ambient_max,
        "seed": config.seed, "scalar": args.scalar,
    }
    if args.samples is not None:
        kw["samples"] = args.samples
    if args.q_list:
        kw["qs"] = [int(x) for x in args.q_list.split(",")]
    for key in ("q", "n", "r"):
        if getattr(args, key) is not None:
            kw[key] = getattr(args, key)
    if args.d is not None:
        kw["d"] = parse_degrees(args.d)
    try:
        res = run_suite(args.suite, **kw)
    except (ValueError, FieldError) as exc:
        raise UsageError(str(exc))
    payload = {
        "suite": res.name,
        "checked": res.checked,
        "failures": res.failures,
        "details": res.details,
        "examples": res.examples,
        "config": _config_dict(config),
    }
    text = f"{res.name}: {res.checked} cases checked, {res.failures} failures"
    if res.failures:
        text += "\n" + "\n".join(json.dumps(e, sort_keys=True) for e in res.examples)
    _emit(payload, text, config)
    return EXIT_OK if res.ok else EXIT_FAIL


# ----------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=None,
                        help=f"enumeration cap (default {DEFAULT_CAP}, or $FANOSTRATA_ENUM_CAP)")

    parser = argparse.ArgumentParser(prog="fanostrata", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="constants, F(k) table, R and verdicts")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--r", type=int, required=True)
    a.add_argument("--d", required=True, help="multidegree, comma separated")
    a.add_argument("--forms", default=None, help="optional f to flag the trivial case f = 0")
    a.add_argument("--p", type=int, default=None, help="prime for --forms (default: rationals)")
    a.set_defaults(func=cmd_analyze)

    ap = sub.add_parser("apolar", parents=[common], help="A(phi), M(phi) and m(phi)")
    ap.add_argument("forms", nargs="?", default=None)
    ap.add_argument("--file", default=None)
    ap.add_argument("--n", type=int, required=True)
    ap.add_argument("--p", type=int, default=None, help="prime field (default: rationals)")
    ap.set_defaults(func=cmd_apolar)

    fc = sub.add_parser("fano-count", parents=[common], help="count r-planes on X over GF(q)")
    fc.add_argument("forms")
    fc.add_argument("--n", type=int, required=True)
    fc.add_argument("--r", type=int, required=True)
    fc.add_argument("--d", required=True)
    fc.add_argument("--q", type=int, required=True)
    fc.add_argument("--members", action="store_true")
    fc.add_argument("--workers", type=int, default=1)
    fc.set_defaults(func=cmd_fano_count)

    v = sub.add_parser("verify", parents=[common], help="run a property suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--q", type=int, default=None)
    v.add_argument("--q-list", default=None, help="enumeration-counts: comma separated field sizes")
    v.add_argument("--n", type=int, default=None)
    v.add_argument("--r", type=int, default=None)
    v.add_argument("--d", default=None)
    v.add_argument("--n-max", type=int, default=14)
    v.add_argument("--r-max", type=int, default=5)
    v.add_argument("--s-max", type=int, default=3)
    v.add_argument("--d-max", type=int, default=6)
    v.add_argument("--dim-max", type=int, default=3)
    v.add_argument("--ambient-max", type=int, default=5)
    v.add_argument("--samples", type=int, default=None)
    v.add_argument("--scalar", action="store_true", help="universal-property: one call per pair")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    config = RunConfig(args.seed, enumeration_cap(args.cap), args.format)
    try:
        return args.func(args, config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
