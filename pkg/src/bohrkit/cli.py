"""Command-line front end.

Subcommands: ``radius`` (one certified radius), ``table`` (parameter
sweep to CSV), ``verify`` / ``sharpness`` / ``check-lemmas`` /
``identity-check`` (verification suites emitting JSON).

Exit codes: 0 success, 1 usage error, 2 no root, 3 verification failure,
4 accuracy error.  Set BOHRKIT_LOG to error/info/debug for progress
messages on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import os
import sys

import numpy as np

from . import weights as wt
from .errors import (AccuracyError, DomainError, NoRootError,
                     NotFalsifiableError, NoWitnessError, UsageError)
from .functionals import ALL_FAMILIES, FunctionalParams, a_refinement
from .radii import RadiusProblem, classical_crosscheck, solve_radius
from .series import moebius_plus
from .verify import (check_lemma_coeff, check_lemma_D, check_schwarz_pick,
                     sharpness_witness, verify_below_radius)

log = logging.getLogger("bohrkit")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_ROOT = 2
EXIT_VERIFICATION = 3
EXIT_ACCURACY = 4

_IDENTITY_TOL = 1e-10


def _fmt(x: float) -> str:
    return format(float(x), ".15g")


def _parse_values(spec: str, cast) -> list:
    """Parse a single value, a comma list, or lo..hi:step."""
    spec = spec.strip()
    if not spec:
        raise UsageError("empty value list")
    if ".." in spec:
        head, _, step_s = spec.partition(":")
        lo_s, _, hi_s = head.partition("..")
        try:
            lo, hi = float(lo_s), float(hi_s)
            step = float(step_s) if step_s else 1.0
        except ValueError:
            raise UsageError(f"bad range {spec!r}") from None
        if step <= 0 or hi < lo:
            raise UsageError(f"bad range {spec!r}")
        vals = np.arange(lo, hi + 0.5 * step, step)
        return [cast(v) for v in vals]
    try:
        return [cast(float(tok)) for tok in spec.split(",")]
    except ValueError:
        raise UsageError(f"bad value list {spec!r}") from None


def _cast_int(v: float) -> int:
    if v != int(v):
        raise UsageError(f"expected an integer, got {v}")
    return int(v)


def _load_weights(spec: str) -> wt.WeightSequence:
    if spec == "power":
        return wt.power()
    return wt.from_json(spec)


def _make_problem(family: str, w: wt.WeightSequence, m: int, p: float,
                  lam: float, q: int, n: int) -> RadiusProblem:
    params = FunctionalParams(m=m, p=p, lam=lam, q=q, n_lacunary=n)
    needs_w = family in {"psi1", "psi2", "psi3", "psi4", "classical_c"}
    return RadiusProblem(family, params, w if needs_w else None)


def _emit(text: str, path: str | None):
    if path in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2; contract wants 1
        raise UsageError(message)


def _add_param_flags(sp, multi: bool):
    helper = " (value, comma list, or lo..hi:step)" if multi else ""
    sp.add_argument("--family", required=True, choices=ALL_FAMILIES)
    sp.add_argument("--m", default="1", help="inner-map exponent" + helper)
    sp.add_argument("--p", default="1", help="modulus power in (0, 2]" + helper)
    sp.add_argument("--lambda", dest="lam", default="1",
                    help="scale parameter" + helper)
    sp.add_argument("--q", default="2", help="lacunary gap (psi5_t6)" + helper)
    sp.add_argument("--n", default="1", help="lacunary index (classical_d)")
    sp.add_argument("--weights", default="power",
                    help="'power' or a path to a scaled_power JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bohrkit", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("radius", help="compute one certified radius")
    _add_param_flags(sp, multi=False)
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_radius)

    sp = sub.add_parser("table", help="sweep a parameter grid to CSV")
    _add_param_flags(sp, multi=True)
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("verify", help="check the inequality below the radius")
    _add_param_flags(sp, multi=False)
    sp.add_argument("--r-points", type=int, default=256)
    sp.add_argument("--margin", type=float, default=0.0)
    sp.add_argument("--mode", choices=("envelope", "pointwise"),
                    default="envelope")
    sp.add_argument("--blaschke", type=int, default=100,
                    help="number of random Blaschke products")
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sharpness", help="search a witness above the radius")
    _add_param_flags(sp, multi=False)
    sp.add_argument("--delta", type=float, default=0.01)
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_sharpness)

    sp = sub.add_parser("check-lemmas", help="run the three lemma suites")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--weights", default="power")
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_check_lemmas)

    sp = sub.add_parser("identity-check",
                        help="closed-form identities and classical cross-checks")
    sp.add_argument("--grid", type=int, default=50)
    sp.add_argument("--output", default=None)
    sp.set_defaults(func=cmd_identity_check)
    return parser


def _single(args, name, cast):
    vals = _parse_values(getattr(args, name), cast)
    if len(vals) != 1:
        raise UsageError(f"--{name.replace('lam', 'lambda')} takes one value here")
    return vals[0]


def _problem_from_args(args) -> RadiusProblem:
    w = _load_weights(args.weights)
    return _make_problem(args.family, w,
                         _single(args, "m", _cast_int),
                         _single(args, "p", float),
                         _single(args, "lam", float),
                         _single(args, "q", _cast_int),
                         _single(args, "n", _cast_int))


def cmd_radius(args) -> int:
    prob = _problem_from_args(args)
    cert = solve_radius(prob)
    record = {
        "family": prob.family,
        "m": prob.params.m, "p": prob.params.p, "lambda": prob.params.lam,
        "q": prob.params.q,
        "radius": cert.radius,
        "bracket_lo": cert.bracket_lo, "bracket_hi": cert.bracket_hi,
    }
    _emit(json.dumps(record, indent=2), args.output)
    return EXIT_OK


def cmd_table(args) -> int:
    w = _load_weights(args.weights)
    ms = _parse_values(args.m, _cast_int)
    ps = _parse_values(args.p, float)
    lams = _parse_values(args.lam, float)
    qs = _parse_values(args.q, _cast_int)
    n = _single(args, "n", _cast_int)
    grid = sorted(set(itertools.product(ms, ps, lams, qs)))
    if not grid:
        raise UsageError("empty parameter grid")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["family", "m", "p", "lambda", "q", "radius",
                     "bracket_width", "status"])
    failures = 0
    for m, p, lam, q in grid:
        try:
            prob = _make_problem(args.family, w, m, p, lam, q, n)
            cert = solve_radius(prob)
            writer.writerow([args.family, m, _fmt(p), _fmt(lam), q,
                             _fmt(cert.radius),
                             _fmt(cert.bracket_hi - cert.bracket_lo), "ok"])
        except NoRootError as exc:
            log.info("row (%s, %s, %s, %s) failed: %s", m, p, lam, q, exc)
            writer.writerow([args.family, m, _fmt(p), _fmt(lam), q,
                             "", "", "no-root"])
            failures += 1
        except DomainError as exc:
            log.info("row (%s, %s, %s, %s) invalid: %s", m, p, lam, q, exc)
            writer.writerow([args.family, m, _fmt(p), _fmt(lam), q,
                             "", "", "invalid"])
            failures += 1
    _emit(buf.getvalue(), args.output)
    return EXIT_NO_ROOT if failures == len(grid) else EXIT_OK


def cmd_verify(args) -> int:
    prob = _problem_from_args(args)
    report = verify_below_radius(prob, r_points=args.r_points,
                                 margin=args.margin, mode=args.mode,
                                 seed=args.seed,
                                 blaschke_count=args.blaschke)
    _emit(report.to_json(indent=2), args.output)
    if not report.verified:
        log.error("max violation %.3g at family %s", report.max_violation,
                  prob.family)
        return EXIT_VERIFICATION
    return EXIT_OK


def cmd_sharpness(args) -> int:
    prob = _problem_from_args(args)
    cert = solve_radius(prob)
    try:
        witness = sharpness_witness(prob, args.delta, cert)
    except (NotFalsifiableError, NoWitnessError) as exc:
        _emit(json.dumps({"family": prob.family, "radius": cert.radius,
                          "witness": None, "reason": str(exc)}, indent=2),
              args.output)
        return EXIT_VERIFICATION
    _emit(json.dumps({"family": prob.family, "radius": cert.radius,
                      "witness": {"a": witness.a, "r": witness.r,
                                  "excess": witness.excess}}, indent=2),
          args.output)
    return EXIT_OK


def cmd_check_lemmas(args) -> int:
    w = _load_weights(args.weights)
    coeff_slack = check_lemma_coeff(args.trials, args.seed, w)
    sp = check_schwarz_pick(max(1, args.trials // 5), args.seed)
    d_reports = [check_lemma_D(instance, m=1, p=p, w=w)
                 for instance in ("phi_tail", "t5", "t6")
                 for p in (0.5, 1.0, 2.0)]
    ok = (coeff_slack <= 1e-9
          and sp["max_contraction_slack"] <= 1e-8
          and sp["max_derivative_slack"] <= 1e-8
          and sp["moebius_equality_dev"] <= 1e-10
          and all(rep["max_D"] <= 1e-10 and rep["D_at_1_max_abs"] == 0.0
                  for rep in d_reports))
    out = {"coefficient_lemma_max_slack": coeff_slack,
           "schwarz_pick": sp,
           "d_function": d_reports,
           "status": "ok" if ok else "violated"}
    _emit(json.dumps(out, indent=2), args.output)
    return EXIT_OK if ok else EXIT_VERIFICATION


def cmd_identity_check(args) -> int:
    n = args.grid
    a_grid = np.linspace(0.0, 0.98, n)
    r_grid = np.linspace(0.0, 0.9, n)
    a2 = 1.0 - a_grid[:, None] ** 2
    lhs = (a2 * r_grid[None, :] / (1.0 - a_grid[:, None] * r_grid[None, :])
           + a2 ** 2 * r_grid[None, :] ** 2
           / ((1.0 + a_grid[:, None]) * (1.0 - r_grid[None, :])
              * (1.0 - a_grid[:, None] * r_grid[None, :])))
    rhs = a2 * r_grid[None, :] / (1.0 - r_grid[None, :])
    t5_dev = float(np.abs(lhs - rhs).max())

    pw = wt.power()
    refine_dev = 0.0
    rs = np.linspace(0.0, 0.9, 33)
    for a in (0.0, 0.2, 0.5, 0.8, 0.95, 0.99):
        f = moebius_plus(a)
        generic = a_refinement(f, pw, rs)
        norm_sq = (1.0 - a * a) ** 2 * rs ** 2 / (1.0 - a * a * rs * rs)
        closed = (1.0 / (1.0 + a) + rs / (1.0 - rs)) * norm_sq
        refine_dev = max(refine_dev, float(np.abs(generic - closed).max()))

    pair_dev = 0.0
    pairs = []
    for m in range(1, 7):
        for p_case in (1, 2):
            for name, rc, rp in classical_crosscheck(m, p_case):
                pairs.append({"family": name, "m": m, "p_case": p_case,
                              "classical": rc, "psi": rp})
                pair_dev = max(pair_dev, abs(rc - rp))
    ok = max(t5_dev, refine_dev, pair_dev) <= _IDENTITY_TOL
    out = {"t5_identity_max_dev": t5_dev,
           "refinement_identity_max_dev": refine_dev,
           "crosscheck_max_gap": pair_dev,
           "crosscheck_pairs": pairs,
           "status": "ok" if ok else "violated"}
    _emit(json.dumps(out, indent=2), args.output)
    return EXIT_OK if ok else EXIT_VERIFICATION


def main(argv=None) -> int:
    level = os.environ.get("BOHRKIT_LOG", "error").lower()
    logging.basicConfig(
        stream=sys.stderr,
        level={"error": logging.ERROR, "info": logging.INFO,
               "debug": logging.DEBUG}.get(level, logging.ERROR),
        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NoRootError as exc:
        print(f"no root: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    except AccuracyError as exc:
        print(f"accuracy error: {exc}", file=sys.stderr)
        return EXIT_ACCURACY
    except DomainError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
