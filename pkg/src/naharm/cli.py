"""Command-line interface.

Subcommands: htype, group, spherical table, abel slice, meanvalue
asymptotics, slowdecrease check, deconvolve demo, verify-all.  A JSON
config file (--config) supplies defaults; flags override it.  Exit codes:
0 success, 1 validation failure, 2 usage error.

CSV output carries full double precision (17 significant digits) so that
identical config + seed reproduces files byte for byte.
"""

import argparse
import dataclasses
import json
import math
import sys

import numpy as np

from . import abel, acceptance, deconvolve, meanvalue, nagroup, slowdecrease, spherical
from .config import GridSpec, load_config
from .errors import NaharmError
from .htype import build_htype
from .radial import gevrey_bump

__all__ = ["main"]


def _fmt(x):
    return f"{float(x):.17g}"


def _emit(lines, path):
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _algebra(cfg, args):
    k = args.k if args.k is not None else cfg.k
    b = args.b if args.b is not None else cfg.b
    return build_htype(k, b, allow_octonions=cfg.allow_octonions)


def _grid(args_value, cfg, name):
    if args_value is not None:
        return GridSpec.parse(args_value).values()
    return cfg.grids[name].values()


def _add_common(p, with_kb=True):
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--seed", type=int, help="seed for sphere quadrature rotations")
    p.add_argument("--output", help="output path (default: stdout)")
    if with_kb:
        p.add_argument("--k", type=int, help="center dimension (1, 2, 3, 7)")
        p.add_argument("--b", type=int, help="number of minimal Clifford modules")


def cmd_htype(cfg, args):
    alg = _algebra(cfg, args)
    _emit([alg.to_json(indent=2)], args.output)
    return 0


def cmd_group(cfg, args):
    alg = _algebra(cfg, args)
    spec = cfg.effective_spec()
    rng = np.random.default_rng(spec.seed)
    worst_assoc = worst_inv = worst_metric = 0.0
    for _ in range(args.samples):
        pts = [nagroup.point(alg, rng.normal(0, 1.2, alg.m), rng.normal(0, 1.2, alg.k),
                             t=rng.normal(0, 1.0)) for _ in range(3)]
        p, q, w = pts
        lhs = nagroup.multiply(alg, nagroup.multiply(alg, p, q), w)
        rhs = nagroup.multiply(alg, p, nagroup.multiply(alg, q, w))
        worst_assoc = max(worst_assoc, float(np.max(np.abs(lhs.X - rhs.X))),
                          float(np.max(np.abs(lhs.Z - rhs.Z))), abs(lhs.t - rhs.t))
        pi = nagroup.multiply(alg, p, nagroup.inverse(alg, p))
        worst_inv = max(worst_inv, float(np.max(np.abs(pi.X))), float(np.max(np.abs(pi.Z))), abs(pi.t))
        bb = nagroup.cayley(alg, p)
        worst_metric = max(worst_metric, abs(bb.rho - math.tanh(nagroup.distance_to_origin(alg, p) / 2)))
    report = {
        "k": alg.k, "m": alg.m, "samples": args.samples,
        "max_associativity_defect": worst_assoc,
        "max_inverse_defect": worst_inv,
        "max_ball_metric_defect": worst_metric,
        "pass": bool(worst_assoc < 1e-10 and worst_inv < 1e-10 and worst_metric < 1e-9),
    }
    _emit([json.dumps(report, indent=2)], args.output)
    return 0 if report["pass"] else 1


def cmd_spherical_table(cfg, args):
    alg = _algebra(cfg, args)
    spec = cfg.effective_spec()
    lams = _grid(args.lambda_grid, cfg, "lambda")
    rs = _grid(args.r_grid, cfg, "r")
    desk = alg.k == 1 and alg.m == 2
    lines = ["lambda,r,re,im,delta_integral,delta_koornwinder"]
    for lam in lams:
        for r in rs:
            ser = spherical.spherical_phi_series(alg, float(lam), float(r))
            koo = complex(spherical.koornwinder_phi(alg, np.array([complex(lam)]), float(r), spec)[0])
            if desk:
                y = nagroup.point(alg, np.zeros(alg.m), np.zeros(alg.k), t=float(r))
                via_int = spherical.spherical_phi_integral(alg, float(lam), y, spec)
                d_int = abs(ser - via_int)
            else:
                d_int = float("nan")
            lines.append(",".join([
                _fmt(lam), _fmt(r), _fmt(ser.real), _fmt(ser.imag), _fmt(d_int), _fmt(abs(ser - koo)),
            ]))
    _emit(lines, args.output)
    return 0


def cmd_abel_slice(cfg, args):
    alg = _algebra(cfg, args)
    spec = cfg.effective_spec()
    lams = _grid(args.lambda_grid, cfg, "lambda")
    f = gevrey_bump(R=args.bump)
    ft = abel.spherical_transform_radial(alg, f, lams, spec)

    def af(ts):
        return np.array([abel.abel_transform(alg, f, float(t), spec) for t in np.atleast_1d(ts)])

    fa = abel.fourier_even(af, lams, f.support_radius, spec)
    lines = ["lambda,ft_abel,ft_spherical,delta"]
    for i, lam in enumerate(lams):
        lines.append(",".join([
            _fmt(lam), _fmt(fa[i].real), _fmt(ft[i].real), _fmt(abs(fa[i] - ft[i])),
        ]))
    _emit(lines, args.output)
    return 0


def cmd_meanvalue_asymptotics(cfg, args):
    rep = meanvalue.asymptotics_report(args.nu, args.t, args.lambda_min, args.lambda_max,
                                       count=args.count, spec=cfg.effective_spec())
    lines = ["lambda,quadrature,leading,scaled_remainder"]
    for i, lam in enumerate(rep.lambda_grid):
        rem = abs(rep.quadrature[i] - rep.asymptotic[i]) * lam ** (args.nu + 1.5)
        lines.append(",".join([_fmt(lam), _fmt(rep.quadrature[i]), _fmt(rep.asymptotic[i]), _fmt(rem)]))
    _emit(lines, args.output)
    sys.stderr.write(f"fitted remainder slope: {rep.fitted_slope:.3f}\n")
    return 0


_FILE_TARGETS = {
    "sinc": lambda z: np.sinc(np.asarray(z, complex) / np.pi),
    "one": lambda z: np.ones_like(np.asarray(z, complex)),
}


def _target_from_file(path):
    with open(path) as fh:
        spec = json.load(fh)
    kind = spec.get("kind")
    if kind == "poly":
        coeffs = [complex(c) for c in spec["coeffs"]]
        return lambda z: np.polynomial.polynomial.polyval(np.asarray(z, complex), coeffs)
    if kind in _FILE_TARGETS:
        return _FILE_TARGETS[kind]
    raise NaharmError(f"unknown function kind {kind!r} in {path}")


def cmd_slowdecrease_check(cfg, args):
    spec = cfg.effective_spec()
    if args.target == "phi":
        alg = _algebra(cfg, args)

        def F(z):
            return spherical.koornwinder_phi(alg, np.asarray(z, dtype=complex), args.t, spec)
    elif args.target == "phik":
        if args.n is None:
            raise NaharmError("--target phik needs --n (the oscillatory-layer dimension)")
        k = args.k if args.k is not None else cfg.k

        def F(z):
            return meanvalue.phi_k_polynomial_form((k, args.n), np.asarray(z, complex), args.t)
    elif args.target == "file":
        if args.file is None:
            raise NaharmError("--target file needs --file PATH")
        F = _target_from_file(args.file)
    else:
        raise NaharmError(f"unknown target {args.target!r}")
    try:
        A, B, C, D = (float(x) for x in args.witness.split(","))
    except ValueError as exc:
        raise NaharmError(f"--witness must be A,B,C,D, got {args.witness!r}") from exc
    wit = slowdecrease.SlowDecreaseWitness(A=A, B=B, C=C, D=D,
                                           xi_range=(args.xi_min, args.xi_max))
    checked = slowdecrease.check_slow_decrease(F, wit)
    _emit([json.dumps({"status": checked.status, "worst_xi": checked.worst_xi,
                       "margin": checked.margin}, indent=2)], args.output)
    return 0 if checked.status == "pass" else 1


def cmd_deconvolve_demo(cfg, args):
    alg = _algebra(cfg, args)
    spec = cfg.effective_spec().with_(sphere_nodes=max(cfg.effective_spec().sphere_nodes, 65536))
    f0 = gevrey_bump(R=args.R)
    g = deconvolve.forward_problem_rhs(alg, f0, args.t, spec)
    prob = deconvolve.default_problem(alg, g, args.t)
    res = deconvolve.solve(alg, prob, spec)
    mt = deconvolve.sample_mean_value(alg, res.f, args.t, prob.r_grid, spec)
    gv = g(prob.r_grid)
    lines = ["r,f_true,f_rec,mt_defect"]
    for i, r in enumerate(prob.r_grid):
        lines.append(",".join([
            _fmt(r), _fmt(f0(float(r))), _fmt(res.f_samples[i]), _fmt(abs(mt[i] - gv[i])),
        ]))
    _emit(lines, args.output)
    summary = json.dumps({"residual": res.residual, "zeros_guarded": len(res.zeros),
                          "t": args.t, "R": args.R}, indent=2)
    (sys.stdout if args.output else sys.stderr).write(summary + "\n")
    return 0 if res.residual < 1e-2 else 1


def cmd_verify_all(cfg, args):
    results = acceptance.run_all(verbose=True)
    summary = {
        "pass": all(r.passed for r in results),
        "criteria": [
            {"id": r.cid, "name": r.name, "passed": r.passed, "measure": r.measure,
             "threshold": r.threshold, "seconds": round(r.seconds, 2)}
            for r in results
        ],
    }
    payload = json.dumps(summary, indent=2)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(payload + "\n")
    else:
        print(payload)
    return 0 if summary["pass"] else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="naharm",
                                 description="Numerics for harmonic NA (Damek-Ricci) spaces")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("htype", help="algebra summary as JSON")
    _add_common(p)
    p.set_defaults(fn=cmd_htype)

    p = sub.add_parser("group", help="group-axiom and metric checks")
    _add_common(p)
    p.add_argument("--samples", type=int, default=500)
    p.set_defaults(fn=cmd_group)

    sp = sub.add_parser("spherical", help="spherical-function pipelines")
    ssub = sp.add_subparsers(dest="subcommand", required=True)
    p = ssub.add_parser("table", help="three-route table as CSV")
    _add_common(p)
    p.add_argument("--lambda-grid", help="min:max:count")
    p.add_argument("--r-grid", help="min:max:count")
    p.set_defaults(fn=cmd_spherical_table)

    sp = sub.add_parser("abel", help="Abel-transform pipelines")
    ssub = sp.add_subparsers(dest="subcommand", required=True)
    p = ssub.add_parser("slice", help="projection-slice table as CSV")
    _add_common(p)
    p.add_argument("--bump", type=float, default=1.0, help="bump support radius R")
    p.add_argument("--lambda-grid", help="min:max:count")
    p.set_defaults(fn=cmd_abel_slice)

    sp = sub.add_parser("meanvalue", help="oscillatory-integral asymptotics")
    ssub = sp.add_subparsers(dest="subcommand", required=True)
    p = ssub.add_parser("asymptotics", help="I~ quadrature vs leading term")
    _add_common(p, with_kb=False)
    p.add_argument("--nu", type=int, required=True)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--lambda-min", type=float, default=50.0)
    p.add_argument("--lambda-max", type=float, default=400.0)
    p.add_argument("--count", type=int, default=60)
    p.set_defaults(fn=cmd_meanvalue_asymptotics)

    sp = sub.add_parser("slowdecrease", help="slow-decrease certification")
    ssub = sp.add_subparsers(dest="subcommand", required=True)
    p = ssub.add_parser("check", help="check a witness on a xi-range")
    _add_common(p)
    p.add_argument("--target", choices=["phi", "phik", "file"], default="phi")
    p.add_argument("--file", help="JSON entire-function description for --target file")
    p.add_argument("--n", type=int, help="oscillatory-layer n for --target phik")
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--xi-min", type=float, default=5.0)
    p.add_argument("--xi-max", type=float, default=200.0)
    p.add_argument("--witness", required=True, help="A,B,C,D")
    p.set_defaults(fn=cmd_slowdecrease_check)

    sp = sub.add_parser("deconvolve", help="deconvolution against sigma_t")
    ssub = sp.add_subparsers(dest="subcommand", required=True)
    p = ssub.add_parser("demo", help="forward-then-inverse demo")
    _add_common(p)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--R", type=float, default=1.0)
    p.set_defaults(fn=cmd_deconvolve_demo)

    p = sub.add_parser("verify-all", help="run the full acceptance suite")
    _add_common(p)
    p.set_defaults(fn=cmd_verify_all)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = load_config(getattr(args, "config", None))
        if getattr(args, "seed", None) is not None:
            cfg = dataclasses.replace(cfg, seed=args.seed)
        return args.fn(cfg, args)
    except NaharmError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
