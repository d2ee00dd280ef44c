"""Command-line entry point: ``toeplitz-fredholm <subcommand> ...``."""

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import __version__
from .errors import ToeplitzError, ZeroSymbolError
from .index import index_from_roots, laurent_roots, toeplitz_index
from .portrait import (conjugate_arc_endpoints, path_jump_scan, quadratic_real_family,
                       random_path_jump_scan, scan_grid, wraparound_experiment,
                       write_portrait_csv, cross_check_cells)
from .qhe.landau import landau_pup_weights, landau_table
from .qhe.lattice import build_lattice_model, hall_step_scan, write_step_csv
from .symbols import LaurentSymbol, ShiftPolynomial, from_shift_polynomial
from .truncation import index_signature

FAMILIES = {"quadratic-real": quadratic_real_family}


class UsageError(Exception):
    """Invalid input detected after argument parsing (exit code 2)."""


def _symbol(args):
    try:
        obj = json.loads(args.coeffs)
    except json.JSONDecodeError as exc:
        raise UsageError("--coeffs is not valid JSON: %s" % exc)
    if isinstance(obj, dict) and "coeffs" in obj:
        obj = obj["coeffs"]
    if not isinstance(obj, dict):
        raise UsageError("--coeffs must be a JSON object mapping exponents to [re, im]")
    try:
        if args.shift:
            s = from_shift_polynomial(ShiftPolynomial({int(k): _pair(v) for k, v in obj.items()}))
        else:
            s = LaurentSymbol.from_json(obj)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc))
    if s.is_zero:
        raise UsageError("zero symbol")
    return s


def _pair(v):
    return complex(v[0], v[1]) if isinstance(v, list) else complex(v)


def _window(text):
    try:
        parts = [tuple(float(v) for v in ax.split(":")) for ax in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError("window must look like -3:3,-3:3")
    if len(parts) != 2 or any(len(p) != 2 or p[0] >= p[1] for p in parts):
        raise argparse.ArgumentTypeError("window must look like -3:3,-3:3")
    return tuple(parts)


def _beta(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("beta must be > 0 (or inf)")
    return v


def _emit(obj, out):
    text = json.dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


# subcommand bodies ---------------------------------------------------------

def cmd_index(args):
    s = _symbol(args)
    if args.method == "winding":
        res = toeplitz_index(s)
    else:
        res = index_from_roots(s)
    d = res.to_dict()
    if args.method == "both":
        w = toeplitz_index(s)
        d["winding_index"] = w.index
        d["agree"] = w.status == res.status and w.index == res.index
    _emit(d, args.out)


def cmd_roots(args):
    _emit(laurent_roots(_symbol(args)).to_dict(), args.out)


def cmd_truncate(args):
    sig = index_signature(_symbol(args), args.N, args.tol)
    _emit(sig.to_dict(), args.out)


def cmd_portrait(args):
    fam = FAMILIES[args.family]()
    grid = scan_grid(fam, args.window, args.res)
    meta = grid.metadata()
    if args.crosscheck > 0:
        meta["crosscheck_disagreements"] = len(cross_check_cells(grid, args.crosscheck, args.seed))
    write_portrait_csv(grid, args.out)
    _emit({"out": args.out, "regions": grid.regions(), **meta}, None)


def cmd_jumps(args):
    if args.crossing:
        if args.ensemble != "real" or args.degree != 2:
            raise UsageError("--crossing needs --ensemble real --degree 2")
        starts, ends = conjugate_arc_endpoints(args.paths, args.seed)
        hist = path_jump_scan(starts, ends, args.steps, "real", args.seed, workers=args.threads)
    else:
        hist = random_path_jump_scan(args.ensemble, args.degree, args.paths, args.steps,
                                     args.seed, workers=args.threads)
    _emit(hist.to_dict(), args.out)


def cmd_wrap(args):
    r = wraparound_experiment(args.ell, args.delta, args.N, args.eps)
    _emit({"winding_change": r.winding_change, "perturbation_cl_norm": r.perturbation_norm,
           "predicted": args.N * args.delta / (2 * np.pi), "grid": r.grid}, args.out)


def cmd_landau(args):
    rows = landau_table(landau_pup_weights(args.mmax))
    fh = open(args.out, "w", newline="") if args.out else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["m", "w", "asymptote", "residual"])
        for m, wm, a, r in rows:
            w.writerow([int(m), repr(float(wm)), repr(float(a)), repr(float(r))])
    finally:
        if args.out:
            fh.close()


def cmd_lattice(args):
    if args.esteps < 1:
        raise UsageError("--esteps must be >= 1")
    model = build_lattice_model(args.L, args.flux, args.disorder, args.seed)
    energies = np.linspace(args.emin, args.emax, args.esteps)
    curve = hall_step_scan(model, energies, args.beta, args.k, args.radius)
    write_step_csv(curve, args.out)
    _emit({"out": args.out, **{k: (str(v) if isinstance(v, float) and not np.isfinite(v) else v)
                                for k, v in curve.meta.items()}}, None)


# parser ------------------------------------------------------------------

def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _symbol_args(p):
    p.add_argument("--coeffs", required=True,
                   help='symbol literal, e.g. \'{"-1": [1, 0], "0": [2, 0]}\' (exponent -> [re, im])')
    p.add_argument("--shift", action="store_true",
                   help="read --coeffs as a shift polynomial sum c_i a^i instead of a symbol")
    p.add_argument("--out", help="write JSON here instead of standard output")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="toeplitz-fredholm",
        description="Fredholm indices of Toeplitz operators and quantum Hall index experiments.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--config", help="key=value file supplying defaults for the subcommand")
    parser.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1,
                        help="worker threads (results do not depend on this)")
    # also accept the global flags after the subcommand name
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
    common.add_argument("--threads", type=_positive_int, default=argparse.SUPPRESS,
                        help=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)
    subs = {}

    p = sub.add_parser("index", parents=[common],
                       help="index of T_f: root count or minus the winding number",
                       description="Fredholm index of the Toeplitz operator T_f. The root oracle "
                                   "counts roots of z^m f inside the unit circle; the winding "
                                   "oracle returns minus the winding number of f.")
    _symbol_args(p)
    p.add_argument("--method", choices=["roots", "winding", "both"], default="roots")
    p.set_defaults(func=cmd_index)
    subs["index"] = p

    p = sub.add_parser("roots", parents=[common],
                       help="roots of z^m f classified against the unit circle",
                       description="Companion-matrix roots of z^m f(z), counted inside, on and "
                                   "outside the unit circle.")
    _symbol_args(p)
    p.set_defaults(func=cmd_roots)
    subs["roots"] = p

    p = sub.add_parser("truncate", parents=[common],
                       help="finite-section singular-value index witness",
                       description="Counts small singular values of the N x N finite section of "
                                   "T_f and decides the sign by kernel/cokernel residuals at 2N.")
    _symbol_args(p)
    p.add_argument("--N", type=_positive_int, default=256)
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_truncate)
    subs["truncate"] = p

    p = sub.add_parser("portrait", parents=[common],
                       help="index phase portrait of A = a^2 + c1 a + c0",
                       description="Scans a two-parameter symbol family and writes the index of "
                                   "each grid cell (phase plot of a^2 + c1 a + c0).")
    p.add_argument("--family", choices=sorted(FAMILIES), default="quadratic-real")
    p.add_argument("--window", type=_window, default=((-3.0, 3.0), (-3.0, 3.0)))
    p.add_argument("--res", type=_positive_int, default=401)
    p.add_argument("--crosscheck", type=float, default=0.0,
                   help="fraction of cells re-checked with the winding oracle")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_portrait)
    subs["portrait"] = p

    p = sub.add_parser("jumps", parents=[common],
                       help="histogram of index jump sizes along random paths",
                       description="Index jumps along straight paths of shift polynomials: "
                                   "complex coefficients jump by 1 generically, real ones also "
                                   "by 2 when a conjugate pair crosses the circle.")
    p.add_argument("--ensemble", choices=["complex", "real"], default="complex")
    p.add_argument("--degree", type=_positive_int, default=4)
    p.add_argument("--paths", type=int, default=500)
    p.add_argument("--steps", type=_positive_int, default=200)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--crossing", action="store_true",
                   help="real quadratic paths crossing the arc c0 = 1, |c1| < 2")
    p.add_argument("--out")
    p.set_defaults(func=cmd_jumps)
    subs["jumps"] = p

    p = sub.add_parser("wrap", parents=[common],
                       help="C^ell wrap-around: f + eps e^{iN theta} on a flat zero",
                       description="Perturbs a symbol that vanishes on an interval of width delta "
                                   "by eps*e^{iN theta} and reports the winding change and the "
                                   "C^ell norm of the perturbation.")
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--N", type=int, default=100)
    p.add_argument("--eps", type=float, default=1e-7)
    p.add_argument("--out")
    p.set_defaults(func=cmd_wrap)
    subs["wrap"] = p

    q = sub.add_parser("qhe", parents=[common],
                       help="quantum Hall index experiments")
    qsub = q.add_subparsers(dest="qhe_command", required=True)
    p = qsub.add_parser("landau", parents=[common],
                        help="PUP weights in the lowest Landau level",
                        description="Weights <m+1|U|m> of PUP in the lowest Landau level and "
                                    "their 1 - 1/(8m) asymptote.")
    p.add_argument("--mmax", type=_positive_int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_landau)
    subs["landau"] = p

    p = qsub.add_parser("lattice", parents=[common],
                        help="Hall staircase from Tr(P - U P U*)^(2k+1)",
                        description="Disordered magnetic lattice; index estimate of PUP from the "
                                    "trace of (P - U P U*)^(2k+1) over a central disc, with P the "
                                    "spectral projection (beta = inf) or the Fermi function.")
    p.add_argument("--L", type=int, default=24)
    p.add_argument("--flux", default="1/7")
    p.add_argument("--disorder", type=float, default=0.0)
    p.add_argument("--beta", type=_beta, default=float("inf"))
    p.add_argument("--emin", type=float, default=-4.0)
    p.add_argument("--emax", type=float, default=0.0)
    p.add_argument("--esteps", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--k", type=_positive_int, default=1)
    p.add_argument("--radius", type=float, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_lattice)
    subs["lattice"] = p
    return parser, subs


def _read_config(path):
    pairs = {}
    with open(path) as fh:
        for n, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise UsageError("%s:%d: expected key=value" % (path, n))
            k, v = line.split("=", 1)
            pairs[k.strip().replace("-", "_")] = v.strip()
    return pairs


def _apply_config(parser, subs, argv, args):
    pairs = _read_config(args.config)
    name = args.qhe_command if args.command == "qhe" else args.command
    sp = subs[name]
    known = {a.dest: a for a in sp._actions if a.dest not in ("help", "func", "config")}
    unknown = sorted(set(pairs) - set(known))
    if unknown:
        raise UsageError("unknown config key(s) for %s: %s" % (name, ", ".join(unknown)))
    defaults = {}
    for k, v in pairs.items():
        act = known[k]
        if act.nargs == 0:
            defaults[k] = v.lower() in ("1", "true", "yes", "on")
        else:
            defaults[k] = v
            act.required = False
    sp.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    parser, subs = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            args = _apply_config(parser, subs, argv, args)
        args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (UsageError, ZeroSymbolError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except ToeplitzError as exc:
        print(json.dumps(exc.to_dict(), default=float), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
