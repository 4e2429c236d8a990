"""Command-line front end.

Subcommands read a JSON document from a file or ``-`` (standard input) and
write data to standard output; diagnostics go to standard error.

Exit codes: 0 success, 1 domain or precondition failure, 2 I/O or parse failure.
"""

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import continuous, discrete, evolution, inverse
from .errors import DiracError
from .matkernel import spectrum
from .quadruple import is_strong, require_strong, validate
from .realization import CONTINUOUS, DISCRETE
from .sampling import sample_points
from .serialize import (
    DocumentError,
    NotStrictlyProperError,
    dumps,
    loads,
    quadruple_from_doc,
    quadruple_to_doc,
    realization_from_doc,
    realization_to_doc,
)

EXIT_OK, EXIT_DOMAIN, EXIT_PARSE = 0, 1, 2

# the grid scan reaches x near 0, where the profile curves most; the stencil
# error is O(h^2), so the scan uses a finer step than the pointwise default
NLWAVE_STEP = {"nls": 2.5e-4, "mkdv": evolution.H_THIRD}
MODES = {"c": CONTINUOUS, "d": DISCRETE}


class DomainFailure(Exception):
    """Raised inside a command to exit with code 1 after reporting."""


def _read(path, stdin):
    try:
        if path == "-":
            return stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc


def _finite(v):
    v = float(v)
    return v if np.isfinite(v) else None


def _cplx(z):
    return [float(z.real), float(z.imag)]


def parse_complex(text):
    """Accept Python (``2j``) and mathematical (``2i``) notation."""
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from exc


def parse_range(text):
    """``a:b:count`` -> ``numpy.linspace(a, b, count)``."""
    try:
        a, b, count = text.split(":")
        count = int(count)
        a, b = float(a), float(b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"range must be a:b:count, got {text!r}") from exc
    if count < 1 or (count > 1 and not b > a):
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return np.linspace(a, b, count)


def parse_grid(text):
    """``x0:x1:nx,t0:t1:nt``."""
    try:
        xs, ts = text.split(",")
    except ValueError as exc:
        raise argparse.ArgumentTypeError("grid must be x0:x1:nx,t0:t1:nt") from exc
    return parse_range(xs), parse_range(ts)


def _matrix_columns(prefix, rows, cols):
    names = []
    for r in range(rows):
        for c in range(cols):
            names += [f"{prefix}{r + 1}{c + 1}_re", f"{prefix}{r + 1}{c + 1}_im"]
    return names


def _matrix_cells(m):
    out = []
    for v in np.asarray(m).ravel():
        out += [repr(float(v.real)), repr(float(v.imag))]
    return out


def _emit_csv(out, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    out.write(buf.getvalue())


def _emit_json(out, doc):
    out.write(dumps(doc) + "\n")


def _load_quadruple(args, stdin):
    return quadruple_from_doc(loads(_read(args.file, stdin)))


def _require_valid(q, args):
    rep = validate(q, tol=args.tol)
    if not rep.passed:
        raise DomainFailure("; ".join(rep.messages))
    return rep


# --- commands -------------------------------------------------------------------


def cmd_validate(args, out, err, stdin):
    q = _load_quadruple(args, stdin)
    rep = validate(q, tol=args.tol)
    flag = is_strong(q)
    ev = spectrum(q.alpha).eigenvalues
    doc = {
        "admissible": rep.passed,
        "messages": list(rep.messages),
        "hermitianResidual": rep.hermitian_residual,
        "minEigenvalueS0": _finite(rep.min_eigenvalue),
        "identityResidual": rep.identity_residual,
        "relativeIdentityResidual": rep.relative_identity_residual,
        "spectrum": [_cplx(z) for z in ev],
        "strong": {
            "controllable": flag.controllable,
            "spectrumInUpperHalfPlane": flag.spectrum_in_upper_half_plane,
            "iNotEigenvalue": flag.i_not_eigenvalue,
            "strong": flag.strong,
        },
    }
    _emit_json(out, doc)
    for msg in rep.messages:
        err.write(f"validate: {msg}\n")
    return EXIT_OK if rep.passed else EXIT_DOMAIN


def cmd_potential(args, out, err, stdin):
    q = _load_quadruple(args, stdin)
    _require_valid(q, args)
    if args.mode == "c":
        xs = np.linspace(0.0, args.xmax, args.steps + 1)
        grid = continuous.potential_grid(q, xs)
        header = ["x"] + _matrix_columns("v", q.m1, q.m2)
        rows = [[repr(float(x))] + _matrix_cells(v) for x, v in zip(grid.abscissae, grid.values)]
        values = grid.values
        abscissa = "x"
        absc = xs
    else:
        require_strong(q)
        seq = discrete.potential_seq(q, args.kmax)
        header = ["k"] + _matrix_columns("c", q.m, q.m)
        rows = [[str(k)] + _matrix_cells(c) for k, c in enumerate(seq.c)]
        values = seq.c
        abscissa = "k"
        absc = list(range(args.kmax + 1))
    if args.json:
        _emit_json(
            out,
            {
                abscissa: [float(a) if abscissa == "x" else int(a) for a in absc],
                "values": [[[_cplx(v) for v in row] for row in m] for m in values],
            },
        )
    else:
        _emit_csv(out, header, rows)
    return EXIT_OK


def cmd_weyl(args, out, err, stdin):
    q = _load_quadruple(args, stdin)
    _require_valid(q, args)
    if args.mode == "c":
        if args.t is not None:
            raise DomainFailure("--t applies to the discrete mode only")
        phi = continuous.weyl(q)
    elif args.t is None:
        phi = discrete.weyl_d(q)
    else:
        phi = evolution.weyl_evolution(q, args.t)
    _emit_json(out, realization_to_doc(phi))
    return EXIT_OK


def cmd_invert(args, out, err, stdin):
    try:
        phi = realization_from_doc(loads(_read(args.file, stdin)))
    except NotStrictlyProperError as exc:
        raise DomainFailure(str(exc)) from exc
    mode = phi.convention if args.mode is None else MODES[args.mode]
    q = inverse.invert(phi, mode)
    rng = np.random.default_rng(args.seed)
    poles = list(phi.poles()) + list(inverse.reconstruct(phi, mode).poles())
    pts = sample_points(rng, 20, poles)
    err_rt = inverse.roundtrip_error(phi, mode, pts)
    err.write(f"invert: round-trip error {err_rt:.3e} at 20 sample points\n")
    if err_rt > 1e-8:
        raise DomainFailure(f"round-trip check failed ({err_rt:.3e})")
    _emit_json(out, quadruple_to_doc(q))
    return EXIT_OK


def cmd_evolve(args, out, err, stdin):
    q = _load_quadruple(args, stdin)
    _require_valid(q, args)
    require_strong(q, need_i_free=True)
    z = args.z
    steps = []
    for k in range(args.kmax + 1):
        c = evolution.gdhm_C(q, args.t, k)
        inv = discrete.involution_check(c, q.m1, q.m2)
        ann = evolution.annihilation_report(q, args.t, k)
        hp, hm = evolution.gdhm_H(q, args.t, k)
        steps.append(
            {
                "k": k,
                "C": [[_cplx(v) for v in row] for row in c],
                "hermitianResidual": inv.hermitian_residual,
                "involutionResidual": inv.involution_residual,
                "annihilationResiduals": list(ann),
                "hIdentityResidual": discrete.h_identity_residual(hp, hm),
                "gdhmResidual": evolution.gdhm_residual(q, args.t, k),
                "zccResidual": evolution.zcc_residual(q, args.t, k, z),
            }
        )
    doc = {
        "t": args.t,
        "z": _cplx(z),
        "steps": steps,
        "weyl": realization_to_doc(evolution.weyl_evolution(q, args.t)),
    }
    _emit_json(out, doc)
    return EXIT_OK


def cmd_nlwave(args, out, err, stdin):
    q = _load_quadruple(args, stdin)
    _require_valid(q, args)
    require_strong(q)
    p = 2 if args.flow == "nls" else 3
    residual = evolution.nls_residual if p == 2 else evolution.mkdv_residual
    xs, ts = args.grid
    rows, samples = [], []
    h = args.h if args.h is not None else NLWAVE_STEP[args.flow]
    if not h > 0:
        raise DomainFailure("--h must be positive")
    worst = 0.0
    for t in ts:
        for i, x in enumerate(xs):
            v = evolution.vxt(q, x, t, p)
            rows.append([repr(float(x)), repr(float(t))] + _matrix_cells(v))
            samples.append({"x": float(x), "t": float(t), "v": [[_cplx(e) for e in r] for r in v]})
    # interior in x; t needs no margin since the flow is defined for all real t
    for t in ts:
        for x in xs[1:-1]:
            worst = max(worst, residual(q, x, t, h))
    err.write(f"nlwave: max {args.flow} residual over interior grid {worst:.3e}\n")
    if args.json:
        _emit_json(out, {"flow": args.flow, "samples": samples, "maxResidual": worst})
    else:
        _emit_csv(out, ["x", "t"] + _matrix_columns("v", q.m1, q.m2), rows)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------


def _global_options(parser, suppress):
    # declared on the main parser and again on each subcommand so the flags
    # may appear on either side of the subcommand name
    defaults = dict(tol=1e-9, seed=0, json=False)
    if suppress:
        defaults = dict.fromkeys(defaults, argparse.SUPPRESS)
    parser.add_argument("--tol", type=float, default=defaults["tol"],
                        help="admissibility tolerance (relative)")
    parser.add_argument("--seed", type=int, default=defaults["seed"],
                        help="seed for randomized self-checks")
    parser.add_argument("--json", action="store_true", default=defaults["json"],
                        help="machine-readable output")


def build_parser():
    parser = argparse.ArgumentParser(prog="skdirac", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="input document, or - for standard input")
        _global_options(p, suppress=True)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "check admissibility and strength of a quadruple")
    p = add("potential", cmd_potential, "sample v(x) or C_k as CSV")
    p.add_argument("--mode", choices=("c", "d"), default="c")
    p.add_argument("--xmax", type=float, default=5.0)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--kmax", type=int, default=10)
    p = add("weyl", cmd_weyl, "emit the Weyl function as a realization document")
    p.add_argument("--mode", choices=("c", "d"), default="c")
    p.add_argument("--t", type=float, default=None)
    p = add("invert", cmd_invert, "recover a quadruple from a realization document")
    p.add_argument("--mode", choices=("c", "d"), default=None)
    p = add("evolve", cmd_evolve, "GDHM solution report")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--z", type=parse_complex, default=complex(0, 2))
    p = add("nlwave", cmd_nlwave, "sample v(x, t) of the NLS or mKdV family")
    p.add_argument("--flow", choices=("nls", "mkdv"), required=True)
    p.add_argument("--h", type=float, default=None,
                   help="finite-difference step for the residual scan")
    p.add_argument("--grid", type=parse_grid, default=parse_grid("0:2:21,0:1:3"),
                   help="x0:x1:nx,t0:t1:nt")
    return parser


def main(argv=None, stdout=None, stderr=None, stdin=None):
    out = sys.stdout if stdout is None else stdout
    err = sys.stderr if stderr is None else stderr
    inp = sys.stdin if stdin is None else stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for name in ("steps", "kmax"):
        if getattr(args, name, 0) < 0:
            err.write(f"{args.command}: --{name} must be non-negative\n")
            return EXIT_PARSE
    try:
        return args.func(args, out, err, inp)
    except (DocumentError, json.JSONDecodeError) as exc:
        err.write(f"{args.command}: {exc}\n")
        return EXIT_PARSE
    except (DomainFailure, DiracError, ValueError, np.linalg.LinAlgError) as exc:
        err.write(f"{args.command}: {exc}\n")
        return EXIT_DOMAIN
