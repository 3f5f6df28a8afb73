"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 bad input, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import display, problem
from .conv_analog import conv_atoms
from .conv_discrete import dconv_atoms
from .errors import (
    DuplicateRoots,
    ExpoconvError,
    InputNotExponential,
    InsufficientInitialValues,
    ProblemFileError,
    ZeroRootAtom,
)
from .lti import solve, verify
from .signals import AnalogSignal, power_form, sample
from .vandermonde import RootMultiset, build_confluent, residual_log, solve_system

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_NUMERIC = 0, 1, 2, 3


class _UsageError(Exception):
    pass


# errors that describe a bad request rather than a numerical breakdown
_INPUT_ERRORS = (ProblemFileError, _UsageError, ZeroRootAtom, DuplicateRoots,
                 InputNotExponential, InsufficientInitialValues)


def _parse_grid(text):
    try:
        a, b, n = text.split(":")
        return float(a), float(b), int(n)
    except ValueError:
        raise _UsageError(f"--grid expects START:STOP:N, got {text!r}") from None


def _parse_root(text):
    text = text.lstrip("=").strip()
    mult = 1
    if ":" in text:
        text, m = text.rsplit(":", 1)
        try:
            mult = int(m)
        except ValueError:
            raise _UsageError(f"bad multiplicity in {text}:{m}") from None
    try:
        return complex(text.replace("i", "j").replace(" ", "")), mult
    except ValueError:
        raise _UsageError(f"cannot read root {text!r}; use forms like -2, 0.5+0.5j, 2j") from None


def _grid_points(kind, grid, sample_spec):
    if grid is None and sample_spec is not None:
        grid = (sample_spec.start, sample_spec.stop, sample_spec.count)
    if grid is None:
        grid = (0.0, 5.0, 51) if kind == "analog" else (0.0, 20.0, 21)
    a, b, n = grid
    if n < 1 or b < a:
        raise _UsageError("grid needs N >= 1 and STOP >= START")
    pts = np.linspace(a, b, n)
    if kind == "discrete":
        pts = np.unique(np.round(pts).astype(int))
    return pts


def _write_csv(path, s, pts):
    lines = []
    if isinstance(s, AnalogSignal):
        vals = sample(s, pts)
        lines.append("t,re,im")
        for t, v in zip(pts, vals):
            lines.append(f"{t:.17g},{v.real:.17g},{v.imag:.17g}")
    else:
        # same split as the printed closed form: formula value plus impulse
        pf = power_form(s)
        imps = dict(pf.impulses)
        lines.append("k,value,impulse")
        for k in pts:
            k = int(k)
            reg = pf.formula(k) if k >= pf.start else 0j
            w = imps.get(k, 0j)
            imp = f"{w.real:.17g}" if w != 0 else ""
            lines.append(f"{k},{reg.real:.17g},{imp}")
    text = "\n".join(lines) + "\n"
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _forms(args):
    want = getattr(args, "form", None)
    return (want != "complex", want != "real")


def cmd_solve(args, out):
    pf = problem.load(args.file)
    if args.dump_normalized:
        out.write(problem.dumps(pf))
        return EXIT_OK
    grid = _parse_grid(args.grid) if args.grid else None
    pts = _grid_points(pf.problem.kind, grid, pf.sample) if args.csv else None
    sol = solve(pf.problem)
    real, cplx = _forms(args)
    p = pf.problem
    lines = [
        f"kind: {p.kind}",
        f"order: {p.order}",
        f"roots: {display.fmt_multiset(sol.multiset)}",
    ]
    if sol.zero_roots:
        lines.append(f"zero roots: {sol.zero_roots} (reduced order {p.order - sol.zero_roots})")
    for title, name, s in (
        ("impulse response", "h", sol.impulse_response),
        ("homogeneous", "y_h", sol.homogeneous),
        ("particular", "y_p", sol.particular),
        ("total", "y", sol.total),
    ):
        lines.append(f"[{title}]")
        lines.extend("  " + ln for ln in display.render(name, s, real, cplx))
    lines.append(f"max solve residual: {sol.max_residual:.3g}")
    out.write("\n".join(lines) + "\n")
    if args.csv:
        _write_csv(args.csv, sol.total, pts)
    return EXIT_OK


def cmd_convolve(args, out):
    if not args.root:
        raise _UsageError("give at least one -r ROOT[:MULT]")
    pairs = [_parse_root(r) for r in args.root]
    try:
        rm = RootMultiset.merged(pairs)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    with residual_log() as log:
        sys_ = solve_system(build_confluent(rm))
        s = conv_atoms(rm) if args.mode == "analog" else dconv_atoms(rm)
    real, cplx = _forms(args)
    lines = [f"roots: {display.fmt_multiset(rm)}"]
    lines.append("A = (" + ", ".join(display.fmt_complex(a) for a in sys_.solution) + ")")
    if args.show_matrix:
        lines.append("V =")
        for row in sys_.matrix:
            lines.append("  [" + ", ".join(display.fmt_complex(v) for v in row) + "]")
    lines.extend(display.render("h", s, real, cplx))
    lines.append(f"residual: {max(x.residual for x in log):.3g}")
    out.write("\n".join(lines) + "\n")
    if args.csv:
        grid = _parse_grid(args.grid) if args.grid else None
        _write_csv(args.csv, s, _grid_points(args.mode, grid, None))
    return EXIT_OK


def cmd_verify(args, out):
    pf = problem.load(args.file)
    kind = pf.problem.kind
    grid = None
    if args.grid:
        a, b, n = _parse_grid(args.grid)
        grid = np.linspace(a, b, n)
        if kind == "discrete":
            grid = np.unique(np.round(grid).astype(int))
    rep = verify(pf.problem, grid=grid, tol=args.tol)
    var = "t" if kind == "analog" else "k"
    loc = display.fmt_real(rep.location)
    verdict = "PASS" if rep.passed else "FAIL"
    out.write(
        f"verify: {verdict} max deviation {rep.max_deviation:.3g} at {var}={loc} "
        f"(oracle {rep.oracle}, {rep.points} points, tol {args.tol:g})\n"
        f"equation residual: {rep.equation_residual:.3g}\n"
    )
    return EXIT_OK if rep.passed else EXIT_FAIL


def build_parser():
    ap = argparse.ArgumentParser(
        prog="expoconv",
        description="Closed-form convolution of exponential signals and "
                    "constant-coefficient IVP solving.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def forms(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--real", dest="form", action="store_const", const="real",
                       help="print only the cos/sin form")
        g.add_argument("--complex", dest="form", action="store_const", const="complex",
                       help="print only the complex-exponential form")

    ps = sub.add_parser("solve", help="solve an IVP problem file")
    ps.add_argument("file")
    ps.add_argument("--csv", metavar="PATH", help="write samples of the total solution")
    ps.add_argument("--grid", metavar="START:STOP:N", help="sampling grid for --csv")
    ps.add_argument("--dump-normalized", action="store_true",
                    help="print the problem with input sugar expanded, then exit")
    forms(ps)
    ps.set_defaults(func=cmd_solve)

    pc = sub.add_parser("convolve", help="convolve exponential atoms")
    mode = pc.add_mutually_exclusive_group(required=True)
    mode.add_argument("--analog", dest="mode", action="store_const", const="analog")
    mode.add_argument("--discrete", dest="mode", action="store_const", const="discrete")
    pc.add_argument("-r", "--root", action="append", metavar="ROOT[:MULT]",
                    help="atom root, repeatable; write -r=-2+2j for complex negatives")
    pc.add_argument("--show-matrix", action="store_true")
    pc.add_argument("--csv", metavar="PATH")
    pc.add_argument("--grid", metavar="START:STOP:N")
    forms(pc)
    pc.set_defaults(func=cmd_convolve)

    pv = sub.add_parser("verify", help="compare a solution against a brute-force oracle")
    pv.add_argument("file")
    pv.add_argument("--tol", type=float, default=1e-6)
    pv.add_argument("--grid", metavar="START:STOP:N")
    pv.set_defaults(func=cmd_verify)
    return ap


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    stage = args.command
    try:
        return args.func(args, out)
    except _INPUT_ERRORS as exc:
        print(f"expoconv {stage}: input error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ExpoconvError as exc:
        print(f"expoconv {stage}: numerical failure ({type(exc).__name__}): {exc}",
              file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
