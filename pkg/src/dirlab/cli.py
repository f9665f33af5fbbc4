"""Command-line front end.

Exit codes: 0 on success or passing verification, 1 on a failed
verification or residual check, 2 on usage or numerical errors.
"""

from __future__ import annotations

import argparse
import io
import json
import sys

import numpy as np

from . import counting as C
from . import operators as O
from . import space as D
from . import verify as V
from .config import DEFAULTS
from .errors import ContractError, ConvergenceError, QuadratureError, SymbolSpecError
from .symbols import parse_symbol

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class _UsageError(Exception):
    pass


def _grid(text: str):
    try:
        nr, nt = text.lower().split("x")
        nr, nt = int(nr), int(nt)
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like NRxNT, got {text!r}") from None
    if nr < 1 or nt < 1:
        raise argparse.ArgumentTypeError(f"grid sizes must be positive, got {text!r}")
    return nr, nt


def _trunc_list(text: str):
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--trunc takes comma-separated integers, got {text!r}") from None
    if not vals or any(v < 1 for v in vals):
        raise argparse.ArgumentTypeError(f"truncations must be positive, got {text!r}")
    return vals


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--symbol", help="symbol spec, e.g. 'mobius:p=0.5' or 'mobius:p=0.5|slit:c=0.5'")
    common.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    common.add_argument("--format", choices=("csv", "json"), default=None)

    field_opts = argparse.ArgumentParser(add_help=False)
    field_opts.add_argument("--grid", type=_grid, metavar="NRxNT", help="radial x angular nodes")
    field_opts.add_argument("--rmax", type=float, help="outer radius of the w-grid")
    field_opts.add_argument("--contour", type=float, help="contour radius rho_c")

    p = _Parser(prog="dirlab", description="Dirichlet-space composition operator toolkit")
    p.add_argument("--show-config", action="store_true", help="print the default configuration and exit")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    g = sub.add_parser("gram", parents=[common], help="Gram matrix of symbol powers")
    g.add_argument("--size", type=int, default=DEFAULTS.gram_size)
    g.add_argument("--trunc", type=int, default=DEFAULTS.gram_truncation)

    n = sub.add_parser("norm", parents=[common], help="compression-norm ladder")
    n.add_argument("--trunc", type=_trunc_list, default=list(DEFAULTS.truncation_ladder))
    n.add_argument("--restricted", action="store_true", help="restrict to functions vanishing at 0")
    n.add_argument("--tol", type=float, default=DEFAULTS.power_tol)

    e = sub.add_parser("essnorm", parents=[common], help="essential-norm profile s_n")
    e.add_argument("--trunc", type=int, default=DEFAULTS.norm_truncation)
    e.add_argument("--nmax", type=int, default=DEFAULTS.essnorm_n_max)
    e.add_argument("--tol", type=float, default=DEFAULTS.power_tol)

    sub.add_parser("counting", parents=[common, field_opts], help="counting-function field")

    r = sub.add_parser("radialtest", parents=[common, field_opts], help="essential radiality test")
    r.add_argument("--tol", type=float, default=DEFAULTS.radial_tol)

    d = sub.add_parser("defect", parents=[common], help="fullness defect")
    d.add_argument("--grid", type=_grid, metavar="NRxNT")

    cv = sub.add_parser("covcheck", parents=[common], help="change-of-variable residual")
    cv.add_argument("--grid", type=_grid, metavar="NRxNT")
    cv.add_argument("--tol", type=float, default=5e-3)

    v = sub.add_parser("verify", parents=[common], help="theorem verification reports")
    v.add_argument("--theorem", choices=V.THEOREM_IDS, help="single check (default: the whole suite)")
    return p


def _need_symbol(args):
    if not args.symbol:
        raise _UsageError(f"dirlab {args.command}: --symbol is required")
    return parse_symbol(args.symbol)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _complex_json(z):
    z = complex(z)
    return {"re": z.real, "im": z.imag}


def _cmd_gram(args):
    sym = _need_symbol(args)
    if args.size < 1:
        raise _UsageError("--size must be at least 1")
    G = D.gram_powers(sym, size=args.size, N=args.trunc)
    if args.format == "json":
        return _dumps({
            "symbol": sym.name, "truncation": G.truncation, "size": G.size,
            "max_off_diagonal": G.max_off_diagonal(),
            "unsafe_powers": list(G.unsafe_powers),
            "entries": [[_complex_json(v) for v in row] for row in G.entries],
        }), EXIT_OK
    return G.to_csv(), EXIT_OK


def _cmd_norm(args):
    sym = _need_symbol(args)
    ladder = O.norm_ladder(sym, args.trunc, restricted=args.restricted, tol=args.tol)
    p = abs(sym.value_at_zero)
    target = None if args.restricted else O.norm_formula(p)
    if args.format == "csv":
        buf = io.StringIO()
        buf.write("truncation,value,iterations,residual\n")
        for r in ladder:
            buf.write(f"{r.truncation},{r.value:.17g},{r.iterations},{r.residual:.17g}\n")
        return buf.getvalue(), EXIT_OK
    vals = [r.value for r in ladder]
    return _dumps({
        "symbol": sym.name,
        "restricted": args.restricted,
        "phi0_modulus": p,
        "formula_target": target,
        "nondecreasing": all(b >= a - 1e-12 * a for a, b in zip(vals, vals[1:])),
        "ladder": [r.as_dict() for r in ladder],
    }), EXIT_OK


def _cmd_essnorm(args):
    sym = _need_symbol(args)
    M = O.build_matrix(sym, args.trunc)
    prof = O.essential_norm_profile(M, args.nmax, tol=args.tol)
    if args.format == "json":
        return _dumps({"symbol": sym.name, "truncation": args.trunc,
                       "profile": [{"n": i + 1, "s_n": s} for i, s in enumerate(prof)]}), EXIT_OK
    buf = io.StringIO()
    buf.write("n,s_n\n")
    for i, s in enumerate(prof):
        buf.write(f"{i + 1},{s:.17g}\n")
    return buf.getvalue(), EXIT_OK


def _field_from_args(sym, args):
    nr, nt = args.grid or (DEFAULTS.field_n_r, DEFAULTS.field_n_theta)
    rmax = DEFAULTS.field_r_max if args.rmax is None else args.rmax
    if args.contour is not None:
        rho = args.contour
    else:
        rho = DEFAULTS.contour_radius if sym.boundary_regular else DEFAULTS.contour_radius_singular
    return C.counting_field(sym, nr, nt, r_max=rmax, rho_c=rho)


def _area_field_from_args(sym, args):
    if args.grid is None:
        return C.area_field(sym)
    return C.area_field(sym, *args.grid)


def _cmd_counting(args):
    sym = _need_symbol(args)
    fld = _field_from_args(sym, args)
    if args.format == "json":
        return _dumps({
            "symbol": sym.name, "contour_radius": fld.contour_radius, "r_max": fld.r_max,
            "shape": list(fld.values.shape), "snap_fraction": fld.snap_fraction,
            "guarded": fld.guarded_count, "failed": fld.failed_count,
            "unresolved_mass": fld.unresolved_mass,
            "integral": C.counting_integral(fld),
        }), EXIT_OK
    return fld.to_csv(), EXIT_OK


def _cmd_radialtest(args):
    sym = _need_symbol(args)
    fld = _field_from_args(sym, args)
    radial, rep = C.is_essentially_radial(sym, tol=args.tol, field=fld)
    if args.format == "csv":
        return C.profiles_to_csv(C.radial_moments(fld, DEFAULTS.radial_k_max)), EXIT_OK
    out = {"symbol": sym.name}
    out.update(rep.as_dict())
    return _dumps(out), EXIT_OK


def _cmd_defect(args):
    sym = _need_symbol(args)
    fld = _area_field_from_args(sym, args)
    out = {"symbol": sym.name, "fullness_defect": C.fullness_defect(sym, fld),
           "contour_radius": fld.contour_radius, "snap_fraction": fld.snap_fraction}
    if args.format == "csv":
        return "symbol,fullness_defect\n" + f"{sym.name},{out['fullness_defect']:.17g}\n", EXIT_OK
    return _dumps(out), EXIT_OK


def _cmd_covcheck(args):
    sym = _need_symbol(args)
    fld = _area_field_from_args(sym, args)
    rows = []
    for label, f in (("1", None), ("|w|^2", lambda w: np.abs(w) ** 2)):
        lhs, rhs = C.change_of_variable_sides(sym, f, fld)
        rows.append({"f": label, "lhs": lhs, "rhs": rhs, "residual": abs(lhs - rhs)})
    ok = all(r["residual"] <= args.tol for r in rows)
    if args.format == "csv":
        buf = io.StringIO()
        buf.write("f,lhs,rhs,residual\n")
        for r in rows:
            buf.write(f"{r['f']},{r['lhs']:.17g},{r['rhs']:.17g},{r['residual']:.17g}\n")
        text = buf.getvalue()
    else:
        text = _dumps({"symbol": sym.name, "tol": args.tol, "passed": ok, "checks": rows})
    return text, EXIT_OK if ok else EXIT_FAIL


def _cmd_verify(args):
    if args.format == "csv":
        raise _UsageError("dirlab verify: reports are JSON only")
    if args.theorem is None:
        if args.symbol:
            raise _UsageError("dirlab verify: --symbol needs --theorem")
        reports = V.verify_all()
    else:
        if args.symbol:
            parse_symbol(args.symbol)
        reports = [V.verify(args.theorem, args.symbol)]
    for r in reports:
        print(r.summary(), file=sys.stderr)
    text = V.reports_to_json(reports) + "\n"
    return text, EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


COMMANDS = {
    "gram": _cmd_gram,
    "norm": _cmd_norm,
    "essnorm": _cmd_essnorm,
    "counting": _cmd_counting,
    "radialtest": _cmd_radialtest,
    "defect": _cmd_defect,
    "covcheck": _cmd_covcheck,
    "verify": _cmd_verify,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.show_config:
            sys.stdout.write(_dumps(DEFAULTS.as_dict()))
            return EXIT_OK
        if args.command is None:
            raise _UsageError("dirlab: a subcommand is required")
        text, code = COMMANDS[args.command](args)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_ERROR
    except SystemExit as exc:
        # --help exits 0 through argparse
        return int(exc.code or 0)
    except (SymbolSpecError, ContractError, QuadratureError, ConvergenceError,
            ArithmeticError) as exc:
        print(f"dirlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())
