"""Command-line front end.

Subcommands
-----------
``eval {fermion,em}``  point evaluations printed as one JSON document
``em``                 shorthand for ``eval em``
``verify``             two-route identity checks, JSON lines plus a digits table
``sweep --fig NAME``   force-sign grids and convergence profiles as CSV
``critical --mode``    critical lengths as JSON

Exit codes: 0 success, 1 I/O failure, 2 bad arguments, 3 a series did
not converge, 4 an identity agreed to fewer than :data:`MIN_DIGITS`
digits, 5 a root bracket held no sign change.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time

from . import __version__, analysis, em, fermion
from .errors import BracketError, DomainError, SeriesNonConvergence
from .geometry import AXES, BoxGeometry
from .identities import IDENTITY_NAMES, IDENTITY_POLICY, REQUIRED, IdentityParams, verify_identity
from .identity_grid import GRID_VERSION, grid_params
from .series import POLICY_ENV_VAR, PrecisionPolicy

UNITS = "natural units, hbar = c = k_B = 1"
MIN_DIGITS = 7

EXIT_OK, EXIT_IO, EXIT_ARGS, EXIT_SERIES, EXIT_VERIFY, EXIT_BRACKET = 0, 1, 2, 3, 4, 5

SWEEP_PRESETS = {
    "t0-regions": "force-sign regions over (a, c) at b = 1, T = 0",
    "t1-regions": "force-sign regions over (a, c) at b = 1, T = 1",
    "zero-surface-T1": "sign of the force along a over [0.1, 2]^3 at T = 1",
    "plate-profile": "plate densities normalized by the infinite-plate limit",
    "waveguide-profile": "waveguide densities normalized by the infinite-guide limit",
}
CRITICAL_MODES = ("aspect-t0", "c-cr-vs-T", "b-cr-vs-T", "c-cr-vs-b", "zero-diagonal")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _add_policy_flags(p):
    p.add_argument("--tol", type=float, help="relative truncation tolerance of every series")
    p.add_argument("--max-index", type=int, dest="max_index",
                   help="largest extent along any summation axis")
    p.add_argument("--policy", help=f"JSON policy file (default: ${POLICY_ENV_VAR})")
    p.add_argument("--out", help="output path; a manifest is embedded or written alongside")


def _add_geometry_flags(p, T_default=0.0):
    for edge in AXES:
        p.add_argument(f"--{edge}", type=float, default=1.0, help=f"edge {edge}")
    p.add_argument("--T", type=float, default=T_default, help="temperature")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="boxcasimir",
                     description="Casimir energies and forces in a rectangular box.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_eval = sub.add_parser("eval", help="evaluate energy and forces at one point")
    p_eval.add_argument("field", choices=("fermion", "em"))
    _add_eval_flags(p_eval)

    p_em = sub.add_parser("em", help="same as 'eval em'")
    _add_eval_flags(p_em)

    p_ver = sub.add_parser("verify", help="compare direct and accelerated sides of an identity")
    p_ver.add_argument("--identity", default="all", choices=("all",) + IDENTITY_NAMES)
    for name in ("alpha", "theta", "sigma", "gamma", "m", "a", "b", "c"):
        p_ver.add_argument(f"--{name}", type=float)
    p_ver.add_argument("--min-digits", type=int, default=MIN_DIGITS, dest="min_digits")
    _add_policy_flags(p_ver)

    p_sw = sub.add_parser("sweep", help="write a figure grid as CSV")
    p_sw.add_argument("--fig", required=True, choices=tuple(SWEEP_PRESETS))
    p_sw.add_argument("--amax", type=float, default=3.0)
    p_sw.add_argument("--cmax", type=float, default=3.0)
    p_sw.add_argument("--num", type=int, help="points per grid axis")
    p_sw.add_argument("--T", type=float, help="temperature (overrides the preset)")
    p_sw.add_argument("--workers", type=int, default=1)
    _add_policy_flags(p_sw)

    p_cr = sub.add_parser("critical", help="locate critical lengths")
    p_cr.add_argument("--mode", required=True, choices=CRITICAL_MODES)
    p_cr.add_argument("--values", type=_floats, help="swept values, comma separated")
    p_cr.add_argument("--a", type=float, default=2.0, help="edge a for zero-diagonal")
    p_cr.add_argument("--b", type=float, default=0.5, help="fixed b for c-cr-vs-T")
    p_cr.add_argument("--T", type=float, default=1.0)
    p_cr.add_argument("--bracket", type=_floats, help="root bracket for aspect-t0 / zero-diagonal")
    p_cr.add_argument("--root-tol", type=float, default=analysis.ROOT_TOL, dest="root_tol")
    _add_policy_flags(p_cr)
    return parser


def _add_eval_flags(p):
    _add_geometry_flags(p)
    p.add_argument("--geometry", choices=("box", "waveguide", "plate"), default="box",
                   help="finite box, infinite waveguide (b x c) or plates at distance b")
    p.add_argument("--force", "--axis", dest="force", action="append", choices=AXES,
                   default=None, help="also report the force along this edge (repeatable)")
    _add_policy_flags(p)


# -- helpers ----------------------------------------------------------------------

def _policy(args, base: PrecisionPolicy | None = None) -> PrecisionPolicy:
    if args.policy:
        pol = PrecisionPolicy.from_file(args.policy)
    elif os.environ.get(POLICY_ENV_VAR):
        pol = PrecisionPolicy.from_env()
    else:
        pol = base if base is not None else PrecisionPolicy()
    return pol.with_overrides(rel_tol=args.tol, max_index=args.max_index)


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("handler",)}


def make_manifest(argv, args, policy: PrecisionPolicy, started: float) -> dict:
    """Everything needed to rerun a command and compare its numbers."""
    return {
        "command": ["boxcasimir", *argv],
        "params": _params(args),
        "policy": policy.to_dict(),
        "version": __version__,
        "wall_time_s": time.perf_counter() - started,
    }


def _record(quantity, value, normalization="total"):
    return {"quantity": quantity, "value": float(value),
            "error_bound": float(getattr(value, "error_bound", 0.0)),
            "normalization": normalization, "units": UNITS}


def _emit_json(doc, out):
    text = json.dumps(doc, indent=2) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _sidecar(out):
    return out + ".manifest.json"


# -- subcommands -----------------------------------------------------------------

def cmd_eval(args, argv, started):
    policy = _policy(args)
    forces = args.force or []
    T = args.T
    if args.field == "em":
        if forces or args.geometry != "box":
            raise DomainError("the em field supports box energies only")
        geom = BoxGeometry(args.a, args.b, args.c)
        e0 = em.em_energy_T0(geom, policy)
        if T == 0:
            records = [_record("energy", e0)]
        else:
            res = em.em_energy_finiteT(geom, T, policy)
            records = [_record("energy", res.f_phys), _record("e0_ren", res.e0_ren),
                       _record("f1", res.f1), _record("f2", res.f2),
                       _record("delta_T_F0", res.delta_T_F0),
                       _record("log_channel", res.log_channel)]
    elif args.geometry == "box":
        res = fermion.evaluate_box((args.a, args.b, args.c), T, forces, policy)
        records = [_record("energy", res.energy)]
        records += [_record(f"force_{ax}", res.forces[ax]) for ax in forces]
    else:
        if args.geometry == "waveguide":
            res = fermion.waveguide(args.b, args.c, T, policy)
            allowed = ("b", "c")
        else:
            res = fermion.parallel_plate(args.b, T, policy)
            allowed = ("b",)
        bad = [ax for ax in forces if ax not in allowed]
        if bad:
            raise DomainError(f"{args.geometry} has no force along {', '.join(bad)}")
        records = [_record("energy_density", res.energy, res.normalization)]
        records += [_record(f"force_{ax}_density", res.forces[ax], res.normalization)
                    for ax in forces]
    doc = {"field": args.field, "geometry": args.geometry,
           "edges": {"a": args.a, "b": args.b, "c": args.c}, "T": T,
           "records": records, "manifest": make_manifest(argv, args, policy, started)}
    _emit_json(doc, args.out)
    return EXIT_OK


def cmd_verify(args, argv, started):
    policy = _policy(args, IDENTITY_POLICY)
    names = IDENTITY_NAMES if args.identity == "all" else (args.identity,)
    given = {k: getattr(args, k) for k in ("alpha", "theta", "sigma", "gamma", "m", "a", "b", "c")
             if getattr(args, k) is not None}
    if given and args.identity == "all":
        raise DomainError("explicit parameters need a single --identity")
    reports = []
    for name in names:
        if given:
            missing = [k for k in REQUIRED[name] if k not in given]
            if missing:
                raise DomainError(f"{name} needs --{' --'.join(missing)}")
            param_sets = [IdentityParams(**{k: given[k] for k in REQUIRED[name]})]
        else:
            param_sets = grid_params(name)
        reports += [verify_identity(name, p, policy) for p in param_sets]

    lines = [json.dumps(r.to_dict()) for r in reports]
    manifest = make_manifest(argv, args, policy, started)
    manifest["grid_version"] = GRID_VERSION
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        _emit_json(manifest, _sidecar(args.out))
    else:
        sys.stdout.write("\n".join(lines) + "\n")

    worst = {}
    for r in reports:
        worst[r.identity] = min(worst.get(r.identity, 99), r.digits_agreed)
    width = max(len(n) for n in worst)
    table = io.StringIO()
    table.write(f"{'identity':<{width}}  cases  min_digits\n")
    for name, d in worst.items():
        count = sum(1 for r in reports if r.identity == name)
        table.write(f"{name:<{width}}  {count:>5}  {d:>10}\n")
    sys.stderr.write(table.getvalue())
    failed = [n for n, d in worst.items() if d < args.min_digits]
    if failed:
        sys.stderr.write(f"fewer than {args.min_digits} digits: {', '.join(failed)}\n")
        return EXIT_VERIFY
    return EXIT_OK


def _write_csv(header, rows, out, manifest):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if v is None else "%.17g" % v if isinstance(v, float) else v
                    for v in row])
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(buf.getvalue())
        _emit_json(manifest, _sidecar(out))
    else:
        sys.stdout.write(buf.getvalue())


def cmd_sweep(args, argv, started):
    policy = _policy(args)
    fig = args.fig
    if fig in ("t0-regions", "t1-regions"):
        num = args.num or 21
        T = args.T if args.T is not None else (0.0 if fig == "t0-regions" else 1.0)
        if args.amax < 1 or args.cmax < 1:
            raise DomainError("--amax and --cmax must be >= 1 (edges are in units of b)")
        rmap = analysis.classify_regions({"min": 1.0, "max": args.amax, "num": num},
                                         {"min": 1.0, "max": args.cmax, "num": num},
                                         T=T, policy=policy, workers=args.workers)
        header, rows = analysis.CSV_COLUMNS, [
            [getattr(r, k) for k in analysis.CSV_COLUMNS] for r in rmap.records]
        summary = {str(k): v for k, v in rmap.regions().items()}
    elif fig == "zero-surface-T1":
        num = args.num or 20
        T = args.T if args.T is not None else 1.0
        axis = {"min": 0.1, "max": 2.0, "num": num}
        rmap = analysis.zero_force_surface(T, axis, axis, axis, policy=policy,
                                           workers=args.workers)
        header, rows = analysis.CSV_COLUMNS, [
            [getattr(r, k) for k in analysis.CSV_COLUMNS] for r in rmap.records]
        summary = {"crossings": len(rmap.zero_crossings), **rmap.diagnostics}
    else:
        T = args.T if args.T is not None else 1.0
        family = "plate_edge" if fig == "plate-profile" else "waveguide_length"
        num = args.num or 31
        prof = analysis.normalized_convergence_profile(
            family, T, [1.0 + 3.0 * i / (num - 1) for i in range(num)], policy=policy)
        header = ("edge", "energy_ratio", "force_ratio")
        rows = list(zip(prof.edges, prof.energy_ratio, prof.force_ratio))
        summary = {"convergence_edge": prof.convergence_edge}
    manifest = make_manifest(argv, args, policy, started)
    manifest["summary"] = summary
    _write_csv(header, rows, args.out, manifest)
    sys.stderr.write(json.dumps(summary) + "\n")
    return EXIT_OK


def cmd_critical(args, argv, started):
    policy = _policy(args)
    mode = args.mode
    if mode == "aspect-t0":
        bracket = tuple(args.bracket) if args.bracket else analysis.ASPECT_BRACKET
        ratio = analysis.find_critical_aspect_T0(1.0, bracket, args.root_tol, policy)
        doc = {"mode": mode, "ratio": ratio, "bracket": list(bracket),
               "tol": args.root_tol}
    elif mode == "zero-diagonal":
        lo, hi = args.bracket if args.bracket else (1.2, 2.0)
        root = analysis.diagonal_zero_force(args.a, args.T, lo, hi, args.root_tol, policy)
        doc = {"mode": mode, "a": args.a, "T": args.T, "root": root.value,
               "bracket": [root.lo, root.hi]}
    else:
        defaults = {
            "c-cr-vs-T": [1.0, math.pi, 2 * math.pi],
            "b-cr-vs-T": [0.6, 0.8, 0.9, 1.0, 1.1, 1.2, 1.3, 1.5, 2.0],
            "c-cr-vs-b": [0.2, 0.3, 0.5, 0.8, 1.0],
        }
        internal = {"c-cr-vs-T": "c_cr_vs_T", "b-cr-vs-T": "b_cr_vs_T",
                    "c-cr-vs-b": "c_cr_vs_b_at_T"}[mode]
        curve = analysis.find_critical_curve(internal, args.values or defaults[mode],
                                             T=args.T, b=args.b, tol=args.root_tol,
                                             policy=policy)
        doc = curve.to_dict()
    doc["manifest"] = make_manifest(argv, args, policy, started)
    _emit_json(doc, args.out)
    return EXIT_OK


HANDLERS = {"eval": cmd_eval, "em": cmd_eval, "verify": cmd_verify,
            "sweep": cmd_sweep, "critical": cmd_critical}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    started = time.perf_counter()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"boxcasimir: error: {exc}\n")
        return EXIT_ARGS
    if args.command == "em":
        args.field = "em"
    try:
        return HANDLERS[args.command](args, argv, started)
    except SeriesNonConvergence as exc:
        sys.stderr.write(f"boxcasimir: series {exc.series!r} did not converge "
                         f"after {exc.terms_used} terms (error bound {exc.error_bound:.3g})\n")
        return EXIT_SERIES
    except BracketError as exc:
        sys.stderr.write(f"boxcasimir: bracket failure: {exc}\n")
        return EXIT_BRACKET
    except (DomainError, ValueError) as exc:
        sys.stderr.write(f"boxcasimir: error: {exc}\n")
        return EXIT_ARGS
    except OSError as exc:
        sys.stderr.write(f"boxcasimir: cannot access {exc.filename or ''}: {exc.strerror}\n")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
