"""Command-line front end.

Subcommands
-----------
zeta      geometric or spectral zeta value, invariants, optional oracle check
thermo    table of log Z, F, S, c over a temperature grid
casimir   critical-volume report
validate  run a validation suite

Exit codes: 0 ok, 1 validation failure, 2 configuration error, 3 pole at
the requested argument, 4 uncertified convergence.
"""
import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from . import casimir, geomzeta, lattice, thermo, validate
from ._parallel import ordered_map, worker_count
from .errors import ConvergenceError, DomainError, PoleError, ZetaboxError
from .geomzeta import Geometry, GeometryKind, ModelParams

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_POLE, EXIT_CONVERGENCE = 0, 1, 2, 3, 4

log = logging.getLogger("zetabox")

THERMO_COLUMNS = ("T", "logZ", "F", "S", "c", "err")
VALIDATE_COLUMNS = ("criterion", "check", "measured", "expected", "tol", "passed", "note")
# oracle radius per lattice dimension for --check
_CHECK_RADIUS = {1: 20000, 2: 300, 3: 40, 4: 12}


class ConfigError(ZetaboxError):
    pass


@dataclass
class RunConfig:
    kind: GeometryKind
    D: int
    l: float
    q: float
    rho: float
    grid: Tuple[float, ...]
    s: Optional[complex]
    fmt: str
    out: Optional[str]
    tol: Optional[float]

    @property
    def geometry(self):
        return Geometry(self.kind, self.D, self.l)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _parse_s(text):
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError("--s takes RE or RE,IM")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse s from {text!r}") from None
    return complex(vals[0], vals[1] if len(vals) == 2 else 0.0)


def _positive(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--geometry", choices=["box", "torus"], default="box")
    common.add_argument("--dim", type=int, default=3, help="spatial dimension D")
    common.add_argument("--edge", type=float, default=1.0, help="edge length l")
    common.add_argument("--mass", type=float, default=0.0,
                        help="additive eigenvalue shift q (>= 0)")
    common.add_argument("--rho", type=float, default=1.0, help="renormalization scale")
    common.add_argument("--temp", type=float, help="single temperature")
    common.add_argument("--tmin", type=float)
    common.add_argument("--tmax", type=float)
    common.add_argument("--steps", type=int, default=1)
    common.add_argument("--log-grid", action="store_true", help="log-spaced temperature grid")
    common.add_argument("--format", choices=["csv", "json"], dest="fmt")
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--tol", type=_positive, help="tolerance override for checks")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on standard error")

    p = argparse.ArgumentParser(prog="zetabox", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zeta", parents=[common], help="zeta values and invariants")
    z.add_argument("--s", type=_parse_s, default=complex(2.0), help="argument RE[,IM]")
    z.add_argument("--invariants", action="store_true",
                   help="emit zeta(0) and zeta'(0) at --temp")
    z.add_argument("--check", action="store_true", help="emit the truncated-sum oracle alongside")
    z.set_defaults(fmt_default="json")

    t = sub.add_parser("thermo", parents=[common], help="thermodynamic table")
    t.add_argument("--step", type=_positive, help="finite-difference step (default T/11)")
    t.set_defaults(fmt_default="csv")

    c = sub.add_parser("casimir", parents=[common], help="critical-volume report")
    c.add_argument("--x0", type=_positive, default=casimir.X0_DEFAULT,
                   help="envelope parameter")
    c.set_defaults(fmt_default="json")

    v = sub.add_parser("validate", parents=[common], help="validation suites")
    v.add_argument("suite", choices=sorted(validate.SUITES))
    v.set_defaults(fmt_default="json")
    return p


def _grid(args):
    if args.tmin is None and args.tmax is None:
        return (args.temp,) if args.temp is not None else ()
    if args.tmin is None or args.tmax is None:
        raise ConfigError("--tmin and --tmax go together")
    if args.steps < 1:
        raise ConfigError("--steps must be >= 1")
    if not 0 < args.tmin:
        raise ConfigError("temperatures must be positive")
    if args.steps == 1:
        return (args.tmin,)
    if not args.tmin < args.tmax:
        raise ConfigError("--tmin must be below --tmax")
    if args.log_grid:
        pts = np.geomspace(args.tmin, args.tmax, args.steps)
    else:
        pts = np.linspace(args.tmin, args.tmax, args.steps)
    return tuple(float(x) for x in pts)


def make_config(args):
    try:
        kind = GeometryKind(args.geometry)
        Geometry(kind, args.dim, args.edge)
        if args.mass < 0:
            raise ConfigError("--mass must be >= 0")
        if not args.rho > 0:
            raise ConfigError("--rho must be positive")
        grid = _grid(args)
        worker_count()
    except (DomainError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    return RunConfig(kind=kind, D=args.dim, l=args.edge, q=args.mass, rho=args.rho, grid=grid,
                     s=getattr(args, "s", None), fmt=args.fmt or args.fmt_default,
                     out=args.out, tol=args.tol)


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _fmt_cell(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return "%.17g" % v
    return str(v)


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def render(payload, fmt, columns=None, rows=None):
    """JSON document or CSV table (header row, 17 significant digits)."""
    if fmt == "json":
        doc = dict(payload)
        doc["schema_version"] = SCHEMA_VERSION
        return json.dumps(_json_safe(doc), indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_fmt_cell(r.get(c)) for c in columns])
    return buf.getvalue()


def emit(text, out):
    if out:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _zeta_record(res, s):
    v = complex(res.value)
    return {"s_re": s.real, "s_im": s.imag, "value_re": v.real, "value_im": v.imag,
            "abs_error": res.abs_error, "representation": res.representation.value}


def _oracle_for(cfg, s, T):
    g = cfg.geometry
    if T is None:
        dim = g.D
        if dim == 0:
            raise ConfigError("--check needs D >= 1 or --temp")
        A = np.eye(dim)
        form = lattice.QuadraticForm(A * (np.pi / g.l) ** 2, shift=cfg.q)
        if g.kind is GeometryKind.BOX:
            dom = lattice.LatticeDomain.ORTHANT
        else:
            dom = lattice.LatticeDomain.FULL if cfg.q > 0 else lattice.LatticeDomain.PUNCTURED
    else:
        dim = g.D + 1
        y = 2 * np.pi * T
        form = lattice.QuadraticForm(np.diag([y * y] + [(np.pi / g.l) ** 2] * g.D), shift=cfg.q)
        if g.kind is GeometryKind.BOX:
            dom = (lattice.LatticeDomain.FULL,) + (lattice.LatticeDomain.ORTHANT,) * g.D
        else:
            dom = lattice.LatticeDomain.FULL if cfg.q > 0 else lattice.LatticeDomain.PUNCTURED
    if s.real <= dim / 2 + 0.5:
        raise ConfigError(f"--check needs Re(s) > {dim / 2 + 0.5}")
    if dim not in _CHECK_RADIUS:
        raise ConfigError("--check supports lattice dimension 1 to 4")
    return lattice.oracle_sum(form, dom, s, _CHECK_RADIUS[dim])


def cmd_zeta(cfg, args):
    g = cfg.geometry
    s = cfg.s
    status = EXIT_OK
    if len(cfg.grid) > 1:
        raise ConfigError("zeta takes a single --temp")
    T = cfg.grid[0] if cfg.grid else None
    payload = {"geometry": g.kind.value, "D": g.D, "l": g.l, "q": cfg.q}
    if args.invariants:
        if T is None:
            raise ConfigError("--invariants needs --temp")
        z0, z1 = geomzeta.zeta_invariants(ModelParams(T=T, q=cfg.q, rho=cfg.rho), g)
        payload.update({"kind": "invariants", "T": T, "zeta0": z0, "zeta0prime": z1})
        rows = [{"T": T, "zeta0": z0, "zeta0prime": z1}]
        columns = ("T", "zeta0", "zeta0prime")
    else:
        if T is None:
            res = geomzeta.geometric_zeta(s, g, cfg.q)
            payload["kind"] = "geometric"
        else:
            res = geomzeta.spectral_zeta(s, ModelParams(T=T, q=cfg.q, rho=cfg.rho), g)
            payload.update({"kind": "spectral", "T": T})
        rec = _zeta_record(res, s)
        payload["result"] = rec
        rows = [dict(rec)]
        columns = ("s_re", "s_im", "value_re", "value_im", "abs_error", "representation")
        if args.check:
            ref = _oracle_for(cfg, s, T)
            orec = _zeta_record(ref, s)
            diff = abs(complex(res.value) - complex(ref.value))
            bound = cfg.tol if cfg.tol is not None else res.abs_error + ref.abs_error
            agree = diff <= bound
            payload["oracle"] = orec
            payload["check"] = {"abs_diff": diff, "bound": bound, "agree": agree}
            orec = dict(orec)
            rows.append(orec)
            rows[0]["agree"] = rows[1]["agree"] = agree
            columns = columns + ("agree",)
            if not agree:
                status = EXIT_FAIL
    emit(render(payload, cfg.fmt, columns, rows), cfg.out)
    return status


def cmd_thermo(cfg, args):
    if not cfg.grid:
        raise ConfigError("thermo needs --temp or --tmin/--tmax")
    g = cfg.geometry
    n = len(cfg.grid)

    def point(item):
        i, T = item
        if args.verbose:
            log.info("thermo point %d/%d T=%g", i + 1, n, T)
        h = args.step
        p = thermo.thermo_point(T, cfg.q, g, cfg.rho, h)
        return {"T": p.T, "logZ": p.logZ, "F": p.F, "S": p.S, "c": p.c, "err": p.err}

    rows = ordered_map(point, list(enumerate(cfg.grid)))
    payload = {"geometry": g.kind.value, "D": g.D, "l": g.l, "q": cfg.q, "rho": cfg.rho,
               "columns": list(THERMO_COLUMNS), "rows": rows}
    emit(render(payload, cfg.fmt, THERMO_COLUMNS, rows), cfg.out)
    return EXIT_OK


def cmd_casimir(cfg, args):
    if cfg.q != 0:
        raise ConfigError("the pressure analysis covers the massless field only (--mass 0)")
    temps = cfg.grid or (1.0,)
    rep = casimir.critical_volume(temps[0], cfg.D, cfg.kind, x0=args.x0)
    volumes = [{"T": T, "V0": rep.volume(T)} for T in temps]
    payload = {
        "geometry": cfg.kind.value, "D": cfg.D, "x0": args.x0,
        "constant": rep.constant, "has_root": rep.has_root,
        "outcome": "sign_change" if rep.has_root else "no_sign_change",
        "x_star": rep.x_star, "bracket_lo": rep.bracket_lo, "bracket_hi": rep.bracket_hi,
        "iterations": rep.iterations, "volumes": volumes,
    }
    emit(render(payload, cfg.fmt, ("T", "V0"), volumes), cfg.out)
    return EXIT_OK


def cmd_validate(cfg, args):
    if args.verbose:
        log.info("running suite %s", args.suite)
    crits = validate.run_suite(args.suite)
    ok = all(c.passed for c in crits)
    payload = {"suite": args.suite, "passed": ok, "criteria": [c.as_dict() for c in crits]}
    rows = [{"criterion": c.id, "check": ch.name, "measured": ch.measured,
             "expected": ch.expected, "tol": ch.tol, "passed": ch.passed, "note": ch.note}
            for c in crits for ch in c.checks]
    emit(render(payload, cfg.fmt, VALIDATE_COLUMNS, rows), cfg.out)
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"zeta": cmd_zeta, "thermo": cmd_thermo, "casimir": cmd_casimir,
            "validate": cmd_validate}


def _setup_logging(verbose):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(message)s"))
    log.handlers[:] = [handler]
    log.propagate = False
    log.setLevel(logging.INFO if verbose else logging.WARNING)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _setup_logging(args.verbose)
    try:
        cfg = make_config(args)
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"zetabox: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except PoleError as exc:
        print(f"zetabox: pole: {exc}", file=sys.stderr)
        return EXIT_POLE
    except ConvergenceError as exc:
        print(f"zetabox: convergence: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (DomainError, ValueError) as exc:
        print(f"zetabox: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
