"""Command-line interface.

Subcommands: geometry, potential, bound-states, scatter, verify,
wormhole-check, figures.  Tabular output is RFC-4180 CSV; verify emits a JSON
report (stable key order) with CSV/PNG artifacts next to it.

Exit codes: 0 success, 1 usage error, 2 numerical non-convergence,
3 audit INCONSISTENT (verify with --strict only).  CATENOID_WORKERS overrides
the sweep worker count; there is no other environment coupling.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from .. import solver
from ..errors import ConvergenceError
from ..geometry import (
    CatenoidShape,
    Chart,
    ChartPoint,
    PhysicalScales,
    catenoid_metric,
    curvature,
    embed_catenoid,
    equivalence_audit,
    geometric_potential,
    wormhole_profile,
    wormhole_section_metric,
)
from ..potentials import ChannelSpec, sample_curve
from . import audit
from .figures import FIGURE_IDS, figure_data, write_figure
from .sweep import SweepSpec, resolve_workers, run_sweep, sweep_csv_bytes
from .tabular import write_csv

USAGE_ERROR = 1
NONCONVERGENCE_ERROR = 2
AUDIT_INCONSISTENT = 3


class _Parser(argparse.ArgumentParser):
    """argparse maps usage errors to exit code 2 by default; we use 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise SystemExit(self.exit_with(message))

    def exit_with(self, message: str) -> int:
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        return USAGE_ERROR


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def _parse_eps_grid(text: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("eps-grid must be MIN:MAX:COUNT")
    lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    if count < 1 or not hi >= lo or not lo > 0.0:
        raise argparse.ArgumentTypeError("eps-grid requires 0 < MIN <= MAX and COUNT >= 1")
    return lo, hi, count


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="catenoid", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("geometry", help="metric/curvature/potential samples or a mesh")
    p.add_argument("--quantity", required=True,
                   choices=["metric", "curvature", "potential", "mesh"])
    p.add_argument("--chart", default="zeta", choices=["zeta", "rho"])
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--min", dest="lo", type=float, default=-2.0)
    p.add_argument("--max", dest="hi", type=float, default=2.0)
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--out", required=True)

    p = sub.add_parser("potential", help="effective-potential curves per chart")
    p.add_argument("--chart", required=True, choices=["zeta", "eta", "arc"])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eps", type=float, required=True)
    p.add_argument("--min", dest="lo", type=float, default=None)
    p.add_argument("--max", dest="hi", type=float, default=None)
    p.add_argument("--samples", type=int, default=801)
    p.add_argument("--renormalized", type=_parse_bool, default=False)
    p.add_argument("--out", required=True)

    p = sub.add_parser("bound-states", help="bound states of a channel")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eps-min", type=float, default=-0.9)
    p.add_argument("--eps-max", type=float, default=-1e-4)
    p.add_argument("--method", default="shooting", choices=["shooting", "matrix", "both"])
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--zeta-max", type=float, default=solver.DEFAULT_ZETA_MAX)
    p.add_argument("--samples", type=int, default=solver.DEFAULT_SAMPLES)
    p.add_argument("--out", required=True)

    p = sub.add_parser("scatter", help="transmission sweep over eps")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eps-grid", type=_parse_eps_grid, required=True,
                   metavar="MIN:MAX:COUNT")
    p.add_argument("--u-max", type=float, default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run an audit suite, emit a JSON report")
    p.add_argument("--suite", required=True, choices=list(audit.SUITES))
    p.add_argument("--json", dest="json_path", required=True)
    p.add_argument("--strict", action="store_true",
                   help="exit 3 if any audit verdict is INCONSISTENT")

    p = sub.add_parser("wormhole-check", help="section metric and equivalence table")
    p.add_argument("--b0", type=float, required=True)
    p.add_argument("--theta0", type=float, default=math.pi / 2.0)
    p.add_argument("--r-min", type=float, default=None)
    p.add_argument("--r-max", type=float, default=None)
    p.add_argument("--samples", type=int, default=501)
    p.add_argument("--out", required=True)

    p = sub.add_parser("figures", help="figure data as CSV with a rendered PNG")
    p.add_argument("--which", required=True, choices=list(FIGURE_IDS))
    p.add_argument("--energy-unity", action="store_true",
                   help="fig3 only: display V with the energy set to unity")
    p.add_argument("--out", required=True)

    return parser


# ---------------------------------------------------------------------------
# Command bodies
# ---------------------------------------------------------------------------

def _cmd_geometry(args) -> int:
    shape = CatenoidShape(R=args.radius, a=args.a)
    grid = np.linspace(args.lo, args.hi, args.samples)
    if args.quantity == "metric":
        chart = Chart.Z_PHI if args.chart == "zeta" else Chart.RHO_PHI
        rows = []
        for c in grid:
            ms = catenoid_metric(shape, ChartPoint(chart, float(c)))
            rows.append([float(c), ms.g11, ms.g22, ms.sqrt_g])
        write_csv(args.out, ["coord", "g11", "g22", "sqrt_g"], rows)
    elif args.quantity == "curvature":
        if args.chart != "zeta":
            raise ValueError("curvature is sampled in the zeta chart")
        cs = curvature(shape, grid)
        rows = list(zip(grid, cs.kappa1, cs.kappa2, np.broadcast_to(cs.H, grid.shape), cs.K))
        write_csv(args.out, ["zeta", "kappa1", "kappa2", "H", "K"], rows)
    elif args.quantity == "potential":
        if args.chart != "zeta":
            raise ValueError("the geometric potential is sampled in the zeta chart")
        vg = geometric_potential(shape, PhysicalScales(R=shape.R), grid)
        write_csv(args.out, ["zeta", "V_G"], list(zip(grid, vg)))
    else:  # mesh
        phis = np.linspace(0.0, 2.0 * math.pi, 72, endpoint=False)
        rows = []
        for z in grid:
            for p in phis:
                x, y, zz = embed_catenoid(shape, float(z), float(p))
                rows.append([float(z), float(p), float(x), float(y), float(zz)])
        write_csv(args.out, ["zeta", "phi", "x", "y", "z"], rows)
    print(args.out)
    return 0


def _cmd_potential(args) -> int:
    defaults = {"zeta": (-4.0, 4.0), "eta": (0.0, 8.0), "arc": (-10.0, 10.0)}
    lo = defaults[args.chart][0] if args.lo is None else args.lo
    hi = defaults[args.chart][1] if args.hi is None else args.hi
    channel = ChannelSpec(m=args.m, eps=args.eps)
    curve = sample_curve(args.chart, channel, np.linspace(lo, hi, args.samples),
                         renormalized=args.renormalized)
    rows = [
        [float(c), float(v), channel.m, channel.eps, args.chart]
        for c, v in zip(curve.grid, curve.values)
    ]
    write_csv(args.out, ["coord", "value", "m", "eps", "chart"], rows)
    print(args.out)
    return 0


def _cmd_bound_states(args) -> int:
    grid = solver.Grid1D(-args.zeta_max, args.zeta_max, args.samples)
    methods = [solver.Method.SHOOTING, solver.Method.MATRIX] if args.method == "both" \
        else [solver.Method(args.method)]
    rows = []
    for method in methods:
        states = solver.bound_states(
            m=args.m, eps_window=(args.eps_min, args.eps_max), grid=grid,
            method=method, tol=args.tol,
        )
        for idx, st in enumerate(states):
            rows.append([method.value, idx, st.channel.m, st.channel.eps,
                         st.nodes, st.wave.parity.value])
    write_csv(args.out, ["method", "index", "m", "eps", "nodes", "parity"], rows)
    print(args.out)
    return 0


def _cmd_scatter(args) -> int:
    lo, hi, count = args.eps_grid
    eps_values = np.linspace(lo, hi, count) if count > 1 else np.array([lo])
    spec = SweepSpec(
        quantity="transmission",
        items=tuple({"m": args.m, "eps": float(e)} for e in eps_values),
        params={"u_max": args.u_max},
        workers=resolve_workers(1),
    )
    result = run_sweep(spec)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_bytes(sweep_csv_bytes(result))
    print(out)
    return NONCONVERGENCE_ERROR if result.failures else 0


def _cmd_verify(args) -> int:
    json_path = Path(args.json_path)
    json_path.parent.mkdir(parents=True, exist_ok=True)
    payload = audit.verify_suite(args.suite, out_dir=json_path.parent)
    json_path.write_text(audit.payload_to_json(payload), encoding="utf-8")
    print(json_path)
    if args.strict and payload["verdict_counts"][audit.INCONSISTENT]:
        return AUDIT_INCONSISTENT
    return 0


def _cmd_wormhole_check(args) -> int:
    b0 = args.b0
    r_lo = b0 * (1.0 + 1e-3) if args.r_min is None else args.r_min
    r_hi = 10.0 * b0 if args.r_max is None else args.r_max
    if not r_lo > b0:
        raise ValueError("r-min must exceed b0")
    r = np.linspace(r_lo, r_hi, args.samples)
    aud = equivalence_audit(b0, r)
    z = wormhole_profile(b0, r, branch=+1)
    rows = []
    for i, rr in enumerate(r):
        ms = wormhole_section_metric(b0, args.theta0, float(rr))
        rows.append([float(rr), float(z[i]), ms.g11, ms.g22,
                     float(aud.dev_radial[i]), float(aud.dev_angular[i])])
    write_csv(args.out, ["r", "z_profile", "g_rr", "g_phiphi", "dev_radial", "dev_angular"],
              rows)
    print(args.out)
    return 0


def _cmd_figures(args) -> int:
    params = {"energy_unity": args.energy_unity} if args.which == "fig3" else {}
    payload = figure_data(args.which, **params)
    csv_path, png_path = write_figure(payload, args.out)
    print(csv_path)
    print(png_path)
    return 0


_COMMANDS = {
    "geometry": _cmd_geometry,
    "potential": _cmd_potential,
    "bound-states": _cmd_bound_states,
    "scatter": _cmd_scatter,
    "verify": _cmd_verify,
    "wormhole-check": _cmd_wormhole_check,
    "figures": _cmd_figures,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return _COMMANDS[args.command](args)
    except ConvergenceError as exc:
        print(f"catenoid: numerical failure: {exc}", file=sys.stderr)
        return NONCONVERGENCE_ERROR
    except (ValueError, OSError) as exc:
        print(f"catenoid: error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
