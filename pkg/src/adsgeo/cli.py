"""Command-line entry points.

Exit codes: 0 on success, 1 for domain errors (reported as a single JSON
object on stderr), 2 for usage errors (argparse).
"""

from __future__ import annotations

import argparse
import concurrent.futures as futures
import json
import math
import sys

import numpy as np

from . import closedform, connectivity, hamiltonian, verify
from . import io as tio
from .algebra import IDENTITY
from .charts import GlobalChartPoint
from .errors import AdsGeoError
from .horizontality import Distribution

_CHART_DIST = {
    "timelike": Distribution.SPAN_TX,
    "spacelike": Distribution.SPAN_TX,
    "subriemannian": Distribution.SPAN_XY,
}


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--output", "-o", default="-", help="output file ('-' for stdout)"
    )
    p.add_argument("--format", choices=("csv", "json"), default="csv")


def _add_grid_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--s-start", type=float, default=0.0)
    p.add_argument("--s-end", type=float, default=None)
    p.add_argument("--samples", type=int, default=201)


def _emit(args, traj, dist, command: str) -> None:
    skip = {"func", "output", "format", "command"}
    params = {
        k: v for k, v in vars(args).items() if k not in skip and v is not None
    }
    target = sys.stdout if args.output == "-" else args.output
    if args.format == "csv":
        tio.write_csv(target, traj, dist)
    else:
        tio.write_json(target, traj, dist, command=command, params=params)


def _grid(args, default_end: float) -> np.ndarray:
    if args.samples < 2:
        raise AdsGeoError("need at least 2 samples")
    s_end = args.s_end if args.s_end is not None else default_end
    return np.linspace(args.s_start, s_end, args.samples)


def cmd_geodesic(args) -> int:
    # the parametric chart families leave their chart in finite time, so
    # their default window is short
    s = _grid(args, 1.2 if args.family == "parametric" else 2.0 * math.pi)
    if args.family == "cartesian-tx":
        if args.B is None:
            args.B = -2.0  # A - B = 2 with the default A = 0
        if args.D is None:
            args.D = 1.0  # C D = 1 with the default C = 1
    elif args.family == "cartesian-xy":
        if args.B is None:
            args.B = -2.0
        if args.D is None:
            args.D = 0.0  # C^2 + D^2 = 1 with the default C = 1
    if args.family == "const":
        dist = Distribution.parse(args.distribution)
        spec = closedform.ConstGeodesicSpec(
            dist,
            args.causal,
            psi=args.psi,
            sign_alpha=args.sign_alpha,
            sign_beta=args.sign_beta,
        )
        traj = closedform.sample_const_geodesic(spec, s)
    elif args.family == "vertical":
        dist = Distribution.parse(args.distribution)
        traj = closedform.sample_vertical_line(dist, s)
    elif args.family == "cartesian-tx":
        dist = Distribution.SPAN_TX
        spec = closedform.CartesianGeodesicSpec(args.A, args.B, args.C, args.D)
        traj = closedform.sample_cartesian_geodesic_tx(spec, s)
    elif args.family == "cartesian-xy":
        dist = Distribution.SPAN_XY
        traj = closedform.sample_cartesian_geodesic_xy(
            args.B, args.C, args.D, s, A=args.A
        )
    else:  # parametric
        dist = _CHART_DIST[args.chart]
        spec = closedform.ParametricGeodesicSpec(
            chart=args.chart,
            phi_dot0=args.phi_dot0,
            chi2_dot=args.chi2_dot,
            chi2_0=args.chi2_0,
        )
        states = [closedform.parametric_chart_state(spec, float(v)) for v in s]
        coords = np.stack([st.coords for st in states])
        momenta = np.stack([st.momenta for st in states])
        H = np.array(
            [hamiltonian.chart_hamiltonian_value(args.chart, st) for st in states]
        )
        ct = hamiltonian.ChartTrajectory(
            chart=args.chart,
            params=s,
            coords=coords,
            momenta=momenta,
            diagnostics={"H": H, "H_drift": H - H[0]},
        )
        traj = ct.to_cartesian()
    _emit(args, traj, dist, "geodesic")
    return 0


def cmd_integrate(args) -> int:
    cfg = hamiltonian.IntegratorConfig(
        method=args.method,
        step=args.step,
        rel_tol=args.rel_tol,
        abs_tol=args.abs_tol,
        s_span=(args.s_start, args.s_end),
        record_every=args.record_every,
        strict=args.strict,
        drift_bound=args.drift_bound,
    )
    if args.chart is not None:
        if args.coords0 is None or args.momenta0 is None:
            raise AdsGeoError("chart integration needs --coords0 and --momenta0")
        init = hamiltonian.ChartPhaseState.make(args.coords0, args.momenta0)
        ct = hamiltonian.integrate_chart(args.chart, init, cfg)
        _emit(args, ct.to_cartesian(), _CHART_DIST[args.chart], "integrate")
        return 0
    if args.xi0 is None:
        raise AdsGeoError("ambient integration needs --xi0")
    dist = Distribution.parse(args.distribution)
    x0 = np.asarray(args.x0 if args.x0 is not None else IDENTITY, dtype=float)
    state0 = hamiltonian.PhaseState.make(x0, np.asarray(args.xi0, dtype=float))
    traj = hamiltonian.integrate(state0, dist, cfg)
    _emit(args, traj, dist, "integrate")
    return 0


def cmd_connect(args) -> int:
    P = GlobalChartPoint(*args.p)
    Q = GlobalChartPoint(*args.q)
    if args.method == "tx":
        traj = connectivity.connect_tx(P, Q, n=args.n, bridge=args.bridge)
        dist = Distribution.SPAN_TX
    elif args.method == "tx-constant-psi":
        traj = connectivity.connect_tx_constant_psi(P, Q, n=args.n)
        dist = Distribution.SPAN_TX
    elif args.method == "xy":
        traj = connectivity.connect_xy(P, Q, n=args.n)
        dist = Distribution.SPAN_XY
    elif args.method == "xy-constant-theta":
        traj = connectivity.connect_xy_constant_theta(P, Q)
        dist = Distribution.SPAN_XY
    else:  # piecewise-timelike
        traj = connectivity.piecewise_timelike_tx(
            P, Q, n_per_segment=max(args.n // 3, 5)
        )
        dist = Distribution.SPAN_TX
    _emit(args, traj, dist, "connect")
    return 0


def cmd_verify(args) -> int:
    results = verify.run_all(
        perturbation=args.inject_perturbation,
        seed=args.seed,
        n_gram=args.gram_points,
    )
    print(verify.format_report(results))
    return 0 if all(r.passed for r in results) else 1


def _sweep_drift(kappa: float) -> tuple:
    xi0 = np.array([0.0, np.cosh(0.3), np.sinh(0.3), kappa])
    cfg = hamiltonian.IntegratorConfig(
        step=1e-3, s_span=(0.0, 3.0), record_every=10
    )
    t = hamiltonian.integrate(
        hamiltonian.PhaseState.make(IDENTITY, xi0), Distribution.SPAN_TX, cfg
    )
    return (
        kappa,
        float(np.max(np.abs(t.diagnostics["H_drift"]))),
        verify._first_integral_drift(t, Distribution.SPAN_TX),
        float(np.max(np.linalg.norm(t.points, axis=1))),
    )


def _sweep_crossval(psi: float) -> tuple:
    spec = closedform.ConstGeodesicSpec(
        Distribution.SPAN_TX, "timelike", psi=psi
    )
    xi0 = closedform.const_geodesic_momentum(spec, 0.0)
    cfg = hamiltonian.IntegratorConfig(
        step=1e-3, s_span=(0.0, 2.0 * math.pi), record_every=10
    )
    t = hamiltonian.integrate(
        hamiltonian.PhaseState.make(IDENTITY, xi0), Distribution.SPAN_TX, cfg
    )
    ref = closedform.sample_const_geodesic(spec, t.params)
    return (psi, float(np.max(np.abs(t.points - ref.points))))


def _sweep_bridge(n: float) -> tuple:
    P = GlobalChartPoint(0.3, 0.6, 0.5)
    Q = GlobalChartPoint(1.1, 1.9, 0.9)
    t = connectivity.connect_tx(P, Q, n=int(n), bridge="sine")
    return (float(int(n)), float(t.diagnostics["endpoint_error"]))


_SWEEP_TASKS = {
    "drift": (_sweep_drift, "value,h_drift,first_integral_drift,max_norm"),
    "crossval": (_sweep_crossval, "value,max_deviation"),
    "bridge": (_sweep_bridge, "value,endpoint_error"),
}


def cmd_sweep(args) -> int:
    worker, header = _SWEEP_TASKS[args.task]
    if args.values is not None:
        values = [float(v) for v in args.values]
    else:
        values = list(np.linspace(args.start, args.stop, args.num))
    try:
        with futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(worker, values))
    except (OSError, PermissionError):  # no subprocesses available
        rows = [worker(v) for v in values]
    out = sys.stdout if args.output == "-" else open(args.output, "w")
    try:
        out.write(header + "\n")
        for row in rows:
            out.write(",".join(f"{v:.17g}" for v in row) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adsgeo",
        description=(
            "Horizontal curves and geodesics on the 3-dimensional "
            "anti-de Sitter quadric under its two rank-2 distributions."
        ),
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"%(prog)s {tio.package_version()}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("geodesic", help="sample a closed-form geodesic family")
    g.add_argument(
        "--family",
        choices=("const", "vertical", "cartesian-tx", "cartesian-xy", "parametric"),
        required=True,
    )
    g.add_argument("--distribution", choices=("tx", "xy"), default="tx")
    g.add_argument(
        "--causal",
        choices=("timelike", "spacelike", "lightlike"),
        default="timelike",
    )
    g.add_argument("--psi", type=float, default=0.0)
    g.add_argument("--sign-alpha", type=int, choices=(-1, 1), default=1)
    g.add_argument("--sign-beta", type=int, choices=(-1, 1), default=1)
    g.add_argument("--A", type=float, default=0.0, help="first integral")
    g.add_argument("--B", type=float, default=None, help="first integral")
    g.add_argument("--C", type=float, default=1.0, help="first integral")
    g.add_argument(
        "--D", type=float, default=None,
        help="first integral (cartesian-tx needs C D = 1; "
        "cartesian-xy needs C^2 + D^2 = 1)",
    )
    g.add_argument(
        "--chart", choices=("timelike", "spacelike", "subriemannian"),
        default="timelike",
    )
    g.add_argument("--phi-dot0", type=float, default=1.0)
    g.add_argument("--chi2-dot", type=float, default=0.0)
    g.add_argument("--chi2-0", type=float, default=0.0)
    _add_grid_args(g)
    _add_output_args(g)
    g.set_defaults(func=cmd_geodesic)

    i = sub.add_parser("integrate", help="integrate a normal Hamiltonian flow")
    i.add_argument("--distribution", choices=("tx", "xy"), default="tx")
    i.add_argument("--x0", type=float, nargs=4, metavar=("X1", "X2", "X3", "X4"))
    i.add_argument(
        "--xi0", type=float, nargs=4, metavar=("XI1", "XI2", "XI3", "XI4")
    )
    i.add_argument(
        "--chart", choices=("timelike", "spacelike", "subriemannian")
    )
    i.add_argument(
        "--coords0", type=float, nargs=3, metavar=("PHI", "CHI1", "CHI2")
    )
    i.add_argument(
        "--momenta0", type=float, nargs=3, metavar=("PSI", "XI1", "XI2")
    )
    i.add_argument("--method", choices=("rk4", "rk45"), default="rk4")
    i.add_argument("--step", type=float, default=1e-3)
    i.add_argument("--rel-tol", type=float, default=1e-10)
    i.add_argument("--abs-tol", type=float, default=1e-12)
    i.add_argument("--record-every", type=int, default=1)
    i.add_argument("--strict", action="store_true")
    i.add_argument("--drift-bound", type=float, default=1e-8)
    i.add_argument("--s-start", type=float, default=0.0)
    i.add_argument("--s-end", type=float, default=1.0)
    _add_output_args(i)
    i.set_defaults(func=cmd_integrate)

    c = sub.add_parser(
        "connect", help="horizontal curve through two prescribed points"
    )
    c.add_argument(
        "--method",
        choices=(
            "tx",
            "tx-constant-psi",
            "xy",
            "xy-constant-theta",
            "piecewise-timelike",
        ),
        default="tx",
    )
    c.add_argument(
        "--p", type=float, nargs=3, required=True, metavar=("PHI", "PSI", "THETA")
    )
    c.add_argument(
        "--q", type=float, nargs=3, required=True, metavar=("PHI", "PSI", "THETA")
    )
    c.add_argument("--n", type=int, default=257)
    c.add_argument("--bridge", choices=("quadratic", "sine"), default="quadratic")
    _add_output_args(c)
    c.set_defaults(func=cmd_connect)

    v = sub.add_parser("verify", help="run the verification suites")
    v.add_argument(
        "--inject-perturbation",
        type=float,
        default=0.0,
        metavar="EPS",
        help="negative control: inject EPS into each checked quantity "
        "(a healthy suite must then FAIL)",
    )
    v.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    v.add_argument("--gram-points", type=int, default=1000)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("sweep", help="parameter sweep (parallel)")
    w.add_argument("--task", choices=tuple(_SWEEP_TASKS), required=True)
    w.add_argument("--values", type=float, nargs="+")
    w.add_argument("--start", type=float, default=0.0)
    w.add_argument("--stop", type=float, default=1.0)
    w.add_argument("--num", type=int, default=9)
    w.add_argument("--jobs", type=int, default=None)
    _add_output_args(w)
    w.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except AdsGeoError as exc:
        json.dump(
            {"error": type(exc).__name__, "message": str(exc)}, sys.stderr
        )
        sys.stderr.write("\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
