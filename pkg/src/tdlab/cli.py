"""Command-line front end.

Subcommands configure a differentiator (from a preset and/or explicit
flags), run one experiment, and write CSV tables:

    linearize   equivalent second-order system at a given amplitude
    simulate    time-domain run          -> t,v,x1,x2,v_clean,dv_clean
    bode        analytic response table  -> omega,mag,mag_db,phase_deg
    sweep       measured response table  -> ...,track_*,deriv_* columns
    estimate    disturbance estimation   -> t,y,u,delta_true,delta_hat

Exit codes: 0 success, 2 flag/usage error, 3 numerical failure.  All
stochastic channels are controlled by --seed (default 12345, never
wall-clock), so repeated runs are byte-identical.
"""

import argparse
import dataclasses
import sys

import numpy as np

from .describing import DegenerateError, OverdampedError, bode_table, linearize
from .dynamics import DiffParams
from .presets import PRESETS, get_preset, uncertainty_plant
from .signals import DEFAULT_SEED, NoiseSpec, SignalSpec
from .simulate import InstabilityError, SimConfig, default_dt, run
from .sweep import sweep, tracking_bandwidth
from .uncertainty import estimate_delta, simulate_plant

_FMT = "{:.9g}"


def _write_csv(path: str, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_FMT.format(v) for v in row) + "\n")


def _write_plot_script(path: str, csv_path: str, title: str) -> None:
    """Emit a small self-contained matplotlib script referencing the CSV."""
    lines = [
        "#!/usr/bin/env python3",
        f"# Plot helper for {csv_path}",
        "import csv",
        "",
        "import matplotlib.pyplot as plt",
        "",
        f"with open({csv_path!r}) as fh:",
        "    reader = csv.reader(fh)",
        "    header = next(reader)",
        "    cols = {name: [] for name in header}",
        "    for row in reader:",
        "        for name, val in zip(header, row):",
        "            cols[name].append(float(val))",
        "",
        "x = cols[header[0]]",
        "fig, axes = plt.subplots(len(header) - 1, 1, sharex=True, squeeze=False)",
        "for ax, name in zip(axes[:, 0], header[1:]):",
        "    ax.plot(x, cols[name])",
        "    ax.set_ylabel(name)",
        "    ax.grid(True)",
        "axes[-1, 0].set_xlabel(header[0])",
        f"fig.suptitle({title!r})",
        "plt.show()",
    ]
    with open(path, "w", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def _add_param_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--preset", choices=sorted(PRESETS),
                     help="start from a named experiment preset")
    sub.add_argument("--eps", type=float, help="perturbation parameter")
    sub.add_argument("--r", type=float, help="gain parameter R = 1/eps")
    sub.add_argument("--a0", type=float, help="linear position gain")
    sub.add_argument("--a1", type=float, help="nonlinear position gain")
    sub.add_argument("--b0", type=float, help="linear velocity gain")
    sub.add_argument("--b1", type=float, help="nonlinear velocity gain")
    sub.add_argument("--alpha", type=float, help="signed-power exponent in (0,1]")


def _add_signal_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--amplitude", type=float, help="input amplitude")
    sub.add_argument("--omega", type=float, help="input frequency [rad/s]")
    sub.add_argument("--noise-power", type=float, help="noise power (units^2*s)")
    sub.add_argument("--noise-ts", type=float, help="noise hold interval [s]")
    sub.add_argument("--seed", type=int, help=f"noise seed (default {DEFAULT_SEED})")


def _resolve_params(args, parser) -> DiffParams:
    if args.preset:
        base = get_preset(args.preset).params
        fields = dataclasses.asdict(base)
    else:
        fields = {"eps": None, "a0": 0.0, "a1": 0.0, "b0": 0.0, "b1": 0.0,
                  "alpha": 1.0}
    if args.eps is not None and args.r is not None:
        parser.error("--eps and --r are mutually exclusive")
    if args.r is not None:
        if args.r <= 0:
            parser.error("--r must be positive")
        fields["eps"] = 1.0 / args.r
    if args.eps is not None:
        fields["eps"] = args.eps
    for name in ("a0", "a1", "b0", "b1", "alpha"):
        value = getattr(args, name)
        if value is not None:
            fields[name] = value
    if fields["eps"] is None:
        parser.error("either --preset or --eps/--r is required")
    try:
        return DiffParams(**fields)
    except ValueError as exc:
        parser.error(str(exc))


def _resolve_signal(args, parser) -> SignalSpec:
    if args.preset:
        spec = get_preset(args.preset).signal
    else:
        spec = SignalSpec(amplitude=1.0, omega=2.0)
    amplitude = spec.amplitude if args.amplitude is None else args.amplitude
    omega = spec.omega if args.omega is None else args.omega
    noise = spec.noise
    if args.noise_power is not None or args.noise_ts is not None:
        power = args.noise_power if args.noise_power is not None else (
            noise.power if noise else 0.0)
        ts = args.noise_ts if args.noise_ts is not None else (
            noise.sample_time if noise else 0.01)
        try:
            noise = NoiseSpec(power=power, sample_time=ts)
        except ValueError as exc:
            parser.error(str(exc))
    if noise is not None and args.seed is not None:
        noise = dataclasses.replace(noise, seed=args.seed)
    return SignalSpec(amplitude=amplitude, omega=omega, noise=noise)


def _resolve_amplitude(args) -> float:
    if args.amplitude is not None:
        return args.amplitude
    if args.preset:
        return get_preset(args.preset).signal.amplitude
    return 1.0


def _log_grid(args, parser) -> np.ndarray:
    if not (args.omega_min > 0 and args.omega_max >= args.omega_min):
        parser.error("need 0 < --omega-min <= --omega-max")
    if args.points < 1:
        parser.error("--points must be >= 1")
    if args.points > 1 and args.omega_max == args.omega_min:
        parser.error("--points > 1 needs --omega-max > --omega-min")
    return np.logspace(np.log10(args.omega_min), np.log10(args.omega_max),
                       args.points)


def cmd_linearize(args, parser) -> int:
    p = _resolve_params(args, parser)
    A = _resolve_amplitude(args)
    lin = linearize(p, A)
    print(f"amplitude   A       = {_FMT.format(A)}")
    print(f"natural frequency   = {_FMT.format(lin.omega_n)} rad/s")
    print(f"damping ratio       = {_FMT.format(lin.zeta)}")
    print(f"damped frequency    = {_FMT.format(lin.omega_d)} rad/s")
    num = ", ".join(_FMT.format(c) for c in lin.numerator)
    den = ", ".join(_FMT.format(c) for c in lin.denominator)
    print(f"G(s) numerator      = [{num}]")
    print(f"G(s) denominator    = [{den}]")
    if args.csv:
        _write_csv(args.csv, ["amplitude", "omega_n", "zeta", "omega_d",
                              "k_pos", "k_vel"],
                   [(A, lin.omega_n, lin.zeta, lin.omega_d, lin.k_pos,
                     lin.k_vel)])
        print(f"wrote {args.csv}")
    return 0


def cmd_simulate(args, parser) -> int:
    p = _resolve_params(args, parser)
    spec = _resolve_signal(args, parser)
    dt = args.dt if args.dt is not None else default_dt(p, spec)
    t_end = args.t_end if args.t_end is not None else (
        get_preset(args.preset).sim.t_end if args.preset else 20.0)
    ts = run(p, spec, SimConfig(dt=dt, t_end=t_end))
    names = ["t", "v", "x1", "x2", "v_clean", "dv_clean"]
    rows = zip(ts.t, *(ts.channel(n) for n in names[1:]))
    _write_csv(args.out, names, rows)
    print(f"wrote {args.out} ({len(ts.t)} rows)")
    if args.plot_script:
        _write_plot_script(args.plot_script, args.out, "differentiator run")
        print(f"wrote {args.plot_script}")
    return 0


def cmd_bode(args, parser) -> int:
    p = _resolve_params(args, parser)
    A = _resolve_amplitude(args)
    lin = linearize(p, A)
    points = bode_table(lin, _log_grid(args, parser))
    _write_csv(args.out, ["omega", "mag", "mag_db", "phase_deg"],
               [(pt.omega, pt.mag, pt.mag_db, pt.phase_deg) for pt in points])
    print(f"wrote {args.out} ({len(points)} rows)")
    print(f"natural frequency = {_FMT.format(lin.omega_n)} rad/s, "
          f"damping ratio = {_FMT.format(lin.zeta)}")
    if args.plot_script:
        _write_plot_script(args.plot_script, args.out, "analytic response")
        print(f"wrote {args.plot_script}")
    return 0


def cmd_sweep(args, parser) -> int:
    p = _resolve_params(args, parser)
    A = _resolve_amplitude(args)
    grid = _log_grid(args, parser)
    lin = linearize(p, A)
    measured = sweep(p, A, grid, cfg=SimConfig(dt=args.dt, t_end=1.0)
                     if args.dt else None)
    rows = []
    for pt in measured:
        ref = bode_table(lin, [pt.omega])[0]
        rows.append((pt.omega, ref.mag, ref.mag_db, ref.phase_deg,
                     pt.track_mag, pt.track_phase_deg,
                     pt.deriv_mag, pt.deriv_phase_deg))
    _write_csv(args.out, ["omega", "mag", "mag_db", "phase_deg", "track_mag",
                          "track_phase_deg", "deriv_mag", "deriv_phase_deg"],
               rows)
    print(f"wrote {args.out} ({len(rows)} rows)")
    try:
        bw = tracking_bandwidth(measured)
        print(f"-3 dB tracking bandwidth = {_FMT.format(bw)} rad/s")
    except ValueError as exc:
        print(f"-3 dB tracking bandwidth: {exc}")
    if args.plot_script:
        _write_plot_script(args.plot_script, args.out, "measured response")
        print(f"wrote {args.plot_script}")
    return 0


def cmd_estimate(args, parser) -> int:
    p = _resolve_params(args, parser)
    spec = _resolve_signal(args, parser)
    noise = spec.noise
    plant = uncertainty_plant(noise=noise)
    t_end = args.t_end if args.t_end is not None else 20.0
    dt = args.dt if args.dt is not None else default_dt(p, spec)
    ts = estimate_delta(simulate_plant(plant, SimConfig(dt=dt, t_end=t_end)), p)
    names = ["t", "y", "u", "delta_true", "delta_hat"]
    rows = zip(ts.t, *(ts.channel(n) for n in names[1:]))
    _write_csv(args.out, names, rows)
    print(f"wrote {args.out} ({len(ts.t)} rows)")
    if args.plot_script:
        _write_plot_script(args.plot_script, args.out, "disturbance estimation")
        print(f"wrote {args.plot_script}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tdlab",
        description="Differentiator laboratory: simulation, equivalent "
                    "linearization, swept-sine identification, disturbance "
                    "estimation.")
    subs = parser.add_subparsers(dest="command", required=True)

    sp = subs.add_parser("linearize",
                         help="equivalent second-order linearization")
    _add_param_flags(sp)
    sp.add_argument("--amplitude", type=float,
                    help="oscillation amplitude (default: preset amplitude or 1)")
    sp.add_argument("--csv", help="also write a machine-readable CSV row")
    sp.set_defaults(func=cmd_linearize)

    sp = subs.add_parser("simulate", help="time-domain run, CSV output")
    _add_param_flags(sp)
    _add_signal_flags(sp)
    sp.add_argument("--dt", type=float, help="integration step [s]")
    sp.add_argument("--t-end", type=float, help="duration [s]")
    sp.add_argument("--out", required=True, help="output CSV path")
    sp.add_argument("--plot-script", help="also write a plotting script")
    sp.set_defaults(func=cmd_simulate)

    sp = subs.add_parser("bode", help="analytic frequency-response table")
    _add_param_flags(sp)
    sp.add_argument("--amplitude", type=float, help="linearization amplitude")
    sp.add_argument("--omega-min", type=float, default=0.5)
    sp.add_argument("--omega-max", type=float, default=100.0)
    sp.add_argument("--points", type=int, default=50)
    sp.add_argument("--out", required=True, help="output CSV path")
    sp.add_argument("--plot-script", help="also write a plotting script")
    sp.set_defaults(func=cmd_bode)

    sp = subs.add_parser("sweep", help="swept-sine measured response table")
    _add_param_flags(sp)
    sp.add_argument("--amplitude", type=float, help="input amplitude")
    sp.add_argument("--omega-min", type=float, default=0.5)
    sp.add_argument("--omega-max", type=float, default=2.0 * np.pi * 100.0)
    sp.add_argument("--points", type=int, default=20)
    sp.add_argument("--dt", type=float, help="target integration step [s]")
    sp.add_argument("--out", required=True, help="output CSV path")
    sp.add_argument("--plot-script", help="also write a plotting script")
    sp.set_defaults(func=cmd_sweep)

    sp = subs.add_parser("estimate",
                         help="disturbance estimation on the uncertain plant")
    _add_param_flags(sp)
    _add_signal_flags(sp)
    sp.add_argument("--dt", type=float, help="integration step [s]")
    sp.add_argument("--t-end", type=float, help="duration [s]")
    sp.add_argument("--out", required=True, help="output CSV path")
    sp.add_argument("--plot-script", help="also write a plotting script")
    sp.set_defaults(func=cmd_estimate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (OverdampedError, DegenerateError, InstabilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
