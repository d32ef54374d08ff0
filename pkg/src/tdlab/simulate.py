"""Fixed-step simulation of the differentiator family and tracking metrics.

Integration uses the classical 4-stage Runge-Kutta method on a uniform grid
(see _kernels for the compiled loops).  The step size must resolve the fast
differentiator dynamics, whose rates scale as 1/eps, and must not subdivide
a noise hold: the default rule is dt = min(eps/20, Ts/10, 1e-3).
"""

import math
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

import numpy as np

from . import _kernels
from .describing import natural_frequency
from .dynamics import DiffParams, DiffState
from .signals import SignalSpec, bl_white_noise, sinusoid, sinusoid_derivative

#: States beyond this magnitude abort the integration as diverged.
STATE_LIMIT = 1e9


class InstabilityError(RuntimeError):
    """Integration diverged (a state left [-STATE_LIMIT, STATE_LIMIT])."""

    def __init__(self, message: str, t: float = float("nan")):
        super().__init__(message)
        self.t = t


@dataclass(frozen=True)
class SimConfig:
    """Fixed-step integration setup.

    transient_skip marks the initial window excluded from steady-state
    metrics; it must leave a non-empty measurement window before t_end.
    """

    dt: float
    t_end: float
    initial: DiffState = field(default_factory=lambda: DiffState(0.0, 0.0))
    transient_skip: float = 0.0

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ValueError("dt must be positive")
        if self.transient_skip < 0.0:
            raise ValueError("transient_skip must be non-negative")
        if not self.t_end > self.transient_skip:
            raise ValueError("t_end must exceed transient_skip")


@dataclass(frozen=True)
class TimeSeries:
    """Uniformly sampled simulation record: shared time base plus named channels."""

    t: np.ndarray
    channels: dict

    def __post_init__(self):
        n = len(self.t)
        for name, values in self.channels.items():
            if len(values) != n:
                raise ValueError(f"channel {name!r} length {len(values)} != {n}")

    @property
    def dt(self) -> float:
        return float(self.t[1] - self.t[0])

    def channel(self, name: str) -> np.ndarray:
        try:
            return self.channels[name]
        except KeyError:
            raise KeyError(
                f"no channel {name!r}; have {sorted(self.channels)}") from None

    def with_channel(self, name: str, values: np.ndarray) -> "TimeSeries":
        merged = dict(self.channels)
        merged[name] = values
        return TimeSeries(t=self.t, channels=merged)

    def window_mask(self, t0: float, t1: float) -> np.ndarray:
        return (self.t >= t0) & (self.t <= t1)


def default_dt(p: DiffParams, spec: Optional[SignalSpec] = None) -> float:
    """Step-size rule dt = min(eps/20, Ts/10, 1e-3)."""
    dt = min(p.eps / 20.0, 1e-3)
    if spec is not None and spec.noise is not None:
        dt = min(dt, spec.noise.sample_time / 10.0)
    return dt


def default_skip(p: DiffParams, amplitude: float) -> float:
    """Steady-state metrics skip max(5/omega_n, 2 s) by default."""
    A = abs(amplitude) if amplitude else 1.0
    return max(5.0 / natural_frequency(p, A), 2.0)


def auto_config(p: DiffParams, spec: SignalSpec, t_end: float,
                initial: DiffState = DiffState(0.0, 0.0)) -> SimConfig:
    """SimConfig with the default step-size and transient-skip rules."""
    return SimConfig(dt=default_dt(p, spec), t_end=t_end, initial=initial,
                     transient_skip=default_skip(p, spec.amplitude))


def rk4_step(rhs, state, t: float, dt: float, u):
    """One classical Runge-Kutta step of state' = rhs(state, v).

    The input signal u(t) is evaluated at t, t + dt/2 and t + dt,
    consistently across the four stages.  Works for float or ndarray states.
    """
    if not dt > 0.0:
        raise ValueError("dt must be positive")
    va = u(t)
    vm = u(t + 0.5 * dt)
    vb = u(t + dt)
    k1 = rhs(state, va)
    k2 = rhs(state + 0.5 * dt * k1, vm)
    k3 = rhs(state + 0.5 * dt * k2, vm)
    k4 = rhs(state + dt * k3, vb)
    return state + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def time_grid(cfg: SimConfig) -> tuple[np.ndarray, np.ndarray]:
    """Step grid t_i = i*dt (n+1 points) and the step midpoints (n points)."""
    n = int(round(cfg.t_end / cfg.dt))
    if n < 1:
        raise ValueError("t_end shorter than one step")
    t = np.arange(n + 1, dtype=float) * cfg.dt
    return t, t[:-1] + 0.5 * cfg.dt


def _input_arrays(spec: SignalSpec, t: np.ndarray, tm: np.ndarray):
    v = sinusoid(spec.amplitude, spec.omega, t)
    vm = sinusoid(spec.amplitude, spec.omega, tm)
    if spec.noise is not None and spec.noise.power > 0.0:
        v = v + bl_white_noise(spec.noise, t)
        vm = vm + bl_white_noise(spec.noise, tm)
    return v, vm


def run(p: DiffParams, spec: SignalSpec, cfg: SimConfig) -> TimeSeries:
    """Simulate the differentiator over the signal.

    Returns channels v (input incl. noise), x1, x2, v_clean and dv_clean
    (noise-free reference and its exact derivative).  Noise is sampled on
    its own hold grid; cfg.dt must not exceed the hold interval so a hold
    never changes inside a step.
    """
    if spec.noise is not None and spec.noise.power > 0.0:
        if cfg.dt > spec.noise.sample_time:
            raise ValueError(
                f"dt={cfg.dt:g} exceeds noise sample_time="
                f"{spec.noise.sample_time:g}")
    t, tm = time_grid(cfg)
    v, vm = _input_arrays(spec, t, tm)
    x1, x2, bad = _kernels.integrate_hybrid(
        cfg.initial.x1, cfg.initial.x2, v, vm,
        p.eps, p.a0, p.a1, p.b0, p.b1, p.alpha, cfg.dt, STATE_LIMIT)
    if bad >= 0:
        t_bad = bad * cfg.dt
        raise InstabilityError(
            f"state exceeded {STATE_LIMIT:g} at t={t_bad:g} s "
            f"(dt={cfg.dt:g} too large?)", t=t_bad)
    return TimeSeries(t=t, channels={
        "v": v,
        "x1": x1,
        "x2": x2,
        "v_clean": sinusoid(spec.amplitude, spec.omega, t),
        "dv_clean": sinusoid_derivative(spec.amplitude, spec.omega, t),
    })


def run_highgain(p: DiffParams, spec: SignalSpec, cfg: SimConfig) -> TimeSeries:
    """Simulate the gain-scaled realization (w coordinates, linear case only)."""
    if not p.is_linear:
        raise ValueError("gain-scaled realization requires a1 = b1 = 0")
    if spec.noise is not None and spec.noise.power > 0.0:
        if cfg.dt > spec.noise.sample_time:
            raise ValueError("dt exceeds noise sample_time")
    t, tm = time_grid(cfg)
    v, vm = _input_arrays(spec, t, tm)
    w1, w2, bad = _kernels.integrate_highgain(
        cfg.initial.x1, cfg.initial.x2, v, vm, p.eps, p.a0, p.b0,
        cfg.dt, STATE_LIMIT)
    if bad >= 0:
        t_bad = bad * cfg.dt
        raise InstabilityError(
            f"state exceeded {STATE_LIMIT:g} at t={t_bad:g} s", t=t_bad)
    return TimeSeries(t=t, channels={
        "v": v,
        "x1": w1,
        "x2": w2,
        "v_clean": sinusoid(spec.amplitude, spec.omega, t),
        "dv_clean": sinusoid_derivative(spec.amplitude, spec.omega, t),
    })


def rms_error(ts: TimeSeries, channel: str, reference: str,
              window: tuple[float, float]) -> float:
    """Root-mean-square of channel - reference over the time window."""
    t0, t1 = window
    if t0 > t1:
        raise ValueError("window start exceeds window end")
    if t0 < ts.t[0] - 1e-12 or t1 > ts.t[-1] + 1e-12:
        raise ValueError(
            f"window [{t0:g}, {t1:g}] outside record [{ts.t[0]:g}, {ts.t[-1]:g}]")
    mask = ts.window_mask(t0, t1)
    if not np.any(mask):
        raise ValueError("window contains no samples")
    diff = ts.channel(channel)[mask] - ts.channel(reference)[mask]
    return float(np.sqrt(np.mean(diff * diff)))


def eps_ladder(p: DiffParams, eps_values: Sequence[float]) -> list[DiffParams]:
    """Same gain set across a ladder of eps values."""
    return [replace(p, eps=float(e)) for e in eps_values]


def convergence_order(family: Sequence[DiffParams], spec: SignalSpec,
                      cfg: Optional[SimConfig] = None) -> float:
    """Empirical tracking-error order: slope of log RMS(x1 - v) vs log eps.

    Requires at least 4 family members whose eps values span a factor >= 8
    and a noise-free signal (an order fit under a noise floor is
    meaningless).  Each member is simulated with the default step rule and
    its own steady-state window; a positive slope certifies that the
    tracking error vanishes as eps -> 0.
    """
    family = list(family)
    if len(family) < 4:
        raise ValueError("need at least 4 eps values")
    eps = np.array([q.eps for q in family])
    if np.max(eps) / np.min(eps) < 8.0:
        raise ValueError("eps values must span at least a factor of 8")
    if spec.noise is not None and spec.noise.power > 0.0:
        raise ValueError("convergence order requires a noise-free signal")
    if spec.omega <= 0.0 or spec.amplitude == 0.0:
        raise ValueError("convergence order requires a nontrivial sinusoid")

    period = 2.0 * math.pi / spec.omega
    errs = []
    for q in family:
        skip = default_skip(q, spec.amplitude)
        dt = default_dt(q, spec)
        t_end = skip + 4.0 * period
        if cfg is not None:
            dt = min(dt, cfg.dt)
            t_end = max(t_end, cfg.t_end)
        ts = run(q, spec, SimConfig(dt=dt, t_end=t_end, transient_skip=skip))
        errs.append(rms_error(ts, "x1", "v_clean", (skip, float(ts.t[-1]))))
    slope = np.polyfit(np.log(eps), np.log(errs), 1)[0]
    return float(slope)
