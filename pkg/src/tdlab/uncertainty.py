"""Disturbance reconstruction for the scalar uncertain plant.

The plant is x' = -x + u(t) + delta(t) with measurement y = x + noise.
Since delta = x' + x - u, a differentiator driven by y supplies estimates
of x and x' and the disturbance follows from the algebraic identity:

    delta_hat = x2_hat + x1_hat - u

The filtered estimate x1_hat (not the raw measurement y) stands in for x,
so the measurement noise that the differentiator suppresses is not
reinjected into the reconstruction.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import _kernels
from .dynamics import DiffParams
from .signals import NoiseSpec, bl_white_noise
from .simulate import STATE_LIMIT, InstabilityError, SimConfig, TimeSeries, time_grid


@dataclass(frozen=True)
class PlantConfig:
    """Scalar uncertain plant setup.

    u and delta are vectorized callables of time (control input and the
    disturbance truth channel); noise is the measurement noise on y.
    """

    u: Callable[[np.ndarray], np.ndarray]
    delta: Callable[[np.ndarray], np.ndarray]
    noise: Optional[NoiseSpec] = None
    x0: float = 0.0


def simulate_plant(cfg: PlantConfig, sim: SimConfig) -> TimeSeries:
    """Integrate x' = -x + u + delta and record x, y = x + noise, u, delta."""
    t, tm = time_grid(sim)
    forcing = np.asarray(cfg.u(t), dtype=float) + np.asarray(cfg.delta(t), dtype=float)
    forcing_mid = np.asarray(cfg.u(tm), dtype=float) + np.asarray(cfg.delta(tm), dtype=float)
    x, bad = _kernels.integrate_relaxation(
        cfg.x0, forcing, forcing_mid, 1.0, sim.dt, STATE_LIMIT)
    if bad >= 0:
        t_bad = bad * sim.dt
        raise InstabilityError(f"plant state exceeded {STATE_LIMIT:g} at "
                               f"t={t_bad:g} s", t=t_bad)
    y = x.copy()
    if cfg.noise is not None and cfg.noise.power > 0.0:
        y = y + bl_white_noise(cfg.noise, t)
    return TimeSeries(t=t, channels={
        "x": x,
        "y": y,
        "u": np.asarray(cfg.u(t), dtype=float),
        "delta_true": np.asarray(cfg.delta(t), dtype=float),
    })


def estimate_delta(ts: TimeSeries, p: DiffParams) -> TimeSeries:
    """Reconstruct the disturbance from a recorded plant run.

    Drives the differentiator with the sampled y sequence, causally: within
    each step the input is interpolated linearly between the sample that
    opens the step and the one that closes it (no future samples beyond the
    step, no acausal smoothing).  Appends channels x1_hat, x2_hat and
    delta_hat = x2_hat + x1_hat - u.
    """
    y = ts.channel("y")
    u = ts.channel("u")
    dt = ts.dt
    y_mid = 0.5 * (y[:-1] + y[1:])
    x1h, x2h, bad = _kernels.integrate_hybrid(
        0.0, 0.0, y, y_mid, p.eps, p.a0, p.a1, p.b0, p.b1, p.alpha,
        dt, STATE_LIMIT)
    if bad >= 0:
        t_bad = bad * dt
        raise InstabilityError(f"estimator state exceeded {STATE_LIMIT:g} "
                               f"at t={t_bad:g} s", t=t_bad)
    out = ts.with_channel("x1_hat", x1h).with_channel("x2_hat", x2h)
    return out.with_channel("delta_hat", x2h + x1h - u)
