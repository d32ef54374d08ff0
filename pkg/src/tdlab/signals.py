"""Test inputs: sinusoids and band-limited white noise with hold semantics.

The noise generator mimics the usual simulation-block convention: a zero-mean
Gaussian value with variance power/sample_time is drawn for each hold
interval [k*Ts, (k+1)*Ts) and held constant across it.  Draws come from
numpy's default PCG64 generator seeded with the spec'd integer seed, so a
given (seed, k) pair always yields the same value on every platform pinned
to the same numpy generation algorithm (standard_normal via ziggurat).
"""

import math
from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

#: Seed used whenever the caller does not supply one (never wall-clock).
DEFAULT_SEED = 12345


@dataclass(frozen=True)
class NoiseSpec:
    """Band-limited white noise: held Gaussian draws, variance power/sample_time."""

    power: float
    sample_time: float
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.power < 0.0:
            raise ValueError("noise power must be non-negative")
        if not self.sample_time > 0.0:
            raise ValueError("sample_time must be positive")

    @property
    def sigma(self) -> float:
        """Standard deviation of each held value."""
        return math.sqrt(self.power / self.sample_time)


@dataclass(frozen=True)
class SignalSpec:
    """Sinusoid A*sin(omega*t), optionally with additive hold noise."""

    amplitude: float
    omega: float
    noise: Optional[NoiseSpec] = None

    def with_seed(self, seed: int) -> "SignalSpec":
        if self.noise is None:
            return self
        return replace(self, noise=replace(self.noise, seed=seed))


def sinusoid(A: float, omega: float, t):
    """A*sin(omega*t); accepts scalars or arrays."""
    return A * np.sin(omega * np.asarray(t, dtype=float))


def sinusoid_derivative(A: float, omega: float, t):
    """Exact derivative A*omega*cos(omega*t) for reference channels."""
    return A * omega * np.cos(omega * np.asarray(t, dtype=float))


def noise_holds(spec: NoiseSpec, n: int) -> np.ndarray:
    """First n held noise values, a deterministic function of spec.seed."""
    rng = np.random.default_rng(spec.seed)
    return rng.standard_normal(n) * spec.sigma


def bl_white_noise(spec: NoiseSpec, t):
    """Noise value(s) at time(s) t >= 0 (constant inside each hold interval).

    The hold index is floor(t/Ts) with a tiny forward nudge so that grid
    times landing a rounding error below a hold boundary still pick up the
    new hold.
    """
    t = np.asarray(t, dtype=float)
    if spec.power == 0.0:
        return np.zeros_like(t) if t.ndim else 0.0
    k = np.floor(t / spec.sample_time + 1e-9).astype(np.int64)
    holds = noise_holds(spec, int(np.max(k)) + 1)
    out = holds[k]
    return out if t.ndim else float(out)


def eval_signal(spec: SignalSpec, t):
    """Full input signal: sinusoid plus noise when configured."""
    v = sinusoid(spec.amplitude, spec.omega, t)
    if spec.noise is not None and spec.noise.power > 0.0:
        v = v + bl_white_noise(spec.noise, t)
    return v


def eval_clean(spec: SignalSpec, t):
    """Noise-free reference channel of the signal."""
    return sinusoid(spec.amplitude, spec.omega, t)


def eval_derivative(spec: SignalSpec, t):
    """Exact derivative of the noise-free reference."""
    return sinusoid_derivative(spec.amplitude, spec.omega, t)
