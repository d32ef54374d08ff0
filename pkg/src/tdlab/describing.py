"""Equivalent linearization of the differentiator family.

Under a sinusoidal input of amplitude A, the signed-power nonlinearity is
replaced by its amplitude-dependent equivalent gain (the fundamental-harmonic
ratio).  The differentiator then collapses to a second-order low-pass system
whose natural frequency and damping are computed here, together with its
analytic frequency response and the straight-line magnitude asymptotes.
"""

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .dynamics import DiffParams


class OverdampedError(ValueError):
    """Equivalent damping ratio fell outside (0, 1)."""


class DegenerateError(ValueError):
    """Effective position gain is zero; no second-order equivalent exists."""


@dataclass(frozen=True)
class EquivalentLinearization:
    """Second-order equivalent system G(s) = k_pos / (s^2 + k_vel*s + k_pos).

    omega_n and zeta are the usual natural frequency and damping ratio,
    omega_d = omega_n*sqrt(1 - zeta^2) the damped frequency, and
    k_pos = omega_n^2, k_vel = 2*zeta*omega_n the raw coefficients.
    """

    omega_n: float
    zeta: float
    omega_d: float
    k_pos: float
    k_vel: float

    @property
    def numerator(self) -> tuple[float]:
        return (self.k_pos,)

    @property
    def denominator(self) -> tuple[float, float, float]:
        return (1.0, self.k_vel, self.k_pos)


@dataclass(frozen=True)
class FreqPoint:
    """One point of a frequency response (phase in degrees, lag negative)."""

    omega: float
    mag: float
    mag_db: float
    phase_deg: float


def omega_factor(alpha: float) -> float:
    """Fundamental-harmonic factor (2/pi) * int_0^pi |sin t|^(alpha+1) dt.

    Equals 1 at alpha = 1 and 4/pi at alpha = 0; strictly between 1 and 2
    for alpha in (0, 1).  Evaluated by adaptive quadrature (the integrand is
    smooth on [0, pi]).
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    p = alpha + 1.0
    val, _ = quad(lambda th: abs(math.sin(th)) ** p, 0.0, math.pi,
                  epsabs=1e-10, epsrel=1e-10)
    return 2.0 / math.pi * val


def describing_gain(A: float, alpha: float) -> float:
    """Equivalent gain of sig(.)^alpha at oscillation amplitude A.

    N(A) = omega_factor(alpha) * A^(alpha-1): strictly decreasing in A for
    alpha < 1, identically 1 for alpha = 1.
    """
    if not A > 0.0:
        raise ValueError(f"amplitude must be positive, got {A}")
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    return omega_factor(alpha) * A ** (alpha - 1.0)


def natural_frequency(p: DiffParams, A: float) -> float:
    """Natural frequency of the equivalent system, sqrt(a0 + a1*N(A))/eps."""
    n_pos = describing_gain(A, p.alpha)
    k = p.a0 + p.a1 * n_pos
    if k <= 0.0:
        raise DegenerateError("effective position gain is zero")
    return math.sqrt(k) / p.eps


def linearize(p: DiffParams, A: float) -> EquivalentLinearization:
    """Equivalent second-order linearization at input amplitude A.

    omega_n = sqrt(a0 + a1*N(A)) / eps
    zeta    = (b0 + b1*N(A)) / (2*sqrt(a0 + a1*N(A)))

    For a purely linear parameter set the result is independent of A.
    Raises OverdampedError when the damping ratio leaves (0, 1), since the
    damped-frequency and phase formulas assume an underdamped system.
    """
    if not A > 0.0:
        raise ValueError(f"amplitude must be positive, got {A}")
    n_pos = describing_gain(A, p.alpha)
    kp_gain = p.a0 + p.a1 * n_pos
    kv_gain = p.b0 + p.b1 * n_pos
    if kp_gain <= 0.0:
        raise DegenerateError("effective position gain is zero")
    omega_n = math.sqrt(kp_gain) / p.eps
    zeta = kv_gain / (2.0 * math.sqrt(kp_gain))
    if not 0.0 < zeta < 1.0:
        raise OverdampedError(
            f"damping ratio {zeta:.6g} outside (0, 1); "
            "equivalent system is not underdamped")
    omega_d = omega_n * math.sqrt(1.0 - zeta * zeta)
    return EquivalentLinearization(
        omega_n=omega_n, zeta=zeta, omega_d=omega_d,
        k_pos=kp_gain / (p.eps * p.eps), k_vel=kv_gain / p.eps)


def freq_response(lin: EquivalentLinearization, omega: float) -> FreqPoint:
    """Analytic frequency response of the equivalent second-order system.

    Magnitude 1/sqrt((1 - u^2)^2 + 4*zeta^2*u^2) with u = omega/omega_n;
    phase in (-180, 0] degrees, exactly -90 at omega = omega_n.
    """
    if not omega > 0.0:
        raise ValueError("omega must be positive")
    u = omega / lin.omega_n
    u2 = u * u
    mag = 1.0 / math.sqrt((1.0 - u2) ** 2 + 4.0 * lin.zeta ** 2 * u2)
    if u < 1.0:
        phase = -math.degrees(math.atan(2.0 * lin.zeta * u / (1.0 - u2)))
    elif u == 1.0:
        phase = -90.0
    else:
        phase = -(180.0 - math.degrees(math.atan(2.0 * lin.zeta * u / (u2 - 1.0))))
    return FreqPoint(omega=omega, mag=mag, mag_db=20.0 * math.log10(mag),
                     phase_deg=phase)


def asymptote_db(lin: EquivalentLinearization, omega: float) -> float:
    """Straight-line magnitude asymptote: 0 dB below the corner, -40 dB/decade above."""
    if not omega > 0.0:
        raise ValueError("omega must be positive")
    if omega <= lin.omega_n:
        return 0.0
    return -40.0 * math.log10(omega / lin.omega_n)


def first_order_response(a0: float, eps: float, omega: float) -> FreqPoint:
    """Frequency response of the classical first-order filter.

    G(s) = c/(s + c) with corner c = sqrt(a0)/eps; rolls off at
    -20 dB/decade, half the slope of the second-order differentiator.
    """
    if not (a0 > 0.0 and eps > 0.0 and omega > 0.0):
        raise ValueError("a0, eps and omega must all be positive")
    w_ratio = omega * eps / math.sqrt(a0)
    mag = 1.0 / math.sqrt(w_ratio * w_ratio + 1.0)
    phase = -math.degrees(math.atan(w_ratio))
    return FreqPoint(omega=omega, mag=mag, mag_db=20.0 * math.log10(mag),
                     phase_deg=phase)


def bode_table(lin: EquivalentLinearization, omegas) -> list[FreqPoint]:
    """Tabulate freq_response over a strictly increasing frequency grid."""
    omegas = list(omegas)
    for lo, hi in zip(omegas, omegas[1:]):
        if not hi > lo:
            raise ValueError("frequency grid must be strictly increasing")
    return [freq_response(lin, w) for w in omegas]
