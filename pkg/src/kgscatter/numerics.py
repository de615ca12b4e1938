"""Low-level numerics: complex log-Gamma, principal square root and RK4.

Everything here is a pure function of its arguments.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "GammaPoleError",
    "NonFiniteStateError",
    "Rk4Config",
    "log_gamma",
    "gamma",
    "is_gamma_pole",
    "branch_sqrt",
    "rk4_step",
    "rk4_step_sampled",
    "rk4_integrate",
]

# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_POLE_TOL = 1e-12


class GammaPoleError(ValueError):
    """Raised when Gamma is evaluated at (or within 1e-12 of) a pole."""


class NonFiniteStateError(ArithmeticError):
    """Integration produced inf/nan; ``position`` is where it was detected."""

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


def is_gamma_pole(z, tol=_POLE_TOL):
    """True if ``z`` lies within ``tol`` of a non-positive integer."""
    z = complex(z)
    if z.real > 0.5:
        return False
    n = round(z.real)
    return n <= 0 and abs(z - n) <= tol


def _log_gamma_right(z):
    # valid for Re z >= 0.5
    z = z - 1.0
    series = _LANCZOS_P[0]
    for i in range(1, len(_LANCZOS_P)):
        series += _LANCZOS_P[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(series)


def _log_sin_pi(z):
    # log(sin(pi z)) without overflow for large |Im z|
    w = math.pi * z
    if w.imag >= 0.0:
        return (-1j * w + cmath.log(1.0 - cmath.exp(2j * w))
                + complex(-math.log(2.0), 0.5 * math.pi))
    return (1j * w + cmath.log(1.0 - cmath.exp(-2j * w))
            + complex(-math.log(2.0), -0.5 * math.pi))


def log_gamma(z):
    """Principal branch of log Gamma(z) for complex ``z``.

    Uses the Lanczos approximation (g=7, 9 terms) for ``Re z >= 0.5`` and the
    reflection formula otherwise. The branch agrees with the usual principal
    ``loggamma`` (real on the positive axis, cut along the negative axis).

    Raises
    ------
    GammaPoleError
        If ``z`` is within 1e-12 of a non-positive integer.
    """
    z = complex(z)
    if is_gamma_pole(z):
        raise GammaPoleError(f"Gamma has a pole at z={z!r}")
    if z.real >= 0.5:
        return _log_gamma_right(z)
    return _LOG_PI - _log_sin_pi(z) - _log_gamma_right(1.0 - z)


def gamma(z):
    """Gamma(z) for complex ``z``; ``exp(log_gamma(z))``."""
    return cmath.exp(log_gamma(z))


def branch_sqrt(w):
    """Principal complex square root (Re >= 0; Im >= 0 when Re == 0).

    ``-1`` maps to ``1j``. Negative reals are treated as having a +0 imaginary
    part, which is where the principal branch puts them.
    """
    w = complex(w)
    if w.imag == 0.0:
        # normalise -0.0 so negative reals land on +i
        w = complex(w.real, 0.0)
    return cmath.sqrt(w)


@dataclass(frozen=True)
class Rk4Config:
    """Fixed-step RK4 settings. ``signed_step`` < 0 integrates backward."""

    step_count: int
    signed_step: float

    def __post_init__(self):
        if int(self.step_count) != self.step_count or self.step_count < 1:
            raise ValueError(f"step_count must be a positive integer, got {self.step_count!r}")
        if not math.isfinite(self.signed_step) or self.signed_step == 0.0:
            raise ValueError(f"signed_step must be finite and nonzero, got {self.signed_step!r}")

    @classmethod
    def spanning(cls, x_start, x_end, step_count):
        """Config that walks from ``x_start`` to ``x_end`` in ``step_count`` steps."""
        return cls(int(step_count), (x_end - x_start) / step_count)

    @property
    def span(self):
        return self.signed_step * self.step_count


def rk4_step(rhs, x, y, h):
    """One classical RK4 step of ``y' = rhs(x, y)``; works on scalars or arrays."""
    half = 0.5 * h
    k1 = rhs(x, y)
    k2 = rhs(x + half, y + half * k1)
    k3 = rhs(x + half, y + half * k2)
    k4 = rhs(x + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_step_sampled(rhs, c_start, c_mid, c_end, y, h):
    """RK4 step when ``rhs(c, y)`` depends on x only through a tabulated coefficient.

    ``c_start``, ``c_mid`` and ``c_end`` are the coefficient at x, x + h/2 and
    x + h. Lets callers precompute the x-dependence once and reuse it across
    many right-hand sides.
    """
    half = 0.5 * h
    k1 = rhs(c_start, y)
    k2 = rhs(c_mid, y + half * k1)
    k3 = rhs(c_mid, y + half * k2)
    k4 = rhs(c_end, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def rk4_integrate(rhs, y_start, x_start, config):
    """Integrate ``y' = rhs(x, y)`` from ``x_start`` over ``config.step_count`` steps.

    Returns y at ``x_start + config.signed_step * config.step_count``.

    Raises
    ------
    NonFiniteStateError
        As soon as a step yields a non-finite value; ``position`` is the x
        reached by the offending step.
    """
    h = config.signed_step
    y = y_start
    for j in range(config.step_count):
        x = x_start + j * h
        y = rk4_step(rhs, x, y, h)
        if not np.all(np.isfinite(y)):
            raise NonFiniteStateError(
                f"non-finite RK4 state at x={x + h:.6g}", position=x + h)
    return y
