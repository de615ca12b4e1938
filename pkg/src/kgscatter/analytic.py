"""Closed-form reflection and transmission for V(x) = a tanh(b x).

The hypergeometric solution gives two amplitudes as ratios of Gamma
functions::

    A = G(1-2i mu) G(-2i nu) / [G(lam - i nu - i mu) G(1 - lam - i nu - i mu)]
    B = G(1-2i mu) G( 2i nu) / [G(lam + i nu - i mu) G(1 - lam + i nu - i mu)]

with nu = k_L/(2b), mu = k_R/(2b), lam = (b + sqrt(b^2 - 4a^2)) / (2b). Then
R = |B|^2/|A|^2 and T = Re(mu/nu)/|A|^2. T is a flux ratio computed
independently of R, so R + T = 1 is a real check.

Products of Gammas are formed as exp(sum of log-Gammas), since the individual
factors under- or overflow once |Im| reaches a few hundred.
"""

import cmath
import math
from dataclasses import dataclass

from .channels import channel_state
from .numerics import GammaPoleError, branch_sqrt, is_gamma_pole, log_gamma

__all__ = [
    "TanhAnalyticParams",
    "LeftEvanescentError",
    "analytic_params",
    "analytic_amplitudes",
    "analytic_coefficients",
]


class LeftEvanescentError(ValueError):
    """No wave is incident from the left (nu is imaginary)."""


@dataclass(frozen=True)
class TanhAnalyticParams:
    nu: complex
    mu: complex
    lam: complex

    @property
    def left_propagating(self):
        return self.nu.imag == 0.0

    @property
    def right_propagating(self):
        return self.mu.imag == 0.0


def analytic_params(a, b, m, E):
    """Dimensionless nu, mu, lambda for the tanh potential.

    nu and mu are the signed wavenumbers over 2b where the channel is open,
    and +i kappa/(2b) where it is closed.
    """
    if not b > 0:
        raise ValueError(f"b must be positive, got {b!r}")
    left = channel_state(E, -a, m)
    right = channel_state(E, a, m)
    nu = left.wavenumber / (2.0 * b)
    mu = right.wavenumber / (2.0 * b)
    lam = (b + branch_sqrt(b * b - 4.0 * a * a)) / (2.0 * b)
    return TanhAnalyticParams(nu, mu, lam)


def _log_ratio(numer, denom):
    # log of prod G(numer) / prod G(denom); None if a denominator sits on a
    # pole (1/G vanishes there, so the whole ratio is 0)
    if any(is_gamma_pole(z) for z in denom):
        for z in numer:
            log_gamma(z)  # still reject poles upstairs
        return None
    return sum(log_gamma(z) for z in numer) - sum(log_gamma(z) for z in denom)


def _log_amplitudes(params):
    nu, mu, lam = params.nu, params.mu, params.lam
    i = 1j
    c = 1.0 - 2.0 * i * mu
    log_a = _log_ratio((c, -2.0 * i * nu),
                       (lam - i * nu - i * mu, 1.0 - lam - i * nu - i * mu))
    log_b = _log_ratio((c, 2.0 * i * nu),
                       (lam + i * nu - i * mu, 1.0 - lam + i * nu - i * mu))
    return log_a, log_b


def analytic_amplitudes(params):
    """Return ``(A, B)`` as complex numbers.

    Raises
    ------
    GammaPoleError
        If a numerator Gamma argument lands on a pole.
    """
    log_a, log_b = _log_amplitudes(params)
    if log_a is None:
        raise GammaPoleError("amplitude A vanishes (denominator Gamma pole)")
    A = cmath.exp(log_a)
    B = 0j if log_b is None else cmath.exp(log_b)
    return A, B


def analytic_coefficients(a, b, m, E):
    """Exact ``(R, T)`` for V(x) = a tanh(b x).

    R = |B|^2/|A|^2, T = Re(mu/nu)/|A|^2; T = 0 when the right channel is
    closed.

    Raises
    ------
    LeftEvanescentError
        If the left channel is closed (R = 1 by convention there).
    """
    params = analytic_params(a, b, m, E)
    if not params.left_propagating:
        raise LeftEvanescentError(f"left channel closed at E={E!r}")
    if params.nu == 0:
        # exact threshold: total reflection
        return 1.0, 0.0
    log_a, log_b = _log_amplitudes(params)
    if log_a is None:
        raise GammaPoleError(f"amplitude A vanishes at E={E!r}")
    log_abs_a = log_a.real
    big_r = 0.0 if log_b is None else math.exp(2.0 * (log_b.real - log_abs_a))
    big_t = (params.mu / params.nu).real * math.exp(-2.0 * log_abs_a)
    return big_r, big_t
