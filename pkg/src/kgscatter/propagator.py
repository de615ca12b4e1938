"""Log-derivative propagation of the stationary Klein-Gordon equation.

The log-derivative y = phi'/phi obeys the Riccati equation

    y' = -k^2(x) - y^2,    k^2(x) = (E - V(x))^2 - m^2.

It is started from the outgoing (or decaying) wave at ``x_max`` and integrated
backward to ``x_min`` with fixed-step RK4, vectorised over energies. There the
reflection amplitude follows from matching to exp(i k_L x) + R exp(-i k_L x).

Where phi has a node, y has a pole. This happens routinely when the
transmitted channel is closed and a standing wave builds up on the left. Each
energy therefore switches, step by step, to the inverse log-derivative
w = 1/y (w' = 1 + k^2 w^2) whenever |y| is large compared to the local
wavenumber. Both forms describe the same solution, and the switch keeps the
state bounded.
"""

import functools
import math
from dataclasses import dataclass, field

import numpy as np

from .channels import EnergyRegime, channel_state, classify
from .numerics import NonFiniteStateError, rk4_step_sampled
from .potentials import asymptotic_limits, evaluate, saturation_length, thresholds

__all__ = [
    "ScatteringProblem",
    "SpectrumPoint",
    "local_k_squared",
    "riccati_rhs",
    "inverse_riccati_rhs",
    "right_boundary",
    "left_log_derivatives",
    "reflection_amplitudes",
    "solve_point",
    "solve_points",
    "DEFAULT_STEPS",
]

DEFAULT_STEPS = 20000
_DEFAULT_STEP_LENGTH = 2.0 * 15.0 / DEFAULT_STEPS
SATURATION_TOL = 1e-10
# finiteness is checked every this many steps
_CHECK_EVERY = 512


@dataclass(frozen=True)
class ScatteringProblem:
    """One potential on one finite domain, discretised into ``step_count`` steps."""

    potential: object
    m: float = 1.0
    x_min: float = -15.0
    x_max: float = 15.0
    step_count: int = DEFAULT_STEPS
    check_saturation: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if not self.m > 0:
            raise ValueError(f"mass must be positive, got {self.m!r}")
        if not self.x_min < self.x_max:
            raise ValueError(f"need x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if int(self.step_count) != self.step_count or self.step_count < 1:
            raise ValueError(f"step_count must be a positive integer, got {self.step_count!r}")
        object.__setattr__(self, "step_count", int(self.step_count))
        if self.check_saturation:
            v_l, v_r = self.limits
            scale = max(abs(self.potential.a), abs(v_l), abs(v_r))
            dev_l = abs(float(evaluate(self.potential, self.x_min)) - v_l)
            dev_r = abs(float(evaluate(self.potential, self.x_max)) - v_r)
            if max(dev_l, dev_r) > scale * SATURATION_TOL:
                raise ValueError(
                    f"potential not saturated on [{self.x_min}, {self.x_max}] "
                    f"(deviation {max(dev_l, dev_r):.3g}); widen the domain")

    @classmethod
    def default(cls, potential, m=1.0, step_count=None):
        """Domain [-L, L] with L = 15 / smoothness; steps keep h at 1.5e-3 unless given."""
        length = saturation_length(potential)
        if step_count is None:
            step_count = max(DEFAULT_STEPS, math.ceil(2.0 * length / _DEFAULT_STEP_LENGTH))
        return cls(potential, m, -length, length, step_count)

    @property
    def limits(self):
        return asymptotic_limits(self.potential)

    @property
    def thresholds(self):
        return thresholds(self.potential, self.m)

    @property
    def signed_step(self):
        """Backward step h = (x_min - x_max) / N (negative)."""
        return (self.x_min - self.x_max) / self.step_count

    def replace(self, **changes):
        values = dict(potential=self.potential, m=self.m, x_min=self.x_min,
                      x_max=self.x_max, step_count=self.step_count,
                      check_saturation=self.check_saturation)
        values.update(changes)
        return ScatteringProblem(**values)


@dataclass(frozen=True)
class SpectrumPoint:
    """Reflection and transmission at one energy.

    ``big_t`` is always ``1 - big_r``. ``convention`` marks points where no
    wave is incident from the left and R = 1, T = 0 is assigned, not computed.
    """

    E: float
    k_l: float
    k_r: float
    regime: EnergyRegime
    big_r: float
    big_t: float
    amplitude: complex | None = None
    convention: bool = False

    @property
    def flag(self):
        return "conv" if self.convention else ""


def local_k_squared(problem, E, x):
    """(E - V(x))^2 - m^2; negative where the wave is locally evanescent."""
    d = E - evaluate(problem.potential, x)
    return d * d - problem.m * problem.m


def riccati_rhs(problem, E, x, y):
    return -local_k_squared(problem, E, x) - y * y


def inverse_riccati_rhs(problem, E, x, w):
    """Right-hand side for w = 1/y: w' = 1 + k^2 w^2."""
    return 1.0 + local_k_squared(problem, E, x) * w * w


def right_boundary(problem, E):
    """Log-derivative at ``x_max``: i k_R (signed by group velocity) or -kappa_R."""
    _, v_r = problem.limits
    return channel_state(E, v_r, problem.m).log_derivative


@functools.lru_cache(maxsize=16)
def _potential_nodes(problem):
    # V at x_max + j h/2, j = 0..2N (step ends and midpoints)
    half = 0.5 * problem.signed_step
    x = problem.x_max + half * np.arange(2 * problem.step_count + 1)
    x[-1] = problem.x_min
    v = np.asarray(evaluate(problem.potential, x), dtype=float)
    v.flags.writeable = False
    return v


def _y_rhs(q, y):
    return -q - y * y


def _w_rhs(q, w):
    return 1.0 + q * w * w


def left_log_derivatives(problem, energies):
    """Propagate all ``energies`` from ``x_max`` to ``x_min``.

    Returns ``(u, inverted, bad)``: ``u`` holds y(x_min), or 1/y(x_min) where
    ``inverted`` is set; ``bad`` holds the position at which the state went
    non-finite (nan where it stayed finite).
    """
    E = np.atleast_1d(np.asarray(energies, dtype=float))
    m2 = problem.m * problem.m
    nodes = _potential_nodes(problem)
    h = problem.signed_step
    _, v_r = problem.limits

    u = np.array([channel_state(e, v_r, problem.m).log_derivative for e in E],
                 dtype=complex)
    inverted = np.zeros(E.shape, dtype=bool)
    bad = np.full(E.shape, np.nan)

    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        q_start = (E - nodes[0]) ** 2 - m2
        for j in range(problem.step_count):
            q_mid = (E - nodes[2 * j + 1]) ** 2 - m2
            q_end = (E - nodes[2 * j + 2]) ** 2 - m2

            # chart choice: y where |y| <= s, w = 1/y where |y| > s, with
            # s = max(|k|, m) at the start of the step. No hysteresis: any
            # band where the larger of |y|/s, s|w| is carried costs accuracy.
            s2 = np.maximum(np.abs(q_start), m2)
            a2 = u.real * u.real + u.imag * u.imag
            flip = np.where(inverted, a2 * s2 > 1.0, a2 > s2)
            if flip.any():
                u = np.where(flip, 1.0 / np.where(flip, u, 1.0), u)
                inverted ^= flip

            if not inverted.any():
                u = rk4_step_sampled(_y_rhs, q_start, q_mid, q_end, u, h)
            elif inverted.all():
                u = rk4_step_sampled(_w_rhs, q_start, q_mid, q_end, u, h)
            else:
                u = np.where(inverted,
                             rk4_step_sampled(_w_rhs, q_start, q_mid, q_end, u, h),
                             rk4_step_sampled(_y_rhs, q_start, q_mid, q_end, u, h))
            q_start = q_end

            if (j + 1) % _CHECK_EVERY == 0 or j + 1 == problem.step_count:
                newly = ~np.isfinite(u) & np.isnan(bad)
                if newly.any():
                    bad[newly] = problem.x_max + (j + 1) * h
                    # park failed energies on a harmless finite value
                    u = np.where(newly, 0.0, u)
    return u, inverted, bad


def reflection_amplitudes(problem, energies):
    """Complex reflection amplitudes R(E) for left-propagating-incident energies.

    Returns ``(R, bad)``; ``R`` is nan for energies whose left channel is
    closed or whose propagation failed (``bad`` then holds the failure position).
    """
    E = np.atleast_1d(np.asarray(energies, dtype=float))
    v_l, _ = problem.limits
    k_l = np.array([channel_state(e, v_l, problem.m).k_signed for e in E])
    open_left = np.array([channel_state(e, v_l, problem.m).propagating for e in E], dtype=bool)
    R = np.full(E.shape, np.nan, dtype=complex)
    bad = np.full(E.shape, np.nan)
    if not open_left.any():
        return R, bad
    u, inverted, bad_open = left_log_derivatives(problem, E[open_left])
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        ik = 1j * k_l[open_left]
        # (ik - y)/(ik + y), written in w = 1/y where inverted
        num = np.where(inverted, ik * u - 1.0, ik - u)
        den = np.where(inverted, ik * u + 1.0, ik + u)
        phase = np.exp(2.0 * ik * problem.x_min)
        r = phase * num / den
    r[~np.isnan(bad_open)] = np.nan
    R[open_left] = r
    bad[open_left] = bad_open
    return R, bad


def _point(problem, E, amplitude, regime):
    v_l, v_r = problem.limits
    left = channel_state(E, v_l, problem.m)
    right = channel_state(E, v_r, problem.m)
    k_l = left.k_signed if left.propagating else 0.0
    k_r = right.k_signed if right.propagating else 0.0
    if amplitude is None:
        return SpectrumPoint(E, k_l, k_r, regime, 1.0, 0.0, None, True)
    big_r = abs(amplitude) ** 2
    return SpectrumPoint(E, k_l, k_r, regime, big_r, 1.0 - big_r, complex(amplitude), False)


def solve_points(problem, energies):
    """Solve many energies in one vectorised pass.

    Returns ``(points, failures)``. ``points`` has one entry per energy and
    ``None`` where propagation failed; ``failures`` maps the index of each
    failed energy to the position where its state became non-finite.
    """
    E = [float(e) for e in np.atleast_1d(energies)]
    th = problem.thresholds
    regimes = [classify(e, th) for e in E]
    R, bad = reflection_amplitudes(problem, E)
    points, failures = [], {}
    for i, (e, regime) in enumerate(zip(E, regimes)):
        if regime is EnergyRegime.LEFT_EVANESCENT:
            points.append(_point(problem, e, None, regime))
        elif not np.isnan(bad[i]):
            points.append(None)
            failures[i] = float(bad[i])
        else:
            points.append(_point(problem, e, R[i], regime))
    return points, failures


def solve_point(problem, E):
    """Reflection and transmission at a single energy.

    Energies with a closed left channel get the R = 1, T = 0 convention.

    Raises
    ------
    NonFiniteStateError
        If the propagated state became non-finite.
    """
    points, failures = solve_points(problem, [E])
    if failures:
        pos = failures[0]
        raise NonFiniteStateError(
            f"non-finite log-derivative at E={E!r}, x={pos:.6g}", position=pos)
    return points[0]
