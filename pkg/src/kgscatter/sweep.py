"""Energy sweeps, oracle comparison, convergence checks and regime tables."""

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analytic import analytic_coefficients
from .channels import EnergyRegime, classify, regime_bands
from .numerics import NonFiniteStateError
from .potentials import PotentialKind, thresholds
from .propagator import ScatteringProblem, solve_point, solve_points

__all__ = [
    "SweepConfig",
    "SweepResult",
    "SweepError",
    "OracleComparison",
    "ConvergenceReport",
    "RegimeRow",
    "default_energy_range",
    "energy_grid",
    "run_sweep",
    "compare_with_oracle",
    "convergence_gate",
    "regime_report",
]

log = logging.getLogger(__name__)

# energies per vectorised block; fixed so serial and parallel runs do
# bit-identical arithmetic
CHUNK_SIZE = 256
MAX_RETRIES = 3
MAX_FAILURE_FRACTION = 1e-3


class SweepError(RuntimeError):
    pass


@dataclass(frozen=True)
class SweepConfig:
    e_min: float
    e_max: float
    n_energies: int
    problem: ScatteringProblem
    threshold_epsilon: float | None = None
    parallel: bool = False
    workers: int | None = None

    def __post_init__(self):
        if not self.e_min < self.e_max:
            raise ValueError(f"need e_min < e_max, got [{self.e_min}, {self.e_max}]")
        if int(self.n_energies) != self.n_energies or self.n_energies < 2:
            raise ValueError(f"n_energies must be an integer >= 2, got {self.n_energies!r}")
        if self.threshold_epsilon is None:
            object.__setattr__(self, "threshold_epsilon", 1e-9 * self.problem.m)

    @classmethod
    def default(cls, problem, n_energies=2000, **kwargs):
        e_min, e_max = default_energy_range(problem.potential, problem.m)
        return cls(e_min, e_max, n_energies, problem, **kwargs)


@dataclass
class SweepResult:
    points: list
    meta: dict = field(default_factory=dict)

    @property
    def energies(self):
        return np.array([p.E for p in self.points])

    @property
    def big_r(self):
        return np.array([p.big_r for p in self.points])

    @property
    def big_t(self):
        return np.array([p.big_t for p in self.points])


def default_energy_range(potential, m=1.0):
    """Window covering all five bands: tanh [V_L-m-2, V_R+m+6], alpha [.., V_R+m+2]."""
    th = thresholds(potential, m)
    lo, hi = th.sorted()[0], th.sorted()[-1]
    pad = 6.0 if potential.kind is PotentialKind.HYPERBOLIC_TANGENT else 2.0
    return lo - 2.0, hi + pad


def energy_grid(config):
    """Uniform grid with points closer than epsilon to a threshold pushed just above it."""
    E = np.linspace(config.e_min, config.e_max, int(config.n_energies))
    eps = config.threshold_epsilon
    for t in config.problem.thresholds.sorted():
        near = np.abs(E - t) < eps
        E[near] = t + eps
    if np.any(np.diff(E) <= 0):
        raise ValueError("threshold shift broke grid ordering; use fewer energies")
    return E


def _solve_chunk(problem, energies):
    return solve_points(problem, energies)


def _retry(problem, E):
    # double the steps and shift the grid origin by h/3 each attempt
    for attempt in range(1, MAX_RETRIES + 1):
        h = abs(problem.signed_step)
        problem = problem.replace(x_max=problem.x_max + h / 3.0,
                                  step_count=2 * problem.step_count)
        try:
            return solve_point(problem, E)
        except NonFiniteStateError as exc:
            log.debug("retry %d at E=%g failed: %s", attempt, E, exc)
    return None


def run_sweep(config):
    """Solve every grid energy; order is preserved whether or not run in parallel.

    Energies whose propagation fails are retried; those that still fail are
    left out of ``points`` and listed in ``meta['failed']``.

    Raises
    ------
    SweepError
        If more than 0.1% of the energies fail.
    """
    start = time.perf_counter()
    problem = config.problem
    E = energy_grid(config)
    chunks = [E[i:i + CHUNK_SIZE] for i in range(0, len(E), CHUNK_SIZE)]

    if config.parallel and len(chunks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_solve_chunk, [problem] * len(chunks), chunks))
    else:
        results = [_solve_chunk(problem, c) for c in chunks]

    points, failed = [], []
    for chunk, (chunk_points, failures) in zip(chunks, results):
        for j, pt in enumerate(chunk_points):
            if pt is None:
                e = float(chunk[j])
                log.info("non-finite state at E=%g (x=%g), retrying", e, failures[j])
                pt = _retry(problem, e)
                if pt is None:
                    failed.append(e)
                    continue
            points.append(pt)

    if len(failed) > MAX_FAILURE_FRACTION * len(E):
        raise SweepError(f"{len(failed)} of {len(E)} energies failed to propagate")

    meta = {
        "potential": problem.potential.as_dict(),
        "mass": problem.m,
        "domain": [problem.x_min, problem.x_max],
        "step_count": problem.step_count,
        "n_energies": len(E),
        "threshold_epsilon": config.threshold_epsilon,
        "failed": failed,
        "wall_time": time.perf_counter() - start,
    }
    return SweepResult(points, meta)


@dataclass
class OracleComparison:
    max_abs_err_R: float
    max_abs_err_T: float
    worst_energy: float
    per_band: dict
    n_compared: int

    def passed(self, tol=1e-6):
        return self.max_abs_err_R <= tol


def compare_with_oracle(config, result=None):
    """Largest |R_numeric - R_exact| and |T_numeric - T_exact| over the sweep.

    Energies with a closed left channel are skipped. ``result`` may be passed
    to reuse an existing sweep of ``config``.
    """
    pot = config.problem.potential
    if pot.kind is not PotentialKind.HYPERBOLIC_TANGENT:
        raise ValueError("the closed-form oracle exists only for the tanh potential")
    if result is None:
        result = run_sweep(config)
    m = config.problem.m
    err_r = err_t = 0.0
    worst = math.nan
    per_band = {}
    n = 0
    for pt in result.points:
        if pt.convention:
            continue
        r_exact, t_exact = analytic_coefficients(pot.a, pot.b, m, pt.E)
        dr = abs(pt.big_r - r_exact)
        dt = abs(pt.big_t - t_exact)
        if dr > err_r or n == 0:
            worst = pt.E
        err_r = max(err_r, dr)
        err_t = max(err_t, dt)
        label = pt.regime.value
        per_band[label] = max(per_band.get(label, 0.0), dr)
        n += 1
    return OracleComparison(err_r, err_t, worst, per_band, n)


@dataclass
class ConvergenceReport:
    order_estimate: float
    passed: bool
    note: str = ""
    per_energy: dict = field(default_factory=dict)


def convergence_gate(problem, energies, roundoff=1e-12, band=(3.5, 4.5)):
    """Richardson order of the reflection amplitude from N, 2N and 4N steps.

    Energies where the 2N/4N difference is already below ``roundoff`` carry
    no order information and are left out of the average; if none remain the
    gate passes with a note.
    """
    energies = [float(e) for e in energies]
    if len(energies) < 3:
        raise ValueError("need at least three sample energies")
    th = problem.thresholds
    n = problem.step_count
    for e in energies:
        if classify(e, th) is EnergyRegime.LEFT_EVANESCENT:
            raise ValueError(f"E={e} has no incident wave")
    amps = []
    for k in (1, 2, 4):
        points, failures = solve_points(problem.replace(step_count=k * n), energies)
        if failures:
            raise NonFiniteStateError(f"propagation failed at {k * n} steps")
        amps.append([p.amplitude for p in points])
    orders = {}
    for i, e in enumerate(energies):
        d1 = abs(amps[0][i] - amps[1][i])
        d2 = abs(amps[1][i] - amps[2][i])
        orders[e] = math.log2(d1 / d2) if d2 > roundoff and d1 > 0 else None
    usable = [o for o in orders.values() if o is not None]
    if not usable:
        return ConvergenceReport(math.nan, True, "differences at round-off; order not measurable",
                                 orders)
    order = sum(usable) / len(usable)
    note = "" if len(usable) == len(orders) else f"{len(orders) - len(usable)} energies at round-off"
    return ConvergenceReport(order, band[0] <= order <= band[1], note, orders)


@dataclass(frozen=True)
class RegimeRow:
    regime: EnergyRegime
    e_lo: float
    e_hi: float

    @property
    def expected(self):
        return self.regime.expected_behavior


def regime_report(spec, m=1.0):
    """Regime bands of ``spec`` in increasing energy (four rows if no Klein band)."""
    return [RegimeRow(label, lo, hi) for label, lo, hi in regime_bands(thresholds(spec, m))]
