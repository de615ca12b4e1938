"""Klein-Gordon scattering off smooth step potentials by log-derivative propagation.

The main entry points::

    from kgscatter import tanh_potential, ScatteringProblem, solve_point
    problem = ScatteringProblem.default(tanh_potential(a=5, b=1), m=1)
    solve_point(problem, 0.0).big_r   # > 1: superradiant
"""

from .analytic import (LeftEvanescentError, TanhAnalyticParams, analytic_amplitudes,
                       analytic_coefficients, analytic_params)
from .channels import (ChannelState, EnergyRegime, channel_state, classify,
                       has_superradiant_band, regime_bands)
from .numerics import (GammaPoleError, NonFiniteStateError, Rk4Config, branch_sqrt, gamma,
                       log_gamma, rk4_integrate, rk4_step)
from .plotting import emit_plot, plot_potential
from .potentials import (PotentialKind, PotentialSpec, Thresholds, alpha_attractor,
                         asymptotic_limits, evaluate, thresholds, tanh_potential)
from .propagator import (ScatteringProblem, SpectrumPoint, local_k_squared,
                         reflection_amplitudes, riccati_rhs, right_boundary, solve_point,
                         solve_points)
from .spectrum_io import read_csv, write_csv, write_json
from .sweep import (SweepConfig, SweepResult, compare_with_oracle, convergence_gate,
                    energy_grid, regime_report, run_sweep)

__version__ = "0.1.0"
