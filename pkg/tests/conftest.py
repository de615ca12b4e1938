import pytest

from kgscatter import ScatteringProblem, SweepConfig, alpha_attractor, run_sweep, tanh_potential

# parameters of the two reference configurations
TANH = dict(a=5.0, b=1.0)
ALPHA = dict(a=-5.0, b=1.0, c=1.0)
ALPHA_SUPER = (-12.591409142295225, -2.8393972058572117)
ALPHA_EVAN_R = (-2.8393972058572117, -0.8393972058572117)


@pytest.fixture(scope="session")
def tanh_problem():
    return ScatteringProblem.default(tanh_potential(**TANH), m=1.0)


@pytest.fixture(scope="session")
def alpha_problem():
    return ScatteringProblem.default(alpha_attractor(**ALPHA), m=1.0)


@pytest.fixture(scope="session")
def tanh_sweep_config(tanh_problem):
    return SweepConfig(-8.0, 12.0, 2000, tanh_problem)


@pytest.fixture(scope="session")
def tanh_sweep(tanh_sweep_config):
    return run_sweep(tanh_sweep_config)


@pytest.fixture(scope="session")
def alpha_sweep(alpha_problem):
    return run_sweep(SweepConfig(-16.0, 2.0, 2000, alpha_problem))
