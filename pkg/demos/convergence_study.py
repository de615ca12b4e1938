"""
How fast does the propagator converge?
======================================

Halving the step should shrink the error sixteenfold for a fourth-order
scheme. We watch that happen on the tanh step, first through the Richardson
estimate and then directly against the exact reflection coefficient.
"""

from kgscatter import ScatteringProblem, analytic_coefficients, convergence_gate, solve_point
from kgscatter import tanh_potential

problem = ScatteringProblem.default(tanh_potential(5.0, 1.0))

rep = convergence_gate(problem, [-2.0, 0.0, 8.0])
print(f"Richardson order at N = {problem.step_count}: {rep.order_estimate:.3f}")

print("\n    N      E=-2 err     E=0 err      E=8 err")
for n in (1000, 2000, 4000, 8000, 16000):
    p = problem.replace(step_count=n)
    errs = [abs(solve_point(p, e).big_r - analytic_coefficients(5.0, 1.0, 1.0, e)[0])
            for e in (-2.0, 0.0, 8.0)]
    print(f"{n:6d}  " + "  ".join(f"{err:11.3e}" for err in errs))

# very coarse grids are outside the asymptotic regime; the estimate is meaningless there
coarse = convergence_gate(problem.replace(step_count=10), [-2.0, 0.0, 8.0])
print(f"\nN = 10: order estimate {coarse.order_estimate:.1f}, gate passed: {coarse.passed}")
