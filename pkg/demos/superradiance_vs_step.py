"""
Superradiance switches on with the step height
==============================================

A Klein band only exists once the step exceeds twice the mass. Here we track
the peak reflection as the tanh height grows through that point.
"""

import numpy as np

from kgscatter import ScatteringProblem, has_superradiant_band, solve_points, tanh_potential

m = 1.0
for a in (0.5, 0.9, 1.1, 2.0, 3.0, 5.0):
    spec = tanh_potential(a, 1.0)
    problem = ScatteringProblem.default(spec, m)
    if not has_superradiant_band(problem.thresholds):
        print(f"a = {a:3.1f}: no Klein band")
        continue
    E = np.linspace(-a + m, a - m, 202)[1:-1]
    points, _ = solve_points(problem, E)
    best = max(points, key=lambda p: p.big_r)
    print(f"a = {a:3.1f}: band ({-a + m:+.1f}, {a - m:+.1f}), max R = {best.big_r:.6f} at E = {best.E:+.3f}")
