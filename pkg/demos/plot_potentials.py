"""
The two step-like potentials
============================

Draws the smooth tanh step and the alpha-attractor profile, and lists where
their asymptotic thresholds sit for a unit-mass particle.
"""

import sys
from pathlib import Path

from kgscatter import alpha_attractor, plot_potential, tanh_potential, thresholds

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

# V(x) = a tanh(bx): height 5, unit smoothness
tanh_v = tanh_potential(5.0, 1.0)
plot_potential(tanh_v, out / "potential_tanh.svg")

# V(x) = a exp(-b tanh(cx)): an asymmetric step between a e^b and a e^-b
alpha_v = alpha_attractor(-5.0, 1.0, 1.0)
plot_potential(alpha_v, out / "potential_alpha.svg")

for name, spec in [("tanh", tanh_v), ("alpha", alpha_v)]:
    th = thresholds(spec, 1.0)
    print(f"{name:5s} V_L={th.v_l:+.4f}  V_R={th.v_r:+.4f}  thresholds:",
          ", ".join(f"{t:+.4f}" for t in th.sorted()))
