"""
Scattering off the alpha-attractor
==================================

No closed form exists for V(x) = a exp(-b tanh(cx)), so the log-derivative
sweep is the only route to R(E) and T(E) here. The band structure mirrors the
tanh case: a Klein band with R > 1 and a window of total reflection.
"""

import sys
from pathlib import Path

from kgscatter import (EnergyRegime, ScatteringProblem, SweepConfig, alpha_attractor,
                       emit_plot, regime_report, run_sweep)

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

spec = alpha_attractor(-5.0, 1.0, 1.0)
for row in regime_report(spec, 1.0):
    print(f"{row.regime.value:7s} [{row.e_lo:9.4f}, {row.e_hi:9.4f}]  expect {row.expected}")

result = run_sweep(SweepConfig(-16.0, 2.0, 2000, ScatteringProblem.default(spec)))
emit_plot(result, "R", out / "alpha_R.svg")
emit_plot(result, "T", out / "alpha_T.svg")

by_band = {}
for p in result.points:
    by_band.setdefault(p.regime, []).append(p.big_r)
for regime in EnergyRegime:
    if regime in by_band:
        r = by_band[regime]
        print(f"{regime.value:7s} {len(r):4d} points, R in [{min(r):.6f}, {max(r):.6f}]")
