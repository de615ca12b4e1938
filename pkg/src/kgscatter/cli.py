"""Command-line front end.

    kgscatter sweep    --potential tanh --a 5 --b 1 --out spectrum.csv --plot R.svg
    kgscatter point    --potential alpha --a -5 --b 1 --c 1 --energy -7
    kgscatter compare  --potential tanh --a 5 --b 1
    kgscatter regimes  --potential alpha --a -5 --b 1 --c 1
    kgscatter converge --potential tanh --energies=-2,0,8
    kgscatter plot-potential --potential tanh --plot V.svg

Exit codes: 0 success, 1 usage error or failed check, 2 I/O failure.
"""

import argparse
import json
import logging
import math
import sys
from dataclasses import dataclass

from .channels import EnergyRegime, regime_bands
from .potentials import alpha_attractor, tanh_potential
from .plotting import emit_plot, plot_potential
from .propagator import ScatteringProblem, solve_point
from .spectrum_io import format_float, spectrum_csv, spectrum_json, write_csv, write_json
from .sweep import (SweepConfig, SweepResult, compare_with_oracle, convergence_gate,
                    default_energy_range, regime_report, run_sweep)

__all__ = ["CliInvocation", "UsageError", "parse_cli", "run_compare_report", "main"]

EXIT_OK, EXIT_FAIL, EXIT_IO = 0, 1, 2
MIN_STEPS = 1000

_DEFAULT_AB = {"tanh": (5.0, 1.0), "alpha": (-5.0, 1.0)}


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class CliInvocation:
    subcommand: str
    args: argparse.Namespace
    potential: object
    problem: ScatteringProblem

    def __getattr__(self, name):
        return getattr(self.args, name)


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _build_parser():
    common = _Parser(add_help=False)
    g = common.add_argument_group("potential")
    g.add_argument("--potential", choices=("tanh", "alpha"), default="tanh")
    g.add_argument("--a", type=float, help="height (default 5 for tanh, -5 for alpha)")
    g.add_argument("--b", type=float, help="tanh smoothness / alpha amplitude (default 1)")
    g.add_argument("--c", type=float, help="alpha smoothness (required for alpha)")
    g.add_argument("--mass", type=float, default=1.0)
    g = common.add_argument_group("grid")
    g.add_argument("--emin", type=float)
    g.add_argument("--emax", type=float)
    g.add_argument("--n-energies", type=int, default=2000)
    g.add_argument("--xmin", type=float)
    g.add_argument("--xmax", type=float)
    g.add_argument("--steps", type=int)
    g.add_argument("--allow-coarse", action="store_true",
                   help=f"permit --steps below {MIN_STEPS}")
    g.add_argument("--parallel", action="store_true")
    g.add_argument("--workers", type=int)
    g = common.add_argument_group("output")
    g.add_argument("--out", metavar="PATH", help="write results here instead of stdout")
    g.add_argument("--plot", metavar="PATH", help="write an SVG plot")
    g.add_argument("--quantity", choices=("R", "T"), default="R", help="what --plot shows")
    g.add_argument("--format", choices=("csv", "json"), default="csv")
    g.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="kgscatter",
                     description="Klein-Gordon scattering by the log-derivative method.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    sub.add_parser("sweep", parents=[common], help="R and T over an energy grid")
    p = sub.add_parser("point", parents=[common], help="R and T at one energy")
    p.add_argument("--energy", type=float, required=True)
    p = sub.add_parser("compare", parents=[common], help="numeric vs closed form (tanh only)")
    p.add_argument("--tol", type=float, default=1e-6)
    sub.add_parser("regimes", parents=[common], help="energy bands and expected behaviour")
    p = sub.add_parser("converge", parents=[common], help="measure the RK4 order")
    p.add_argument("--energies", type=_float_list,
                   help="comma-separated sample energies (default: one per open band)")
    sub.add_parser("plot-potential", parents=[common], help="SVG plot of V(x)")
    return parser


def parse_cli(argv):
    """Parse and validate ``argv``; raises ``UsageError`` naming the bad flag."""
    args = _build_parser().parse_args(argv)
    if args.potential == "alpha":
        if args.c is None:
            raise UsageError("--c is required with --potential alpha")
    elif args.c is not None:
        raise UsageError("--c is only valid with --potential alpha")
    if not args.mass > 0:
        raise UsageError(f"--mass must be positive, got {args.mass}")
    if args.steps is not None and args.steps < MIN_STEPS and not args.allow_coarse:
        raise UsageError(f"--steps {args.steps} is below {MIN_STEPS}; add --allow-coarse")
    if args.steps is not None and args.steps < 1:
        raise UsageError("--steps must be positive")
    if args.n_energies < 2:
        raise UsageError("--n-energies must be at least 2")

    a0, b0 = _DEFAULT_AB[args.potential]
    a = a0 if args.a is None else args.a
    b = b0 if args.b is None else args.b
    try:
        if args.potential == "tanh":
            pot = tanh_potential(a, b)
        else:
            pot = alpha_attractor(a, b, args.c)
        problem = ScatteringProblem.default(pot, args.mass, args.steps)
        if args.xmin is not None or args.xmax is not None:
            problem = problem.replace(
                x_min=problem.x_min if args.xmin is None else args.xmin,
                x_max=problem.x_max if args.xmax is None else args.xmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return CliInvocation(args.subcommand, args, pot, problem)


def _sweep_config(inv):
    e_min, e_max = default_energy_range(inv.potential, inv.problem.m)
    e_min = e_min if inv.emin is None else inv.emin
    e_max = e_max if inv.emax is None else inv.emax
    try:
        return SweepConfig(e_min, e_max, inv.n_energies, inv.problem,
                           parallel=inv.parallel, workers=inv.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_sweep(inv):
    result = run_sweep(_sweep_config(inv))
    if inv.out is None:
        _emit(spectrum_csv(result) if inv.format == "csv" else spectrum_json(result), None)
    elif inv.format == "csv":
        write_csv(result, inv.out)
    else:
        write_json(result, inv.out)
    if inv.plot:
        emit_plot(result, inv.quantity, inv.plot)
    if result.meta["failed"]:
        print(f"warning: {len(result.meta['failed'])} energies failed", file=sys.stderr)
    return EXIT_OK


def _cmd_point(inv):
    pt = solve_point(inv.problem, inv.energy)
    result = SweepResult([pt], {"potential": inv.potential.as_dict(), "mass": inv.problem.m})
    _emit(spectrum_csv(result) if inv.format == "csv" else spectrum_json(result), inv.out)
    return EXIT_OK


def run_compare_report(inv):
    """Return ``(report_text, exit_code)``; exit 0 iff max |dR| <= --tol."""
    if inv.potential.kind.value != "tanh":
        raise UsageError("compare needs --potential tanh (no closed form for alpha)")
    cmp = compare_with_oracle(_sweep_config(inv))
    ok = cmp.max_abs_err_R <= inv.tol
    lines = [
        f"energies compared : {cmp.n_compared}",
        f"max |dR|          : {cmp.max_abs_err_R:.3e}  (at E={cmp.worst_energy:.6g})",
        f"max |dT|          : {cmp.max_abs_err_T:.3e}",
    ]
    for label in [r.value for r in EnergyRegime]:
        if label in cmp.per_band:
            lines.append(f"  {label:<7s} max |dR| = {cmp.per_band[label]:.3e}")
    lines.append(f"tolerance {inv.tol:g}: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n", EXIT_OK if ok else EXIT_FAIL


def _cmd_compare(inv):
    text, code = run_compare_report(inv)
    _emit(text, inv.out)
    return code


def _cmd_regimes(inv):
    rows = regime_report(inv.potential, inv.problem.m)
    if inv.format == "json":
        text = json.dumps([{"regime": r.regime.value, "E_lo": r.e_lo if math.isfinite(r.e_lo)
                            else None, "E_hi": r.e_hi if math.isfinite(r.e_hi) else None,
                            "expected": r.expected} for r in rows], indent=1) + "\n"
    else:
        lines = ["regime,E_lo,E_hi,expected"]
        for r in rows:
            lo = format_float(r.e_lo) if math.isfinite(r.e_lo) else "-inf"
            hi = format_float(r.e_hi) if math.isfinite(r.e_hi) else "inf"
            lines.append(f"{r.regime.value},{lo},{hi},{r.expected}")
        text = "\n".join(lines) + "\n"
    _emit(text, inv.out)
    return EXIT_OK


def _default_samples(problem):
    # one energy inside every band that has an incident wave
    samples = []
    for label, lo, hi in regime_bands(problem.thresholds):
        if label is EnergyRegime.LEFT_EVANESCENT:
            continue
        if math.isinf(lo):
            samples.append(hi - 1.0)
        elif math.isinf(hi):
            samples.extend([lo + 1.0, lo + 2.0])
        else:
            samples.append(0.5 * (lo + hi))
    return samples


def _cmd_converge(inv):
    energies = inv.energies or _default_samples(inv.problem)
    try:
        rep = convergence_gate(inv.problem, energies)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lines = [f"step counts: {inv.problem.step_count}, x2, x4"]
    for e, order in rep.per_energy.items():
        lines.append(f"  E={e:<10g} order={'round-off' if order is None else f'{order:.3f}'}")
    lines.append(f"mean order {rep.order_estimate:.3f}: {'PASS' if rep.passed else 'FAIL'}"
                 + (f" ({rep.note})" if rep.note else ""))
    _emit("\n".join(lines) + "\n", inv.out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _cmd_plot_potential(inv):
    if not inv.plot:
        raise UsageError("plot-potential needs --plot PATH")
    plot_potential(inv.potential, inv.plot)
    return EXIT_OK


_COMMANDS = {
    "sweep": _cmd_sweep,
    "point": _cmd_point,
    "compare": _cmd_compare,
    "regimes": _cmd_regimes,
    "converge": _cmd_converge,
    "plot-potential": _cmd_plot_potential,
}


def main(argv=None):
    argv = sys.argv[1:] if argv is None else argv
    try:
        inv = parse_cli(argv)
        logging.basicConfig(level=logging.INFO if inv.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return _COMMANDS[inv.subcommand](inv)
    except UsageError as exc:
        print(f"kgscatter: error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"kgscatter: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
