"""CSV / JSON serialisation of sweep results."""

import csv
import io
import json

from .channels import EnergyRegime
from .propagator import SpectrumPoint

__all__ = [
    "CSV_HEADER",
    "format_float",
    "spectrum_csv",
    "write_csv",
    "read_csv",
    "spectrum_json",
    "write_json",
]

CSV_HEADER = ("E", "k_L", "k_R", "regime", "R", "T", "flag")
DECIMALS = 12


def format_float(x):
    """Fixed-point with 12 decimals, so 0 prints as 0.000000000000.

    Values of order one keep 12-13 significant digits; anything below 5e-13
    in magnitude prints as zero.
    """
    text = f"{float(x):.{DECIMALS}f}"
    if text.startswith("-") and not text.strip("-0."):
        text = text[1:]  # no "-0.000000000000"
    return text


def _row(pt):
    return [format_float(pt.E), format_float(pt.k_l), format_float(pt.k_r),
            pt.regime.value, format_float(pt.big_r), format_float(pt.big_t), pt.flag]


def spectrum_csv(result):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for pt in result.points:
        writer.writerow(_row(pt))
    return buf.getvalue()


def _write_text(text, path):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def write_csv(result, path):
    _write_text(spectrum_csv(result), path)


def read_csv(path):
    """Parse a spectrum CSV back into ``SpectrumPoint`` records (no amplitudes)."""
    points = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        for row in reader:
            E, k_l, k_r, regime, R, T, flag = row
            points.append(SpectrumPoint(float(E), float(k_l), float(k_r), EnergyRegime(regime),
                                        float(R), float(T), None, flag == "conv"))
    return points


def _point_dict(pt):
    d = {"E": pt.E, "k_L": pt.k_l, "k_R": pt.k_r, "regime": pt.regime.value,
         "R": pt.big_r, "T": pt.big_t, "flag": pt.flag}
    if pt.amplitude is not None:
        d["amplitude"] = [pt.amplitude.real, pt.amplitude.imag]
    return d


def spectrum_json(result, include_timing=False):
    meta = dict(result.meta)
    if not include_timing:
        meta.pop("wall_time", None)
    return json.dumps({"meta": meta, "points": [_point_dict(p) for p in result.points]},
                      indent=1) + "\n"


def write_json(result, path, include_timing=False):
    _write_text(spectrum_json(result, include_timing), path)
