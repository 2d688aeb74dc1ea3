"""Report containers and the CSV / JSON / SVG / ASCII output surfaces.

A ``SpectrumReport`` bundles, for every outcome index p, the integer Walsh
coefficient, the real output amplitude and the measurement probability,
plus metadata (generator description, seed when one was used, and the
spectral classification).  All exporters are deterministic: identical
inputs produce identical bytes.  Floating-point columns are printed with
up to 17 significant digits, enough to round-trip float64 losslessly.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Sequence
from xml.sax.saxutils import escape

import numpy as np

from .boolfn import BitVector, TruthTable
from .djsim import amplitudes_from_walsh, probabilities
from .walsh import Classification, WalshSpectrum, classify, fwht

ASCII_MAX_BARS = 1 << 8
SVG_MAX_BARS = 1 << 20
_BAR_WIDTH = 60  # '#' characters at full scale

_PROB_SUM_TOL = 1e-9


class SpectrumReport:
    """Per-outcome rows (walsh, amplitude, probability) plus run metadata."""

    __slots__ = ("n", "walsh", "amplitudes", "probabilities", "generator", "seed",
                 "classification")

    def __init__(
        self,
        n: int,
        walsh: Sequence[int] | np.ndarray,
        amplitudes: Sequence[float] | np.ndarray,
        probs: Sequence[float] | np.ndarray,
        generator: str = "",
        seed: int | None = None,
        classification: Classification | None = None,
    ):
        size = 1 << n
        w = np.asarray(walsh, dtype=np.int32).copy()
        a = np.asarray(amplitudes, dtype=np.float64).copy()
        p = np.asarray(probs, dtype=np.float64).copy()
        if not (w.shape == a.shape == p.shape == (size,)):
            raise ValueError(f"report columns must all have {size} rows")
        if abs(float(p.sum()) - 1.0) > _PROB_SUM_TOL:
            raise ValueError("probability column does not sum to 1")
        for arr in (w, a, p):
            arr.setflags(write=False)
        if classification is None:
            classification = classify(WalshSpectrum(n, w))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "walsh", w)
        object.__setattr__(self, "amplitudes", a)
        object.__setattr__(self, "probabilities", p)
        object.__setattr__(self, "generator", generator)
        object.__setattr__(self, "seed", None if seed is None else int(seed))
        object.__setattr__(self, "classification", classification)

    def __setattr__(self, key, value):
        raise AttributeError("SpectrumReport is immutable")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpectrumReport):
            return NotImplemented
        return (
            self.n == other.n
            and np.array_equal(self.walsh, other.walsh)
            and np.array_equal(self.amplitudes, other.amplitudes)
            and np.array_equal(self.probabilities, other.probabilities)
            and self.generator == other.generator
            and self.seed == other.seed
            and self.classification == other.classification
        )

    def __repr__(self) -> str:
        return f"SpectrumReport(n={self.n}, generator={self.generator!r})"


def make_report(
    tt: TruthTable, generator: str = "", seed: int | None = None
) -> SpectrumReport:
    """Full report for a truth table via the integer Walsh route."""
    spec = fwht(tt)
    amps = amplitudes_from_walsh(spec)
    return SpectrumReport(
        tt.n,
        spec.coeffs,
        amps.amps,
        probabilities(amps),
        generator=generator,
        seed=seed,
        classification=classify(spec),
    )


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def export_csv(report: SpectrumReport) -> str:
    """CSV text: header ``p,walsh,amplitude,probability`` then one row per p."""
    lines = ["p,walsh,amplitude,probability"]
    for p in range(1 << report.n):
        lines.append(
            f"{p},{int(report.walsh[p])},{_fmt(report.amplitudes[p])},"
            f"{_fmt(report.probabilities[p])}"
        )
    return "\n".join(lines) + "\n"


def export_json(report: SpectrumReport) -> str:
    """JSON text with the CSV content plus the metadata object."""
    obj: dict = {"n": report.n, "generator": report.generator}
    if report.seed is not None:
        obj["seed"] = report.seed
    obj["classification"] = report.classification.as_dict()
    obj["rows"] = [
        {
            "p": p,
            "walsh": int(report.walsh[p]),
            "amplitude": float(report.amplitudes[p]),
            "probability": float(report.probabilities[p]),
        }
        for p in range(1 << report.n)
    ]
    return json.dumps(obj, indent=2) + "\n"


def _classification_from_dict(n: int, d: dict) -> Classification:
    k = d.get("affine_k")
    return Classification(
        n=n,
        is_constant=bool(d["is_constant"]),
        is_balanced=bool(d["is_balanced"]),
        is_linear=bool(d["is_linear"]),
        is_affine=bool(d["is_affine"]),
        is_bent=bool(d["is_bent"]),
        affine_k=None if k is None else BitVector(n, int(k)),
        affine_c=None if d.get("affine_c") is None else int(d["affine_c"]),
        nonlinearity=int(d["nonlinearity"]),
    )


def read_report(text: str) -> SpectrumReport:
    """Parse a report previously exported as CSV or JSON."""
    text = text.strip()
    if not text:
        raise ValueError("empty report")
    if text.startswith("{"):
        obj = json.loads(text)
        n = int(obj["n"])
        rows = obj["rows"]
        if len(rows) != 1 << n or any(int(r["p"]) != i for i, r in enumerate(rows)):
            raise ValueError("report rows must cover p = 0 .. 2^n - 1 in order")
        return SpectrumReport(
            n,
            [r["walsh"] for r in rows],
            [r["amplitude"] for r in rows],
            [r["probability"] for r in rows],
            generator=str(obj.get("generator", "")),
            seed=obj.get("seed"),
            classification=_classification_from_dict(n, obj["classification"]),
        )

    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != ["p", "walsh", "amplitude", "probability"]:
        raise ValueError(f"unexpected report header: {header}")
    rows = [row for row in reader if row]
    count = len(rows)
    if count < 2 or count & (count - 1):
        raise ValueError(f"report must have a power-of-two row count, got {count}")
    n = count.bit_length() - 1
    if any(int(row[0]) != i for i, row in enumerate(rows)):
        raise ValueError("report rows must cover p = 0 .. 2^n - 1 in order")
    return SpectrumReport(
        n,
        [int(row[1]) for row in rows],
        [float(row[2]) for row in rows],
        [float(row[3]) for row in rows],
    )


def export_walsh_csv(spec: WalshSpectrum) -> str:
    """Bare spectrum CSV: header ``p,walsh`` then one row per p."""
    lines = ["p,walsh"]
    lines.extend(f"{p},{int(c)}" for p, c in enumerate(spec.coeffs))
    return "\n".join(lines) + "\n"


def export_histogram_csv(hist) -> str:
    """Histogram CSV: header ``p,count`` then one row per outcome."""
    lines = ["p,count"]
    lines.extend(f"{p},{int(c)}" for p, c in enumerate(hist.counts))
    return "\n".join(lines) + "\n"


def export_histogram_json(hist, seed: int | None = None) -> str:
    obj: dict = {"n": hist.n, "shots": hist.shots}
    if seed is not None:
        obj["seed"] = int(seed)
    obj["counts"] = [int(c) for c in hist.counts]
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------------------
# Bar rendering
# ---------------------------------------------------------------------------


def render_bars(values: Sequence[float] | np.ndarray, title: str = "",
                format: str = "ascii") -> str:
    """Render one bar per value, heights scaled by |value| / max |value|.

    ``format`` is ``"svg"`` (well-formed XML, exactly one rect per value)
    or ``"ascii"`` (one line per value, at most 256 values).  An all-zero
    input renders zero-height / zero-width bars.
    """
    vals = np.asarray(values, dtype=np.float64)
    if vals.ndim != 1 or vals.size == 0:
        raise ValueError("render_bars needs a non-empty 1-d value sequence")
    if format == "ascii":
        return _render_ascii(vals, title)
    if format == "svg":
        return _render_svg(vals, title)
    raise ValueError(f"unknown render format: {format!r}")


def _render_ascii(vals: np.ndarray, title: str) -> str:
    if vals.size > ASCII_MAX_BARS:
        raise ValueError(f"ascii rendering is capped at {ASCII_MAX_BARS} bars")
    peak = float(np.abs(vals).max())
    lines = [title] if title else []
    for i, v in enumerate(vals):
        w = 0 if peak == 0.0 else int(round(_BAR_WIDTH * abs(float(v)) / peak))
        lines.append(f"{i:>5} {float(v):>12.6g} |{'#' * w}")
    return "\n".join(lines) + "\n"


def _render_svg(vals: np.ndarray, title: str) -> str:
    if vals.size > SVG_MAX_BARS:
        raise ValueError(f"svg rendering is capped at {SVG_MAX_BARS} bars")
    width, height = 800.0, 360.0
    left, right, top, bottom = 40.0, 10.0, 30.0, 20.0
    plot_w = width - left - right
    plot_h = height - top - bottom
    base_y = top + plot_h
    peak = float(np.abs(vals).max())
    slot = plot_w / vals.size
    bar_w = slot * 0.9

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" '
        f'height="{height:.0f}" viewBox="0 0 {width:.0f} {height:.0f}">'
    ]
    if title:
        out.append(
            f'<text x="{width / 2:.2f}" y="20" text-anchor="middle" '
            f'font-family="monospace" font-size="14">{escape(title)}</text>'
        )
    for i, v in enumerate(vals):
        h = 0.0 if peak == 0.0 else plot_h * abs(float(v)) / peak
        x = left + i * slot + (slot - bar_w) / 2
        out.append(
            f'<rect x="{x:.2f}" y="{base_y - h:.2f}" width="{bar_w:.2f}" '
            f'height="{h:.2f}" fill="steelblue"/>'
        )
    out.append(
        f'<line x1="{left:.2f}" y1="{base_y:.2f}" x2="{left + plot_w:.2f}" '
        f'y2="{base_y:.2f}" stroke="black"/>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
