"""Anchored quadratic fit of echo decay, |S|^2 = 1 - c * alpha^2.

With alpha = 2 J t (hbar = 1) the small-time expansion
|S|^2 = 1 - t^2 <dH^2> gives c = <dH^2> / (4 J^2).  The curvature is
reported per alpha^2 (``c``) and per (J t)^2 (``c_jt = 4 c``); the latter
equals <dH^2> / J^2.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

NEGATIVE_CURVATURE_TOL = 1e-12


class DegenerateFitError(ValueError):
    pass


class FitQualityError(ValueError):
    pass


@dataclass(frozen=True)
class DecaySample:
    alpha: float
    s2: float
    std_error: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.alpha, self.s2, self.std_error)):
            raise ValueError("decay sample fields must be finite")
        if self.std_error < 0:
            raise ValueError("std_error must be non-negative")
        slack = 3 * self.std_error + 1e-12
        if not -slack <= self.s2 <= 1 + slack:
            raise ValueError(f"|S|^2 = {self.s2} outside [0, 1]")


@dataclass(frozen=True)
class FitResult:
    c: float
    c_std_error: float
    rms_residual: float
    n_samples: int

    @property
    def c_jt(self) -> float:
        return 4.0 * self.c

    @property
    def varH_from_fit(self) -> float:
        """<dH^2> in units of J^2."""
        return self.c_jt


def fit_curvature(alphas, s2, std_error=None, weighted: bool = False) -> FitResult:
    """Least squares for 1 - s2 = c * alpha^2 on raw arrays, optionally inverse-variance weighted."""
    a2 = np.asarray(alphas, dtype=float) ** 2
    y = 1.0 - np.asarray(s2, dtype=float)
    se = np.zeros_like(a2) if std_error is None else np.asarray(std_error, dtype=float)
    if a2.size < 2:
        raise DegenerateFitError("need at least two samples")
    if not np.any(a2 > 0):
        raise DegenerateFitError("all alphas are zero")

    w = np.ones_like(a2)
    if weighted and np.any(se > 0):
        # zero-variance points get the weight of the most precise measured one
        floor = np.min(se[se > 0]) ** 2
        w = 1.0 / np.maximum(se**2, floor)

    denom = np.sum(w * a2 * a2)
    c = float(np.sum(w * a2 * y) / denom)
    c_se = float(math.sqrt(np.sum((w * a2 * se) ** 2)) / denom)
    resid = y - c * a2
    return FitResult(c, c_se, float(math.sqrt(np.mean(resid**2))), int(a2.size))


def fit_quadratic_decay(samples, weighted: bool = False) -> FitResult:
    samples = list(samples)
    return fit_curvature(
        [s.alpha for s in samples],
        [s.s2 for s in samples],
        [s.std_error for s in samples],
        weighted=weighted,
    )


def speed_from_fit(f: FitResult, J: float) -> float:
    """v / gamma = |J| sqrt(<dH^2>/J^2)."""
    if f.c < -NEGATIVE_CURVATURE_TOL:
        raise FitQualityError(f"fitted curvature {f.c!r} is negative")
    return abs(J) * math.sqrt(max(f.varH_from_fit, 0.0))


def speed_std_error(f: FitResult, J: float) -> float:
    v = speed_from_fit(f, J)
    if v == 0.0:
        return 2 * abs(J) * math.sqrt(f.c_std_error)
    return abs(J) ** 2 * 2 * f.c_std_error / v


def samples_to_csv(samples) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["alpha", "s2", "std_error"])
    for s in samples:
        writer.writerow([f"{s.alpha:.12g}", f"{s.s2:.12g}", f"{s.std_error:.12g}"])
    return buf.getvalue()


def samples_from_csv(text: str) -> list[DecaySample]:
    reader = csv.DictReader(io.StringIO(text))
    missing = {"alpha", "s2"} - set(reader.fieldnames or ())
    if missing:
        raise ValueError(f"CSV lacks columns {sorted(missing)}")
    return [
        DecaySample(float(r["alpha"]), float(r["s2"]), float(r.get("std_error") or 0.0))
        for r in reader
    ]
