"""Two-parameter grid sweeps producing ``p1,p2,exact,sampled,std_error`` CSV."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import analytics, experiments
from .gates import ModelParams, angles_from_model
from .protocols import PrepAngles
from .sampling import derive_seed

MODES = ("entanglement", "speed", "echo-fit")
PARAMS = ("theta0", "theta1", "phi0", "phi1", "J", "d")
DEFAULTS = {"theta0": 0.0, "theta1": 0.0, "phi0": 0.0, "phi1": 0.0, "J": 1.0, "d": 1.0, "t": 1.0}
CSV_HEADER = "p1,p2,exact,sampled,std_error"

_PI = math.pi
_STATE_FIXED = {"phi0": _PI / 4, "phi1": _PI / 4}
PRESETS = {
    "fig4": dict(mode="entanglement", vary=("theta0", "theta1"), range=(0.0, 2 * _PI, _PI / 18),
                 fixed=dict(_STATE_FIXED, J=1.0, d=1.0, t=1.0)),
    "fig5": dict(mode="entanglement", vary=("phi0", "phi1"), range=(0.0, 2 * _PI, _PI / 18),
                 fixed=dict(theta0=_PI / 2, theta1=_PI / 2, J=1.0, d=1.0, t=1.0)),
    "fig6": dict(mode="entanglement", vary=("J", "d"), range=(0.0, _PI, _PI / 18),
                 fixed=dict(_STATE_FIXED, theta0=_PI / 2, theta1=_PI / 2, t=1.0)),
    "fig9a": dict(mode="speed", vary=("theta0", "theta1"), range=(0.0, _PI, _PI / 18),
                  fixed=dict(_STATE_FIXED, J=1.0, d=1.0)),
    "fig9b": dict(mode="speed", vary=("phi0", "phi1"), range=(0.0, _PI, _PI / 18),
                  fixed=dict(theta0=_PI / 2, theta1=_PI / 2, J=1.0, d=1.0)),
    "fig9c": dict(mode="speed", vary=("J", "d"), range=(0.0, _PI, _PI / 18),
                  fixed=dict(_STATE_FIXED, theta0=_PI / 2, theta1=_PI / 2)),
}


@dataclass(frozen=True)
class SweepSpec:
    mode: str
    vary: tuple[str, str]
    range: tuple[float, float, float]
    fixed: dict = field(default_factory=dict)
    shots: int | None = 1024
    seed: int = 0
    qubit: int = 0

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if len(self.vary) != 2 or self.vary[0] == self.vary[1]:
            raise ValueError("vary needs two distinct parameter names")
        if any(v not in PARAMS for v in self.vary):
            raise ValueError(f"vary names must come from {PARAMS}")
        start, stop, step = self.range
        if not step > 0:
            raise ValueError("step must be positive")
        if stop < start:
            raise ValueError("empty grid: stop < start")
        if self.shots is not None and self.shots < 1:
            raise ValueError("shots must be positive")
        unknown = set(self.fixed) - set(DEFAULTS)
        if unknown:
            raise ValueError(f"unknown fixed parameters {sorted(unknown)}")


@dataclass(frozen=True)
class SweepRow:
    p1: float
    p2: float
    exact: float
    sampled: float | None = None
    std_error: float | None = None


def grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive of ``stop`` when the span is an integer number of steps."""
    n = int(math.floor((stop - start) / step + 1e-9)) + 1
    if n < 1:
        raise ValueError("empty grid")
    return start + step * np.arange(n)


def point_params(values: dict) -> tuple[PrepAngles, ModelParams]:
    v = dict(DEFAULTS, **values)
    return (
        PrepAngles(v["theta0"], v["theta1"], v["phi0"], v["phi1"]),
        ModelParams(v["J"], v["d"], v["t"]),
    )


def evaluate(mode: str, a: PrepAngles, p: ModelParams, shots, seed: int, qubit: int = 0):
    """(exact, sampled, std_error) at one parameter point; sampled is None without shots."""
    if mode == "entanglement":
        g = angles_from_model(p)
        exact = analytics.entanglement_exact(a, g, qubit).E
        if shots is None:
            return exact, None, None
        m = experiments.estimate_entanglement(a, g, qubit, shots, seed)
        return exact, m.value, m.std_error
    if mode == "speed":
        exact = analytics.variance_H(a, p).v_over_gamma
        if shots is None:
            return exact, None, None
        m = experiments.estimate_speed(a, p, shots, seed)
        return exact, m.value, m.std_error
    if mode == "echo-fit":
        exact = analytics.variance_H(a, p).v_over_gamma
        if shots is None:
            return exact, None, None
        f = experiments.echo_fit(a, p.J, p.d, shots=shots, seed=seed)
        return exact, f.v_over_gamma, f.std_error
    raise ValueError(f"unknown mode {mode!r}")


def run_sweep(spec: SweepSpec) -> list[SweepRow]:
    axis = grid(*spec.range)
    rows = []
    for i, (v1, v2) in enumerate((x, y) for x in axis for y in axis):
        a, p = point_params(dict(spec.fixed, **{spec.vary[0]: float(v1), spec.vary[1]: float(v2)}))
        exact, sampled, se = evaluate(spec.mode, a, p, spec.shots, derive_seed(spec.seed, i), spec.qubit)
        rows.append(SweepRow(float(v1), float(v2), exact, sampled, se))
    return rows


def _fmt(x: float | None) -> str:
    return "" if x is None else f"{x:.12g}"


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in rows:
        buf.write(",".join(_fmt(v) for v in (r.p1, r.p2, r.exact, r.sampled, r.std_error)) + "\n")
    return buf.getvalue()


def preset_spec(name: str, shots=1024, seed: int = 0) -> SweepSpec:
    if name not in PRESETS:
        raise ValueError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    cfg = PRESETS[name]
    return SweepSpec(cfg["mode"], cfg["vary"], cfg["range"], dict(cfg["fixed"]), shots, seed)
