"""Shot sampling and +/-1 estimators.

Shots are drawn from the exact final distribution with numpy's PCG64
generator (``numpy.random.default_rng``), so counts are reproducible for a
given seed and numpy release.  Per-point seeds are derived through
``numpy.random.SeedSequence``, which hashes the point index into the base
seed.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .protocols import Circuit, exact_distribution

DEFAULT_SHOTS = 1024


@dataclass(frozen=True)
class ShotCounts:
    shots: int
    counts: dict[str, int]

    def __post_init__(self):
        if self.shots < 1:
            raise ValueError("shots must be positive")
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to shots")
        if any(v < 0 for v in self.counts.values()):
            raise ValueError("negative count")
        if len({len(k) for k in self.counts}) > 1:
            raise ValueError("inconsistent bitstring widths")

    @property
    def width(self) -> int:
        return len(next(iter(self.counts)))

    def get(self, key: str) -> int:
        return self.counts.get(key, 0)

    def to_json(self) -> str:
        return json.dumps({"shots": self.shots, "counts": dict(sorted(self.counts.items()))})

    @classmethod
    def from_json(cls, text: str) -> ShotCounts:
        data = json.loads(text)
        return cls(int(data["shots"]), {str(k): int(v) for k, v in data["counts"].items()})


@dataclass(frozen=True)
class Estimate:
    value: float
    std_error: float
    shots: int


def derive_seed(base: int, *index: int) -> int:
    """64-bit seed for a sub-task, independent of evaluation order."""
    ss = np.random.SeedSequence([int(base) & (2**64 - 1), *index])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def sample_distribution(dist: dict[str, float], shots: int, seed: int) -> ShotCounts:
    if shots < 1:
        raise ValueError("shots must be positive")
    keys = sorted(dist)
    p = np.clip(np.array([dist[k] for k in keys]), 0.0, None)
    p /= p.sum()
    rng = np.random.default_rng(int(seed) & (2**64 - 1))
    draws = rng.multinomial(shots, p)
    return ShotCounts(shots, {k: int(n) for k, n in zip(keys, draws) if n})


def run_shots(c: Circuit, shots: int = DEFAULT_SHOTS, seed: int = 0) -> ShotCounts:
    if not c.measured_qubits:
        raise ValueError("circuit measures no qubits")
    return sample_distribution(exact_distribution(c), shots, seed)


def pm1_std_error(value: float, shots: int) -> float:
    """Standard error of the mean of a +/-1 variable with mean ``value``."""
    return math.sqrt(max(0.0, 1.0 - value * value) / shots)


def mean_pm1(counts: ShotCounts, qubit_position: int = 0) -> Estimate:
    """(N0 - N1) / shots on one bit of the recorded bitstrings."""
    if not 0 <= qubit_position < counts.width:
        raise ValueError(f"bit position {qubit_position} out of range")
    n0 = sum(v for k, v in counts.counts.items() if k[qubit_position] == "0")
    value = (2 * n0 - counts.shots) / counts.shots
    return Estimate(value, pm1_std_error(value, counts.shots), counts.shots)


def _require_two_bits(counts: ShotCounts) -> None:
    if counts.width != 2:
        raise ValueError("expected two-bit outcomes")


def parity(counts: ShotCounts) -> Estimate:
    """P(00) - P(01) - P(10) + P(11)."""
    _require_two_bits(counts)
    even = counts.get("00") + counts.get("11")
    value = (2 * even - counts.shots) / counts.shots
    return Estimate(value, pm1_std_error(value, counts.shots), counts.shots)


def prob00(counts: ShotCounts) -> Estimate:
    _require_two_bits(counts)
    p = counts.get("00") / counts.shots
    return Estimate(p, math.sqrt(p * (1 - p) / counts.shots), counts.shots)
