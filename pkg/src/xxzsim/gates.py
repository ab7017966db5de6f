"""Rotation gates and the (J, d, t) -> gate-angle map of the XXZ model.

All rotations use the half-angle convention ``exp(-i * angle * G / 2)``,
so ``rot_2q("xx", 2*J*t) == exp(-i J t sx sx)``.  hbar = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import PAULI, register_operator

AXES_1Q = ("x", "y", "z")
AXES_2Q = ("xx", "yy", "zz")


@dataclass(frozen=True)
class ModelParams:
    J: float
    d: float
    t: float = 1.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.J, self.d, self.t)):
            raise ValueError("model parameters must be finite")


@dataclass(frozen=True)
class GateAngles:
    ax: float
    ay: float
    az: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.ax, self.ay, self.az)):
            raise ValueError("gate angles must be finite")

    @classmethod
    def uniform(cls, alpha: float, d: float) -> GateAngles:
        """Echo-scan angles: ax = ay = alpha, az = d * alpha."""
        return cls(alpha, alpha, d * alpha)


def _finite(angle: float) -> float:
    angle = float(angle)
    if not math.isfinite(angle):
        raise ValueError(f"angle must be finite, got {angle!r}")
    return angle


def rot_1q(axis: str, angle: float) -> np.ndarray:
    if axis not in AXES_1Q:
        raise ValueError(f"unknown rotation axis {axis!r}")
    half = _finite(angle) / 2
    return math.cos(half) * PAULI["i"] - 1j * math.sin(half) * PAULI[axis]


def pauli_pair(axis: str) -> np.ndarray:
    """sigma^k (x) sigma^k as a 4x4 matrix; symmetric, so tensor order is moot."""
    p = PAULI[axis]
    return np.kron(p, p)


def rot_2q(axis: str, angle: float) -> np.ndarray:
    if axis not in AXES_2Q:
        raise ValueError(f"unknown two-qubit rotation axis {axis!r}")
    half = _finite(angle) / 2
    return math.cos(half) * np.eye(4) - 1j * math.sin(half) * pauli_pair(axis[0])


def angles_from_model(p: ModelParams) -> GateAngles:
    a = 2.0 * p.J * p.t
    return GateAngles(a, a, a * p.d)


def xyz_hamiltonian(jx: float, jy: float, jz: float) -> np.ndarray:
    """jx sx0 sx1 + jy sy0 sy1 + jz sz0 sz1 on a two-qubit register."""
    h = np.zeros((4, 4), dtype=complex)
    for coef, k in ((jx, "x"), (jy, "y"), (jz, "z")):
        h += coef * register_operator({0: PAULI[k], 1: PAULI[k]}, 2)
    return h


def xxz_hamiltonian(J: float, d: float) -> np.ndarray:
    return xyz_hamiltonian(J, J, J * d)


def generator(g: GateAngles) -> np.ndarray:
    """Hermitian G with RXX(ax) RYY(ay) RZZ(az) = exp(-i G)."""
    return xyz_hamiltonian(g.ax / 2, g.ay / 2, g.az / 2)


def expm_hermitian(h: np.ndarray, t: float = 1.0) -> np.ndarray:
    """exp(-i h t) through the eigendecomposition of Hermitian ``h``."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * w * t)) @ v.conj().T
