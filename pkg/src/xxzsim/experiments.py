"""Shot-based estimates of entanglement distance, speed and echo decay.

``shots=None`` everywhere means noise-free probabilities; estimates then
carry a zero standard error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import analytics
from .fitting import DecaySample, FitResult, fit_quadratic_decay, speed_from_fit, speed_std_error
from .gates import GateAngles, ModelParams
from .protocols import (
    PAULI_AXES,
    PrepAngles,
    correlator_circuit,
    echo_circuit,
    exact_distribution,
    pauli_measure_circuit,
)
from .sampling import Estimate, derive_seed, mean_pm1, parity, prob00, run_shots

FIG7_PREP = PrepAngles(math.pi / 2, math.pi / 2, math.pi / 4, math.pi / 4)
FIG7_D = 2.0


def fig7_alphas() -> np.ndarray:
    """alpha from -3pi/32 to 3pi/32 in steps of pi/128 (25 points)."""
    return np.arange(-12, 13) * (math.pi / 128)


@dataclass(frozen=True)
class Measured:
    value: float
    std_error: float


def _exact_pm1(dist: dict[str, float]) -> float:
    return sum(p if k.count("1") % 2 == 0 else -p for k, p in dist.items())


def pauli_mean(a: PrepAngles, g: GateAngles, qubit: int, axis: str, shots, seed: int) -> Estimate:
    c = pauli_measure_circuit(a, g, qubit, axis)
    if shots is None:
        return Estimate(_exact_pm1(exact_distribution(c)), 0.0, 0)
    return mean_pm1(run_shots(c, shots, seed), 0)


def correlator(a: PrepAngles, axis: str, shots, seed: int) -> Estimate:
    c = correlator_circuit(a, axis)
    if shots is None:
        return Estimate(_exact_pm1(exact_distribution(c)), 0.0, 0)
    return parity(run_shots(c, shots, seed))


def echo_probability(a: PrepAngles, g: GateAngles, shots, seed: int) -> Estimate:
    c = echo_circuit(a, g)
    if shots is None:
        return Estimate(exact_distribution(c)["00"], 0.0, 0)
    return prob00(run_shots(c, shots, seed))


def estimate_bloch(a: PrepAngles, g: GateAngles, qubit: int, shots, seed: int) -> list[Estimate]:
    return [
        pauli_mean(a, g, qubit, axis, shots, derive_seed(seed, k))
        for k, axis in enumerate(PAULI_AXES)
    ]


def estimate_entanglement(a: PrepAngles, g: GateAngles, qubit: int, shots, seed: int) -> Measured:
    """E = 1 - sum m_k^2 from three single-Pauli protocols.

    The error uses Var(m^2) = 4 m^2 s^2 + 2 s^4 per component, which stays
    non-zero near the maximally entangled point where the linear term dies.
    """
    est = estimate_bloch(a, g, qubit, shots, seed)
    E = 1.0 - sum(e.value**2 for e in est)
    var = sum(4 * e.value**2 * e.std_error**2 + 2 * e.std_error**4 for e in est)
    return Measured(E, math.sqrt(var))


def estimate_speed(a: PrepAngles, p: ModelParams, shots, seed: int) -> Measured:
    """v / gamma from the three pair correlators, delta-method error."""
    est = [correlator(a, axis, shots, derive_seed(seed, k)) for k, axis in enumerate(PAULI_AXES)]
    xx, yy, zz = (e.value for e in est)
    var = analytics.variance_from_correlators(xx, yy, zz, p.J, p.d)
    grad = analytics.variance_gradient(xx, yy, zz, p.J, p.d)
    var_se = float(math.sqrt(sum((gk * e.std_error) ** 2 for gk, e in zip(grad, est))))
    v = math.sqrt(max(var, 0.0))
    # linearization breaks down once the variance is within its own noise of zero
    v_se = var_se / (2 * v) if v * v > var_se else math.sqrt(var_se)
    return Measured(v, v_se)


def echo_samples(a: PrepAngles, d: float, alphas, shots, seed: int) -> list[DecaySample]:
    out = []
    for i, alpha in enumerate(alphas):
        e = echo_probability(a, GateAngles.uniform(float(alpha), d), shots, derive_seed(seed, i))
        out.append(DecaySample(float(alpha), e.value, e.std_error))
    return out


@dataclass(frozen=True)
class EchoFit:
    samples: list[DecaySample]
    fit: FitResult
    v_over_gamma: float
    std_error: float


def echo_fit(
    a: PrepAngles = FIG7_PREP,
    J: float = 1.0,
    d: float = FIG7_D,
    alphas=None,
    shots=1024,
    seed: int = 0,
    weighted: bool = False,
) -> EchoFit:
    alphas = fig7_alphas() if alphas is None else alphas
    samples = echo_samples(a, d, alphas, shots, seed)
    fit = fit_quadratic_decay(samples, weighted=weighted)
    return EchoFit(samples, fit, speed_from_fit(fit, J), speed_std_error(fit, J))
