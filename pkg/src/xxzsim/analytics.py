"""Exact oracle and closed-form expressions for the two-spin XXZ system.

The oracle evolves a state along two independent routes: gate composition
on the statevector, and the eigendecomposition of the explicit Pauli
Hamiltonian applied to the analytic product state.  Any disagreement raises
:class:`OracleMismatchError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import core
from .gates import GateAngles, ModelParams, angles_from_model, expm_hermitian, generator
from .protocols import PrepAngles, evolved_circuit, prep_circuit, simulate

ORACLE_TOL = 1e-10
CLOSED_FORM_TOL = 1e-8
VARIANCE_ROUTE_TOL = 1e-10
NEGATIVE_VARIANCE_TOL = 1e-12


class OracleMismatchError(RuntimeError):
    """Two independent evaluation routes disagree: a convention bug."""


@dataclass(frozen=True)
class EntanglementResult:
    E: float
    bloch: tuple[float, float, float]


@dataclass(frozen=True)
class SpeedResult:
    varH: float
    v_over_gamma: float


class ClosedForm(NamedTuple):
    E: float
    bloch: tuple[float, float, float]
    matches_oracle: bool


def qubit_vector(theta: float, phi: float) -> np.ndarray:
    return np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])


def product_state(a: PrepAngles) -> core.StateVector:
    """cos(t/2)|0> + e^{i phi} sin(t/2)|1> on each qubit, q0 least significant."""
    return core.StateVector(np.kron(qubit_vector(a.theta1, a.phi1), qubit_vector(a.theta0, a.phi0)))


def phase_aligned_distance(a: core.StateVector, b: core.StateVector) -> float:
    """max |b - e^{i c} a| after removing the best global phase."""
    ov = core.inner(a, b)
    phase = ov / abs(ov) if abs(ov) > 1e-300 else 1.0
    return float(np.max(np.abs(b.amps - phase * a.amps)))


def oracle_evolved_state(a: PrepAngles, g: GateAngles) -> core.StateVector:
    via_gates = simulate(evolved_circuit(a, g))
    via_eig = core.StateVector(expm_hermitian(generator(g)) @ product_state(a).amps)
    gap = phase_aligned_distance(via_gates, via_eig)
    if not gap <= ORACLE_TOL:
        raise OracleMismatchError(
            f"gate route and eigendecomposition route differ by {gap:.3e} for {a}, {g}"
        )
    return via_gates


def entanglement_distance(state: core.StateVector, qubit: int = 0) -> EntanglementResult:
    bloch = core.reduced_bloch(state, qubit)
    return EntanglementResult(1.0 - sum(r * r for r in bloch), bloch)


def entanglement_exact(a: PrepAngles, g: GateAngles, qubit: int = 0) -> EntanglementResult:
    return entanglement_distance(oracle_evolved_state(a, g), qubit)


def tangle_crosscheck(state: core.StateVector, qubit: int = 0) -> float:
    """2 (1 - Tr rho^2) of one qubit's reduced state."""
    rho = core.reduced_density_matrix(state, qubit)
    return float(2.0 * (1.0 - np.trace(rho @ rho).real))


def literal_bloch(a: PrepAngles, g: GateAngles) -> tuple[float, float, float]:
    """Qubit-0 means exactly as printed in the source derivation, typos included.

    The gate angles are substituted for the printed alpha symbols unchanged.
    The result is not a valid Bloch vector in general.
    """
    t0, t1, p0, p1 = a.theta0, a.theta1, a.phi0, a.phi1
    ax, ay, az = g.ax, g.ay, g.az
    c0h, s0h = math.cos(t0 / 2) ** 2, math.sin(t0 / 2) ** 2
    c1h, s1h = math.cos(t1 / 2) ** 2, math.sin(t1 / 2) ** 2
    mz = (
        math.cos(2 * ax) * math.cos(2 * ay) * math.cos(t0)
        + math.sin(2 * ax) * math.sin(2 * ay) * math.cos(t1)
        + 0.25 * math.sin(2 * ax + 2 * ay) * math.sin(t0) * math.sin(t1) * math.sin(p0) * math.cos(p1)
    )
    mx = 2 * math.sin(t0) * math.cos(2 * ay) * (
        math.cos(p0 + 2 * az) * c1h + math.cos(p0 - 2 * az) * s1h
    ) + 2 * math.sin(t1) * math.sin(2 * ay) * (
        math.sin(p0 + 2 * az) * c0h - math.sin(p1 - 2 * az) * s0h
    )
    my = 2 * math.sin(t0) * math.cos(2 * ax) * (
        math.sin(p0 + 2 * az) * c1h + math.sin(p0 - 2 * az) * s1h
    ) + 2 * math.sin(t1) * math.sin(2 * ax) * (
        -math.cos(p1 + 2 * az) * c0h + math.cos(p1 - 2 * az) * s0h
    )
    return mx, my, mz


def entanglement_closed_form(a: PrepAngles, g: GateAngles) -> ClosedForm:
    """Literal printed closed form for E of qubit 0, with an oracle-agreement flag."""
    bloch = literal_bloch(a, g)
    E = 1.0 - sum(r * r for r in bloch)
    return ClosedForm(E, bloch, abs(E - entanglement_exact(a, g).E) <= CLOSED_FORM_TOL)


def evolved_bloch(a: PrepAngles, g: GateAngles) -> tuple[float, float, float]:
    """Qubit-0 means of RXX(ax) RYY(ay) RZZ(az)|psi0>, Heisenberg-picture closed form."""
    st0, ct0, st1, ct1 = math.sin(a.theta0), math.cos(a.theta0), math.sin(a.theta1), math.cos(a.theta1)
    x0, y0 = st0 * math.cos(a.phi0), st0 * math.sin(a.phi0)
    x1, y1 = st1 * math.cos(a.phi1), st1 * math.sin(a.phi1)
    cx, sx = math.cos(g.ax), math.sin(g.ax)
    cy, sy = math.cos(g.ay), math.sin(g.ay)
    cz, sz = math.cos(g.az), math.sin(g.az)
    mx = cy * cz * x0 + sy * cz * ct0 * y1 - cy * sz * y0 * ct1 + sy * sz * x1
    my = cx * cz * y0 - sx * cz * ct0 * x1 + cx * sz * x0 * ct1 + sx * sz * y1
    mz = cx * cy * ct0 + sx * sy * ct1 + sx * cy * y0 * x1 - cx * sy * x0 * y1
    return mx, my, mz


def entanglement_evolved_closed_form(a: PrepAngles, g: GateAngles) -> float:
    return 1.0 - sum(r * r for r in evolved_bloch(a, g))


def correlator_exact(state: core.StateVector, axis: str) -> float:
    """<psi| s^k_0 s^k_1 |psi>."""
    if state.n_qubits != 2:
        raise ValueError("correlators are defined on two-qubit states")
    p = core.PAULI[axis]
    return core.expectation(state, core.register_operator({0: p, 1: p}, 2))


def variance_closed_form(a: PrepAngles, J: float, d: float) -> float:
    t0, t1 = a.theta0, a.theta1
    cdp = math.cos(a.phi0 - a.phi1)
    J2 = J * J
    return (
        2 * J2
        + J2 * d * d
        - 2 * J2 * math.cos(t0) * math.cos(t1)
        - 2 * J2 * d * math.sin(t0) * math.sin(t1) * cdp
        - J2 * math.sin(t0) ** 2 * math.sin(t1) ** 2 * cdp**2
        - 0.5 * J2 * d * math.sin(2 * t0) * math.sin(2 * t1) * cdp
        - J2 * d * d * math.cos(t0) ** 2 * math.cos(t1) ** 2
    )


def variance_from_correlators(xx: float, yy: float, zz: float, J: float, d: float) -> float:
    """<H^2> - <H>^2 from the three same-axis correlators."""
    h2 = J * J * (2 + d * d - 2 * zz - 2 * d * (xx + yy))
    h = J * (xx + yy + d * zz)
    return h2 - h * h


def variance_gradient(xx: float, yy: float, zz: float, J: float, d: float) -> np.ndarray:
    """d varH / d (xx, yy, zz)."""
    h = xx + yy + d * zz
    gxy = -2 * J * J * d - 2 * J * J * h
    return np.array([gxy, gxy, -2 * J * J - 2 * J * J * d * h])


def speed_from_variance(var: float) -> SpeedResult:
    if var < -NEGATIVE_VARIANCE_TOL:
        raise ValueError(f"negative energy variance {var!r}")
    var = max(var, 0.0)
    return SpeedResult(var, math.sqrt(var))


def variance_H(a: PrepAngles, p: ModelParams) -> SpeedResult:
    """Energy variance in the initial product state, checked by two routes."""
    closed = variance_closed_form(a, p.J, p.d)
    psi0 = product_state(a)
    xx, yy, zz = (correlator_exact(psi0, k) for k in ("x", "y", "z"))
    routed = variance_from_correlators(xx, yy, zz, p.J, p.d)
    scale = max(1.0, p.J * p.J * (2 + abs(p.d)) ** 2)
    if abs(closed - routed) > VARIANCE_ROUTE_TOL * scale:
        raise OracleMismatchError(f"variance routes disagree: {closed!r} vs {routed!r}")
    return speed_from_variance(closed)


def echo_exact(a: PrepAngles, g: GateAngles) -> float:
    """|<psi0| S |psi0>|^2 from the oracle state."""
    return abs(core.inner(simulate(prep_circuit(a)), oracle_evolved_state(a, g))) ** 2


def evolve_model(a: PrepAngles, p: ModelParams) -> core.StateVector:
    return oracle_evolved_state(a, angles_from_model(p))
