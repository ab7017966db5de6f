"""Circuit values for the two-spin protocols.

A circuit always starts from |00...0>.  Ops are applied left to right in
time order.  Text form, one op per line::

    QUBITS 2
    RY 1.5707963267948966 0
    RXX 0.5 0 1
    MEASURE 0 1
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from . import core
from .gates import AXES_1Q, AXES_2Q, GateAngles, rot_1q, rot_2q

PAULI_AXES = ("x", "y", "z")

# basis change before a computational-basis read-out: P(0) - P(1) = <sigma^axis>
_BASIS_ROTATION = {"x": ("RY", -math.pi / 2), "y": ("RX", math.pi / 2)}


@dataclass(frozen=True)
class PrepAngles:
    theta0: float = 0.0
    theta1: float = 0.0
    phi0: float = 0.0
    phi1: float = 0.0

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.theta0, self.theta1, self.phi0, self.phi1)):
            raise ValueError("preparation angles must be finite")


@dataclass(frozen=True)
class GateOp:
    name: str
    angle: float
    targets: tuple[int, ...]

    def __post_init__(self):
        kind = self.name[1:].lower()
        arity = 1 if kind in AXES_1Q else 2 if kind in AXES_2Q else 0
        if not self.name.startswith("R") or arity == 0:
            raise ValueError(f"unknown gate {self.name!r}")
        if len(self.targets) != arity:
            raise ValueError(f"{self.name} takes {arity} target(s), got {self.targets}")
        if not math.isfinite(self.angle):
            raise ValueError("gate angle must be finite")

    def matrix(self):
        kind = self.name[1:].lower()
        return rot_1q(kind, self.angle) if len(kind) == 1 else rot_2q(kind, self.angle)


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    ops: tuple[GateOp, ...] = ()
    measured_qubits: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        object.__setattr__(self, "measured_qubits", tuple(self.measured_qubits))
        for op in self.ops:
            if any(not 0 <= q < self.n_qubits for q in op.targets):
                raise ValueError(f"{op} targets a qubit outside the register")
            if len(set(op.targets)) != len(op.targets):
                raise ValueError(f"{op} repeats a target")
        if any(not 0 <= q < self.n_qubits for q in self.measured_qubits):
            raise ValueError("measured qubit outside the register")
        if len(set(self.measured_qubits)) != len(self.measured_qubits):
            raise ValueError("measured qubits must be distinct")

    def then(self, *ops: GateOp, measure=None) -> Circuit:
        measured = self.measured_qubits if measure is None else tuple(measure)
        return Circuit(self.n_qubits, self.ops + ops, measured)

    def to_text(self) -> str:
        lines = [f"QUBITS {self.n_qubits}"]
        for op in self.ops:
            lines.append(" ".join([op.name, f"{op.angle:.17g}", *map(str, op.targets)]))
        lines.append(" ".join(["MEASURE", *map(str, self.measured_qubits)]))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Circuit:
        lines = [ln.split() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0][0] != "QUBITS" or lines[-1][0] != "MEASURE":
            raise ValueError("circuit text needs a QUBITS header and a MEASURE trailer")
        ops = [GateOp(ln[0], float(ln[1]), tuple(int(q) for q in ln[2:])) for ln in lines[1:-1]]
        return cls(int(lines[0][1]), tuple(ops), tuple(int(q) for q in lines[-1][1:]))


def simulate(circuit: Circuit) -> core.StateVector:
    state = core.basis_state(circuit.n_qubits, "0" * circuit.n_qubits)
    for op in circuit.ops:
        if len(op.targets) == 1:
            state = core.apply_1q(state, op.matrix(), op.targets[0])
        else:
            state = core.apply_2q(state, op.matrix(), op.targets)
    return state


def exact_distribution(circuit: Circuit) -> dict[str, float]:
    """Noise-free outcome probabilities over the measured qubits."""
    if not circuit.measured_qubits:
        raise ValueError("circuit measures no qubits")
    return core.marginal_probabilities(simulate(circuit), circuit.measured_qubits)


def _prep_ops(a: PrepAngles) -> tuple[GateOp, ...]:
    return (
        GateOp("RY", a.theta0, (0,)),
        GateOp("RY", a.theta1, (1,)),
        GateOp("RZ", a.phi0, (0,)),
        GateOp("RZ", a.phi1, (1,)),
    )


def _unprep_ops(a: PrepAngles) -> tuple[GateOp, ...]:
    return (
        GateOp("RZ", -a.phi0, (0,)),
        GateOp("RZ", -a.phi1, (1,)),
        GateOp("RY", -a.theta0, (0,)),
        GateOp("RY", -a.theta1, (1,)),
    )


def _evolution_ops(g: GateAngles) -> tuple[GateOp, ...]:
    return (
        GateOp("RZZ", g.az, (0, 1)),
        GateOp("RYY", g.ay, (0, 1)),
        GateOp("RXX", g.ax, (0, 1)),
    )


def _check_axis(axis: str) -> None:
    if axis not in PAULI_AXES:
        raise ValueError(f"Pauli axis must be one of {PAULI_AXES}, got {axis!r}")


def _readout_ops(axis: str, qubits) -> tuple[GateOp, ...]:
    if axis == "z":
        return ()
    name, angle = _BASIS_ROTATION[axis]
    return tuple(GateOp(name, angle, (q,)) for q in qubits)


def prep_circuit(a: PrepAngles) -> Circuit:
    """Separable product state, equal to the target up to a global phase."""
    return Circuit(2, _prep_ops(a), (0, 1))


def evolution_circuit(g: GateAngles) -> Circuit:
    return Circuit(2, _evolution_ops(g), (0, 1))


def evolved_circuit(a: PrepAngles, g: GateAngles) -> Circuit:
    return Circuit(2, _prep_ops(a) + _evolution_ops(g), (0, 1))


def pauli_measure_circuit(a: PrepAngles, g: GateAngles, qubit: int, axis: str) -> Circuit:
    """Evolved state, basis change on ``qubit``, read-out of that qubit only."""
    _check_axis(axis)
    if qubit not in (0, 1):
        raise ValueError(f"qubit must be 0 or 1, got {qubit!r}")
    ops = _prep_ops(a) + _evolution_ops(g) + _readout_ops(axis, (qubit,))
    return Circuit(2, ops, (qubit,))


def correlator_circuit(a: PrepAngles, axis: str) -> Circuit:
    """Product state with the same basis change on both qubits; parity gives <s^k s^k>."""
    _check_axis(axis)
    return Circuit(2, _prep_ops(a) + _readout_ops(axis, (0, 1)), (0, 1))


def echo_circuit(a: PrepAngles, g: GateAngles) -> Circuit:
    """prep, evolve, undo prep: P(00) = |<psi0| S |psi0>|^2."""
    return Circuit(2, _prep_ops(a) + _evolution_ops(g) + _unprep_ops(a), (0, 1))
