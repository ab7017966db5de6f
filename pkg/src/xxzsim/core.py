"""Dense statevector substrate for small qubit registers.

Indexing: qubit 0 is the least significant bit of the basis index, and
bitstrings are written qubit-0 first, so ``"01"`` is q0=0, q1=1 (index 2).
"""

from __future__ import annotations

import numpy as np

MAX_QUBITS = 10
NORM_TOL = 1e-12
UNITARY_TOL = 1e-10

PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


class StateVector:
    """Immutable normalized amplitude vector over ``2**n_qubits`` basis states."""

    __slots__ = ("_amps", "n_qubits")

    def __init__(self, amps, n_qubits: int | None = None):
        amps = np.array(amps, dtype=complex).reshape(-1)
        dim = amps.size
        n = int(dim).bit_length() - 1
        if dim < 2 or (1 << n) != dim:
            raise ValueError(f"amplitude length {dim} is not a power of two >= 2")
        if n_qubits is not None and n_qubits != n:
            raise ValueError(f"expected {2 ** n_qubits} amplitudes, got {dim}")
        if n > MAX_QUBITS:
            raise ValueError(f"at most {MAX_QUBITS} qubits supported")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL * max(1, dim):
            raise ValueError(f"state is not normalized (|psi|^2 = {norm2!r})")
        amps.flags.writeable = False
        self._amps = amps
        self.n_qubits = n

    @property
    def amps(self) -> np.ndarray:
        return self._amps

    def __len__(self) -> int:
        return self._amps.size

    def __repr__(self) -> str:
        return f"StateVector(n_qubits={self.n_qubits}, amps={self._amps!r})"

    def probabilities(self) -> np.ndarray:
        return np.abs(self._amps) ** 2

    def norm2(self) -> float:
        return float(np.vdot(self._amps, self._amps).real)


def _check_qubit(state: StateVector, q: int) -> int:
    if not isinstance(q, (int, np.integer)) or not 0 <= q < state.n_qubits:
        raise ValueError(f"qubit index {q!r} out of range for {state.n_qubits} qubits")
    return int(q)


def _check_unitary(u: np.ndarray, dim: int) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.shape != (dim, dim):
        raise ValueError(f"expected a {dim}x{dim} matrix, got shape {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(dim))) > UNITARY_TOL:
        raise ValueError("matrix is not unitary")
    return u


def _axis(n: int, q: int) -> int:
    # C-order reshape puts the most significant bit first
    return n - 1 - q


def basis_state(n_qubits: int, bitstring: str) -> StateVector:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise ValueError(f"n_qubits must be in [1, {MAX_QUBITS}]")
    if len(bitstring) != n_qubits or set(bitstring) - {"0", "1"}:
        raise ValueError(f"bitstring {bitstring!r} is not {n_qubits} binary digits")
    index = sum(1 << k for k, ch in enumerate(bitstring) if ch == "1")
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[index] = 1.0
    return StateVector(amps)


def index_to_bits(index: int, qubits) -> str:
    """Bitstring of ``index`` restricted to ``qubits`` (in the listed order)."""
    return "".join(str((index >> q) & 1) for q in qubits)


def apply_1q(state: StateVector, u, target: int) -> StateVector:
    """Apply a 2x2 unitary to ``target``; identity elsewhere."""
    target = _check_qubit(state, target)
    u = _check_unitary(u, 2)
    n = state.n_qubits
    psi = state.amps.reshape((2,) * n)
    ax = _axis(n, target)
    out = np.moveaxis(np.tensordot(u, psi, axes=([1], [ax])), 0, ax)
    return StateVector(out.reshape(-1))


def apply_2q(state: StateVector, u, targets) -> StateVector:
    """Apply a 4x4 unitary to ``targets = (a, b)``.

    The matrix is read in the textbook tensor order: ``A kron B`` acts
    with ``A`` on ``a`` and ``B`` on ``b``.
    """
    a, b = targets
    a, b = _check_qubit(state, a), _check_qubit(state, b)
    if a == b:
        raise ValueError("two-qubit gate targets must be distinct")
    u = _check_unitary(u, 4).reshape(2, 2, 2, 2)
    n = state.n_qubits
    psi = state.amps.reshape((2,) * n)
    axes = (_axis(n, a), _axis(n, b))
    out = np.tensordot(u, psi, axes=([2, 3], list(axes)))
    out = np.moveaxis(out, [0, 1], list(axes))
    return StateVector(out.reshape(-1))


def inner(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugating ``a``."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("states have different qubit counts")
    return complex(np.vdot(a.amps, b.amps))


def register_operator(ops: dict[int, np.ndarray], n_qubits: int) -> np.ndarray:
    """Full-register matrix of a tensor product, ``ops`` keyed by qubit index."""
    mat = np.eye(1, dtype=complex)
    # highest qubit is the leftmost kron factor under LSB indexing
    for q in reversed(range(n_qubits)):
        mat = np.kron(mat, ops.get(q, PAULI["i"]))
    return mat


def expectation(state: StateVector, op: np.ndarray) -> float:
    """<psi|op|psi> for a Hermitian register operator."""
    return float(np.vdot(state.amps, op @ state.amps).real)


def reduced_density_matrix(state: StateVector, qubit: int) -> np.ndarray:
    qubit = _check_qubit(state, qubit)
    n = state.n_qubits
    psi = np.moveaxis(state.amps.reshape((2,) * n), _axis(n, qubit), 0).reshape(2, -1)
    return psi @ psi.conj().T


def reduced_bloch(state: StateVector, qubit: int) -> tuple[float, float, float]:
    """Single-qubit Pauli means (<sx>, <sy>, <sz>) of ``qubit``."""
    rho = reduced_density_matrix(state, qubit)
    rx = 2.0 * rho[1, 0].real
    ry = 2.0 * rho[1, 0].imag
    rz = (rho[0, 0] - rho[1, 1]).real
    return float(rx), float(ry), float(rz)


def marginal_probabilities(state: StateVector, qubits) -> dict[str, float]:
    """Exact outcome distribution over ``qubits``, keyed by bitstring in listed order."""
    qubits = [_check_qubit(state, q) for q in qubits]
    if not qubits:
        raise ValueError("no qubits to marginalize onto")
    if len(set(qubits)) != len(qubits):
        raise ValueError("measured qubits must be distinct")
    probs = state.probabilities()
    out = {index_to_bits(k, range(len(qubits))): 0.0 for k in range(2 ** len(qubits))}
    for index, p in enumerate(probs):
        out[index_to_bits(index, qubits)] += float(p)
    return out
