"""Entanglement distance and evolution speed of a two-spin XXZ system.

Exact statevector oracle, circuit protocols with shot sampling, closed-form
expressions and the echo-decay fit.
"""

from .analytics import (
    OracleMismatchError,
    entanglement_closed_form,
    entanglement_exact,
    oracle_evolved_state,
    variance_H,
)
from .gates import GateAngles, ModelParams, angles_from_model
from .protocols import Circuit, PrepAngles

__all__ = [
    "Circuit",
    "GateAngles",
    "ModelParams",
    "OracleMismatchError",
    "PrepAngles",
    "angles_from_model",
    "entanglement_closed_form",
    "entanglement_exact",
    "oracle_evolved_state",
    "variance_H",
]
