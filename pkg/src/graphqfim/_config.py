import os

from .errors import ResourceError, ValidationError

#: Environment variable overriding the dense-construction qubit cap.
MAX_QUBITS_ENV = "GRAPHQFIM_MAX_QUBITS"
DEFAULT_MAX_QUBITS = 12


def max_qubits():
    """Largest qubit count for which dense 2^n x 2^n matrices are built."""
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError:
        raise ValidationError(f"{MAX_QUBITS_ENV} must be an integer, got {raw!r}")
    if value < 1:
        raise ValidationError(f"{MAX_QUBITS_ENV} must be positive, got {value}")
    return value


def check_dense(n, cap=None):
    cap = max_qubits() if cap is None else cap
    if n > cap:
        raise ResourceError(
            f"dense construction on {n} qubits exceeds the cap of {cap} "
            f"(set {MAX_QUBITS_ENV} to override)"
        )
