"""Small dense complex linear algebra.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; the helpers
here validate shapes and enforce the package tolerance so that callers get
a named error instead of a broadcasting surprise.
"""

from __future__ import annotations

import contextlib
import contextvars
import os
from typing import NamedTuple

import numpy as np

from .errors import CapacityError, DegenerateInputError, ShapeError, ValidationError

DEFAULT_TOLERANCE = 1e-10
MAX_AXIS = 4096

_tolerance = contextvars.ContextVar(
    "qhl_tolerance", default=float(os.environ.get("QHL_TOLERANCE", DEFAULT_TOLERANCE))
)


def get_tolerance() -> float:
    return _tolerance.get()


def set_tolerance(value: float) -> None:
    """Set the structural tolerance for the current context."""
    if not value > 0:
        raise ValueError(f"tolerance must be positive, got {value}")
    _tolerance.set(float(value))


@contextlib.contextmanager
def tolerance(value: float):
    """Temporarily override the structural tolerance."""
    if not value > 0:
        raise ValueError(f"tolerance must be positive, got {value}")
    token = _tolerance.set(float(value))
    try:
        yield value
    finally:
        _tolerance.reset(token)


def resolve_tol(tol: float | None) -> float:
    return get_tolerance() if tol is None else float(tol)


class EigenDecomposition(NamedTuple):
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    return m


def as_square(a) -> np.ndarray:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise ShapeError(f"expected a square matrix, got shape {m.shape}")
    return m


def frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def matmul(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeError(f"cannot multiply shapes {a.shape} and {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def tensor(*factors, max_axis: int = MAX_AXIS) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor most significant."""
    if not factors:
        raise ValueError("tensor needs at least one factor")
    mats = [as_matrix(f) for f in factors]
    rows = int(np.prod([m.shape[0] for m in mats]))
    cols = int(np.prod([m.shape[1] for m in mats]))
    if rows > max_axis or cols > max_axis:
        raise CapacityError(
            f"tensor product of shape ({rows}, {cols}) exceeds the cap of {max_axis} per axis"
        )
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


def hermitian_defect(a) -> float:
    """Largest entrywise magnitude of ``a - a†``."""
    m = as_square(a)
    return float(np.max(np.abs(m - m.conj().T)))


def eigh(a, tol: float | None = None) -> EigenDecomposition:
    """Hermitian eigendecomposition with ascending eigenvalues.

    Raises ValidationError when ``a`` is not Hermitian within ``tol``
    entrywise. Only eigenspaces are meaningful; the phase of individual
    eigenvectors is whatever LAPACK returns.
    """
    m = as_square(a)
    defect = hermitian_defect(m)
    if defect > resolve_tol(tol):
        raise ValidationError(f"matrix is not Hermitian (max asymmetry {defect:.3g})")
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return EigenDecomposition(w, v)


def trace(a) -> complex:
    return complex(np.trace(as_square(a)))


def frobenius_norm(a) -> float:
    return float(np.linalg.norm(as_matrix(a)))


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise ShapeError(f"expected a non-empty 1-d state vector, got shape {v.shape}")
    n = np.linalg.norm(v)
    if n == 0:
        raise DegenerateInputError("cannot normalize the zero vector")
    return v / n


def identity(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex)


def random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary from the QR factorization of a complex Ginibre matrix."""
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
for _m in (SIGMA_X, SIGMA_Y, SIGMA_Z, HADAMARD):
    _m.setflags(write=False)
