"""Projectors as quantum propositions and the lattice operations on them."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import numeric
from .errors import ShapeError, ValidationError
from .numeric import frobenius_norm, resolve_tol

# Eigenvalue window for the intersection eigenspace of P + Q. Eigenvalue
# perturbations scale with the matrix perturbation, so this is looser than
# the structural tolerance.
MEET_WINDOW = 1e-8


class Projector:
    """An orthogonal projector, validated on construction.

    Construction fails with ValidationError when the matrix is not
    Hermitian and idempotent within ``tol`` (Frobenius norm) or when its
    trace is not an integer within ``tol``. Use :func:`purify` to snap a
    near-projector onto the closest true one first.
    """

    __slots__ = ("_matrix", "rank")

    def __init__(self, matrix, tol: float | None = None):
        m = numeric.as_square(matrix)
        tol = resolve_tol(tol)
        herm = frobenius_norm(m - m.conj().T)
        if herm > tol:
            raise ValidationError(f"matrix is not Hermitian (‖P − P†‖ = {herm:.3g})")
        idem = frobenius_norm(m @ m - m)
        if idem > tol:
            raise ValidationError(f"matrix is not idempotent (‖P² − P‖ = {idem:.3g})")
        tr = np.trace(m)
        rank = int(round(tr.real))
        if abs(tr - rank) > tol:
            raise ValidationError(f"trace {tr:.6g} is not an integer rank")
        self._matrix = numeric.frozen(m)
        self.rank = rank

    @classmethod
    def _trusted(cls, matrix: np.ndarray, rank: int) -> "Projector":
        p = cls.__new__(cls)
        p._matrix = numeric.frozen(matrix)
        p.rank = rank
        return p

    @classmethod
    def from_basis(cls, columns) -> "Projector":
        """Projector onto the span of orthonormal ``columns`` (shape d × r)."""
        v = np.asarray(columns, dtype=complex)
        m = v @ v.conj().T
        return cls._trusted((m + m.conj().T) / 2, v.shape[1])

    @classmethod
    def identity(cls, d: int) -> "Projector":
        return cls._trusted(numeric.identity(d), d)

    @classmethod
    def zero(cls, d: int) -> "Projector":
        return cls._trusted(np.zeros((d, d), dtype=complex), 0)

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def is_zero(self) -> bool:
        return self.rank == 0

    def allclose(self, other, tol: float | None = None) -> bool:
        other_m = other.matrix if isinstance(other, Projector) else numeric.as_square(other)
        if other_m.shape != self._matrix.shape:
            return False
        return frobenius_norm(self._matrix - other_m) <= resolve_tol(tol)

    def range_basis(self) -> np.ndarray:
        """Orthonormal columns spanning the range."""
        w, v = np.linalg.eigh(self._matrix)
        return v[:, w > 0.5]

    def __invert__(self):
        return complement(self)

    def __and__(self, other):
        return meet(self, other)

    def __or__(self, other):
        return join(self, other)

    def __matmul__(self, other):
        other_m = other.matrix if isinstance(other, Projector) else other
        return numeric.tensor(self._matrix, other_m)

    def __repr__(self):
        return f"Projector(dim={self.dim}, rank={self.rank})"


class SpinAxis(NamedTuple):
    x: float
    y: float
    z: float

    @classmethod
    def of(cls, x: float, y: float, z: float) -> "SpinAxis":
        n = float(np.sqrt(x * x + y * y + z * z))
        if n == 0:
            raise ValueError("spin axis must be nonzero")
        return cls(x / n, y / n, z / n)

    @classmethod
    def named(cls, name: str) -> "SpinAxis":
        try:
            return _NAMED_AXES[name.lower()]
        except KeyError:
            raise ValueError(f"unknown spin axis {name!r}; expected x, y or z") from None


_NAMED_AXES = {
    "x": SpinAxis(1.0, 0.0, 0.0),
    "y": SpinAxis(0.0, 1.0, 0.0),
    "z": SpinAxis(0.0, 0.0, 1.0),
}


def _same_dim(p: Projector, q: Projector) -> None:
    if p.dim != q.dim:
        raise ShapeError(f"projector dimensions differ: {p.dim} vs {q.dim}")


def purify(matrix) -> Projector:
    """Nearest projector to a Hermitian-ish matrix: eigenvalues rounded to 0 or 1."""
    m = numeric.as_square(matrix)
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return Projector.from_basis(v[:, w > 0.5])


def projector_from_state(v) -> Projector:
    """Rank-one projector |v⟩⟨v| for a state vector (normalized first)."""
    v = numeric.normalize(v)
    return Projector.from_basis(v.reshape(-1, 1))


def spin_projector(axis: SpinAxis | str, sign: int = 1) -> Projector:
    """Projector onto spin ``sign``/2 along ``axis``: (I + sign n·σ)/2."""
    if isinstance(axis, str):
        axis = SpinAxis.named(axis)
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    n_sigma = axis.x * numeric.SIGMA_X + axis.y * numeric.SIGMA_Y + axis.z * numeric.SIGMA_Z
    return Projector((numeric.identity(2) + sign * n_sigma) / 2)


def complement(p: Projector) -> Projector:
    return Projector._trusted(numeric.identity(p.dim) - p.matrix, p.dim - p.rank)


def meet(p: Projector, q: Projector, window: float = MEET_WINDOW) -> Projector:
    """Projector onto range(P) ∩ range(Q).

    The intersection is the eigenvalue-2 eigenspace of P + Q.
    """
    _same_dim(p, q)
    w, v = numeric.eigh(p.matrix + q.matrix)
    return Projector.from_basis(v[:, np.abs(w - 2.0) <= window])


def join(p: Projector, q: Projector, window: float = MEET_WINDOW) -> Projector:
    """Projector onto the closed span of range(P) and range(Q), via De Morgan."""
    return complement(meet(complement(p), complement(q), window))


def leq(p: Projector, q: Projector, tol: float | None = None) -> bool:
    """True iff range(P) ⊆ range(Q)."""
    _same_dim(p, q)
    return frobenius_norm(q.matrix @ p.matrix - p.matrix) <= resolve_tol(tol)


def commutator_norm(p: Projector, q: Projector) -> float:
    _same_dim(p, q)
    a, b = p.matrix, q.matrix
    return frobenius_norm(a @ b - b @ a)


def commutes(p: Projector, q: Projector, tol: float | None = None) -> bool:
    return commutator_norm(p, q) <= resolve_tol(tol)


class CommonEigenstate(NamedTuple):
    exists: bool
    witness: np.ndarray | None

    def __bool__(self):
        return self.exists


def common_eigenstate_exists(p: Projector, q: Projector) -> CommonEigenstate:
    """Search the four joint eigenspaces (range or kernel of each) for a vector.

    Non-commutation does not rule this out once the dimension is 3 or
    more: a shared kernel vector is a common eigenstate.
    """
    _same_dim(p, q)
    for a in (p, complement(p)):
        for b in (q, complement(q)):
            m = meet(a, b)
            if not m.is_zero():
                return CommonEigenstate(True, m.range_basis()[:, 0])
    return CommonEigenstate(False, None)


def direct_sum(*blocks) -> np.ndarray:
    """Block-diagonal matrix from square blocks (projectors or arrays)."""
    mats = [b.matrix if isinstance(b, Projector) else numeric.as_square(b) for b in blocks]
    d = sum(m.shape[0] for m in mats)
    out = np.zeros((d, d), dtype=complex)
    k = 0
    for m in mats:
        n = m.shape[0]
        out[k:k + n, k:k + n] = m
        k += n
    return out


def random_projector(d: int, rank: int, rng: np.random.Generator) -> Projector:
    u = numeric.random_unitary(d, rng)
    return Projector.from_basis(u[:, :rank])
