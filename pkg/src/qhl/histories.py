"""History families, chain operators and the decoherence functional.

For a family with initial density operator ρ₀, event sets E₁..E_T and
unitaries U₁..U_T, the chain operator of history h = (h₁..h_T) is

    K(h) = P_T U_T ··· P₂ U₂ P₁ U₁,    P_t = E_t[h_t]

and the decoherence functional is D(h, h') = Tr[K(h) ρ₀ K(h')†].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import numeric
from .errors import CapacityError, InconsistentFamilyError, ShapeError, ValidationError
from .numeric import frobenius_norm, resolve_tol
from .subspace import Projector, projector_from_state

MAX_HISTORIES = 4096
CONSISTENCY_TOL = 1e-8


@dataclass(frozen=True)
class HistoryFamily:
    initial: np.ndarray
    event_sets: tuple[tuple[Projector, ...], ...]
    unitaries: tuple[np.ndarray, ...]

    def __init__(self, initial, event_sets: Sequence[Sequence[Projector]],
                 unitaries: Sequence | None = None, tol: float | None = None):
        tol = resolve_tol(tol)
        rho = numeric.as_square(initial)
        d = rho.shape[0]
        event_sets = tuple(tuple(es) for es in event_sets)
        if not event_sets:
            raise ValidationError("a history family needs at least one time step")
        if unitaries is None:
            unitaries = [numeric.identity(d)] * len(event_sets)
        unitaries = tuple(numeric.frozen(numeric.as_square(u)) for u in unitaries)
        if len(unitaries) != len(event_sets):
            raise ValidationError(
                f"{len(event_sets)} event sets but {len(unitaries)} unitaries"
            )

        if frobenius_norm(rho - rho.conj().T) > tol:
            raise ValidationError("initial state is not Hermitian")
        if np.linalg.eigvalsh((rho + rho.conj().T) / 2).min() < -tol:
            raise ValidationError("initial state is not positive semidefinite")
        if abs(np.trace(rho) - 1) > tol:
            raise ValidationError(f"initial state has trace {np.trace(rho).real:.6g}, not 1")

        for t, (events, u) in enumerate(zip(event_sets, unitaries), start=1):
            if u.shape != (d, d):
                raise ShapeError(f"unitary at time {t} has shape {u.shape}, expected {(d, d)}")
            if frobenius_norm(u.conj().T @ u - np.eye(d)) > tol:
                raise ValidationError(f"U_{t} is not unitary")
            if not events:
                raise ValidationError(f"event set at time {t} is empty")
            for p in events:
                if p.dim != d:
                    raise ShapeError(f"event at time {t} has dimension {p.dim}, expected {d}")
            total = sum(p.matrix for p in events)
            if frobenius_norm(total - np.eye(d)) > tol:
                raise ValidationError(f"events at time {t} do not sum to the identity")
            for i, j in itertools.combinations(range(len(events)), 2):
                if frobenius_norm(events[i].matrix @ events[j].matrix) > tol:
                    raise ValidationError(f"events {i} and {j} at time {t} are not orthogonal")

        object.__setattr__(self, "initial", numeric.frozen(rho))
        object.__setattr__(self, "event_sets", event_sets)
        object.__setattr__(self, "unitaries", unitaries)

    @classmethod
    def from_state(cls, state, event_sets, unitaries=None, tol=None) -> "HistoryFamily":
        return cls(projector_from_state(state).matrix, event_sets, unitaries, tol)

    @property
    def dim(self) -> int:
        return self.initial.shape[0]

    @property
    def times(self) -> int:
        return len(self.event_sets)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(es) for es in self.event_sets)

    def histories(self) -> list[tuple[int, ...]]:
        return list(itertools.product(*(range(n) for n in self.shape)))


def chain_operator(fam: HistoryFamily, history: Sequence[int]) -> np.ndarray:
    history = tuple(history)
    if len(history) != fam.times:
        raise IndexError(f"history has {len(history)} entries, family has {fam.times} times")
    k = numeric.identity(fam.dim)
    for t, (idx, events, u) in enumerate(zip(history, fam.event_sets, fam.unitaries), start=1):
        if not 0 <= idx < len(events):
            raise IndexError(f"event index {idx} out of range at time {t}")
        k = events[idx].matrix @ u @ k
    return k


@dataclass(frozen=True)
class DecoherenceMatrix:
    matrix: np.ndarray
    histories: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.histories)


def decoherence_functional(fam: HistoryFamily) -> DecoherenceMatrix:
    hs = fam.histories()
    if len(hs) > MAX_HISTORIES:
        raise CapacityError(f"{len(hs)} histories exceeds the cap of {MAX_HISTORIES}")
    # ρ₀ = W W†, so D[h, h'] = Σ (K_h W) ⊙ conj(K_h' W).
    w, v = np.linalg.eigh(fam.initial)
    keep = w > 0
    root = v[:, keep] * np.sqrt(w[keep])
    rows = np.array([(chain_operator(fam, h) @ root).ravel() for h in hs])
    d = rows @ rows.conj().T
    return DecoherenceMatrix(numeric.frozen(d), tuple(hs))


@dataclass(frozen=True)
class ConsistencyCheck:
    consistent: bool
    max_off_diagonal: float
    condition: str

    def __bool__(self):
        return self.consistent


def off_diagonal_magnitude(dm: DecoherenceMatrix, condition: str = "medium") -> float:
    """Largest |D[h,h']| (medium) or |Re D[h,h']| (weak) over h ≠ h'."""
    m = np.array(dm.matrix)
    if condition == "weak":
        m = m.real
    elif condition != "medium":
        raise ValueError(f"unknown consistency condition {condition!r}")
    off = np.abs(m - np.diag(np.diag(m)))
    return float(off.max()) if off.size else 0.0


def is_consistent(dm: DecoherenceMatrix, tol: float = CONSISTENCY_TOL,
                  condition: str = "medium") -> ConsistencyCheck:
    mag = off_diagonal_magnitude(dm, condition)
    return ConsistencyCheck(mag <= tol, mag, condition)


def probabilities(dm: DecoherenceMatrix, tol: float = CONSISTENCY_TOL,
                  condition: str = "medium") -> list[float]:
    """Born-rule weights D(h,h) of a consistent family, in history order."""
    check = is_consistent(dm, tol, condition)
    if not check:
        raise InconsistentFamilyError(check.max_off_diagonal)
    return [max(float(x), 0.0) for x in np.diag(dm.matrix).real]
