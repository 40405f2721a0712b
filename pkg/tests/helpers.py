"""Independent oracles and random generators shared by the tests."""

import numpy as np
from scipy.linalg import null_space, orth

from qhl.numeric import random_unitary
from qhl.subspace import Projector


def random_commuting_family(rng, d, count):
    """Projectors that are random sums of the columns of one random unitary."""
    u = random_unitary(d, rng)
    out = []
    for _ in range(count):
        cols = np.flatnonzero(rng.random(d) < 0.5)
        out.append(Projector.from_basis(u[:, cols]))
    return out


def random_projector_any_rank(rng, d):
    u = random_unitary(d, rng)
    return Projector.from_basis(u[:, : rng.integers(0, d + 1)])


def span_projector(columns, d):
    """Projector onto the column span, via an SVD-based orthonormal basis."""
    if columns.shape[1] == 0:
        return np.zeros((d, d), dtype=complex)
    basis = orth(columns, rcond=1e-9)
    return basis @ basis.conj().T


def intersection_projector(p, q):
    """range(P) ∩ range(Q) from the null space of [B_P, −B_Q]."""
    bp, bq = p.range_basis(), q.range_basis()
    d = p.dim
    if bp.shape[1] == 0 or bq.shape[1] == 0:
        return np.zeros((d, d), dtype=complex)
    ns = null_space(np.hstack([bp, -bq]), rcond=1e-9)
    return span_projector(bp @ ns[: bp.shape[1]], d)


def union_projector(p, q):
    return span_projector(np.hstack([p.range_basis(), q.range_basis()]), p.dim)
