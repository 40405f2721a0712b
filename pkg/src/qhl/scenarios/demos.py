"""Reproductions of the spin-boxes and GHZ situations."""

from __future__ import annotations

import itertools

import numpy as np

from .. import numeric
from ..errors import NonCommutingError
from ..framework import Argument, assess, build_framework
from ..histories import HistoryFamily, decoherence_functional, is_consistent, probabilities
from ..numeric import frobenius_norm, resolve_tol
from ..subspace import Projector, commutator_norm, projector_from_state, spin_projector
from .report import Report

MAX_COPIES = 1024
TENSOR_COPIES = 10


def spin_state(axis: str, sign: int = 1) -> np.ndarray:
    """Unit spinor for spin ``sign``/2 along x, y or z."""
    return spin_projector(axis, sign).range_basis()[:, 0]


def label_projectors(label_dim: int = 2, label_overlap: float = 0.0):
    """Rank-one label projectors L_x, L_z in a ``label_dim`` space.

    ``label_overlap`` is |⟨l_x|l_z⟩|; zero gives exactly orthogonal labels.
    """
    if label_dim < 2:
        raise ValueError(f"label_dim must be at least 2, got {label_dim}")
    if not 0.0 <= label_overlap <= 1.0:
        raise ValueError(f"label_overlap must lie in [0, 1], got {label_overlap}")
    lx = np.zeros(label_dim, dtype=complex)
    lx[0] = 1
    lz = np.zeros(label_dim, dtype=complex)
    lz[0] = label_overlap
    lz[1] = np.sqrt(1 - label_overlap**2)
    return projector_from_state(lx), projector_from_state(lz)


def n_copy_overlap(n: int) -> float:
    """|⟨z+|x+⟩|ⁿ for n-fold tensor powers of the two states.

    Up to ten copies the states are built explicitly and the result is
    checked against the closed form 2^(−n/2).
    """
    if not 1 <= n <= MAX_COPIES:
        raise ValueError(f"n must lie in 1..{MAX_COPIES}, got {n}")
    closed = 2.0 ** (-n / 2)
    if n > TENSOR_COPIES:
        return closed
    zp, xp = spin_state("z"), spin_state("x")
    zn, xn = zp, xp
    for _ in range(n - 1):
        zn = np.kron(zn, zp)
        xn = np.kron(xn, xp)
    direct = float(abs(np.vdot(zn, xn)))
    if abs(direct - closed) > 1e-12:
        raise ArithmeticError(f"tensor overlap {direct!r} disagrees with closed form {closed!r}")
    return direct


def demo_spin_boxes(label_dim: int = 2, label_overlap: float = 0.0,
                    tol: float | None = None) -> Report:
    if label_dim < 2:
        raise ValueError(f"label_dim must be at least 2, got {label_dim}")
    tol = resolve_tol(tol)
    report = Report("spin-boxes", tol)
    xp, zp = spin_projector("x", 1), spin_projector("z", 1)
    lx, lz = label_projectors(label_dim, label_overlap)

    norm = commutator_norm(xp, zp)
    report.add("bare-pair", "commutation", "noncommuting" if norm > tol else "commuting",
               commutator_norm=norm)

    bare = assess(Argument.from_text("Sx | Sz |- Sx | Sz", {"Sx": xp, "Sz": zp}), tol)
    report.add("bare-disjunction", "argument", bare.kind, **bare.to_dict())

    label_norm = frobenius_norm(lx.matrix @ lz.matrix)
    report.add("labels", "orthogonality", "orthogonal" if label_norm <= tol else "overlapping",
               product_norm=label_norm, label_dim=label_dim, label_overlap=label_overlap)

    xl = Projector(numeric.tensor(xp.matrix, lx.matrix))
    zl = Projector(numeric.tensor(zp.matrix, lz.matrix))
    pair_norm = frobenius_norm(xl.matrix @ zl.matrix)
    report.add("labeled-pair", "orthogonality", "orthogonal" if pair_norm <= tol else "overlapping",
               product_norm=pair_norm)

    try:
        fw = build_framework([xl, zl], tol, labels=["SxLx", "SzLz"])
    except NonCommutingError as e:
        report.add("labeled-framework", "framework", "meaningless",
                   noncommuting_pairs=[{"left": a, "right": b, "commutator_norm": n}
                                       for a, b, n in e.pairs])
    else:
        report.add("labeled-framework", "framework", "ok",
                   atoms=len(fw), atom_ranks=[a.rank for a in fw.atoms])

    labeled = assess(Argument.from_text("SxLx | SzLz |- SxLx | SzLz",
                                        {"SxLx": xl, "SzLz": zl}), tol)
    report.add("labeled-disjunction", "argument", labeled.kind, **labeled.to_dict())

    fam = HistoryFamily.from_state(spin_state("x"), [[zp, spin_projector("z", -1)]])
    dm = decoherence_functional(fam)
    check = is_consistent(dm)
    if check:
        probs = probabilities(dm)
        report.add("sz-statistic", "histories", "consistent",
                   prepared="x+", events=["z+", "z-"], probabilities=probs)
    else:
        report.add("sz-statistic", "histories", "inconsistent",
                   max_off_diagonal=check.max_off_diagonal)

    copies = [1, 2, 10, 20]
    report.add("n-copy-overlap", "overlap", "ok", copies=copies,
               overlaps=[n_copy_overlap(n) for n in copies])
    return report


# --- GHZ ------------------------------------------------------------------

GHZ_OPERATORS = ("XXX", "XYY", "YXY", "YYX")
_PAULI = {"X": numeric.SIGMA_X, "Y": numeric.SIGMA_Y}


def ghz_state(n: int = 3) -> np.ndarray:
    v = np.zeros(2**n, dtype=complex)
    v[0] = v[-1] = 1
    return numeric.normalize(v)


def pauli_string(letters: str) -> np.ndarray:
    return numeric.tensor(*(_PAULI[c] for c in letters))


def local_projector(axis: str, site: int, n: int = 3) -> Projector:
    """Spin-up projector along ``axis`` on particle ``site`` (0-based) of ``n``."""
    factors = [numeric.identity(2)] * n
    factors[site] = spin_projector(axis, 1).matrix
    return Projector(numeric.tensor(*factors))


def ghz_eigenvalues(tol: float | None = None) -> dict[str, tuple[int, float]]:
    """Sign of each GHZ operator on the state, with the eigen-residual ‖Oψ − λψ‖."""
    tol = resolve_tol(tol)
    psi = ghz_state()
    out = {}
    for name in GHZ_OPERATORS:
        phi = pauli_string(name) @ psi
        lam = float(np.vdot(psi, phi).real)
        sign = int(np.sign(round(lam)))
        residual = float(np.linalg.norm(phi - sign * psi))
        out[name] = (sign, residual)
    return out


def count_value_assignments(constraints: dict[str, int]) -> tuple[int, int]:
    """Count ±1 assignments to (x₁,y₁,x₂,y₂,x₃,y₃) meeting every constraint.

    A constraint maps an operator string such as "XYY" to the required
    product of the corresponding particle values.
    """
    solutions = 0
    total = 0
    for values in itertools.product((1, -1), repeat=6):
        total += 1
        table = {"X": values[0::2], "Y": values[1::2]}
        if all(
            np.prod([table[c][k] for k, c in enumerate(name)]) == sign
            for name, sign in constraints.items()
        ):
            solutions += 1
    return solutions, total


def demo_ghz(tol: float | None = None) -> Report:
    tol = resolve_tol(tol)
    report = Report("ghz", tol)

    eig = ghz_eigenvalues(tol)
    ok = all(res <= tol for _, res in eig.values())
    report.add("eigenvalues", "eigenvalues", "ok" if ok else "fail",
               eigenvalues={k: s for k, (s, _) in eig.items()},
               residuals={k: r for k, (_, r) in eig.items()})

    ops = {name: pauli_string(name) for name in GHZ_OPERATORS}
    norms = {
        f"{a},{b}": frobenius_norm(ops[a] @ ops[b] - ops[b] @ ops[a])
        for a, b in itertools.combinations(GHZ_OPERATORS, 2)
    }
    plus = [Projector((numeric.identity(8) + ops[name]) / 2) for name in GHZ_OPERATORS]
    try:
        fw = build_framework(plus, tol, labels=list(GHZ_OPERATORS))
    except NonCommutingError:
        report.add("collective-framework", "framework", "meaningless", commutator_norms=norms)
    else:
        report.add("collective-framework", "framework", "ok",
                   commutator_norms=norms, atoms=len(fw))

    single = commutator_norm(spin_projector("x", 1), spin_projector("y", 1))
    binding = {}
    for k in range(3):
        binding[f"X{k + 1}"] = local_projector("x", k)
        binding[f"Y{k + 1}"] = local_projector("y", k)
    text = "; ".join(binding) + " |- X1"
    verdict = assess(Argument.from_text(text, binding), tol)
    report.add("value-framework", "argument", verdict.kind,
               single_particle_commutator_norm=single, **verdict.to_dict())

    constraints = {name: sign for name, (sign, _) in eig.items()}
    solutions, total = count_value_assignments(constraints)
    report.add("value-assignments", "search", "impossible" if solutions == 0 else "satisfiable",
               constraints=constraints, satisfying=solutions, searched=total)
    return report
