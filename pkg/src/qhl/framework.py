"""Boolean frameworks of commuting projectors and the single-framework checker.

A framework is stored through its atoms: nonzero, mutually orthogonal
projectors summing to the identity. Every member of the Boolean algebra is
the sum of a subset of atoms, so within a framework meet, join and
complement reduce to set intersection, union and complement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import ClassVar, Mapping, Sequence

import numpy as np

from . import numeric
from .errors import NonCommutingError, ShapeError, UnboundAtomError
from .formula import (
    Formula,
    Not,
    atoms as formula_atoms,
    check_binding,
    conjunction,
    parse_argument,
    quantum_eval,
    random_formula,
)
from .numeric import frobenius_norm, resolve_tol
from .subspace import Projector, commutator_norm, leq, purify


@dataclass(frozen=True)
class Framework:
    dim: int
    atoms: tuple[Projector, ...]
    generators: tuple[Projector, ...] = ()

    def decompose(self, p: Projector) -> tuple[tuple[int, ...], float]:
        """Best-approximating atom subset for ``p`` and its Frobenius distance.

        ‖p − Σ_S a‖² = tr p − Σ_S (2 tr(pa) − tr a), so an atom belongs to
        the optimal subset exactly when 2 tr(pa) > tr(a).
        """
        if p.dim != self.dim:
            raise ShapeError(f"projector dimension {p.dim} vs framework dimension {self.dim}")
        subset = tuple(
            i for i, a in enumerate(self.atoms)
            if 2 * np.trace(p.matrix @ a.matrix).real > a.rank
        )
        approx = self.member(subset).matrix
        return subset, frobenius_norm(p.matrix - approx)

    def member(self, subset) -> Projector:
        """The projector for a subset of atom indices."""
        m = np.zeros((self.dim, self.dim), dtype=complex)
        rank = 0
        for i in subset:
            m = m + self.atoms[i].matrix
            rank += self.atoms[i].rank
        return Projector._trusted(m, rank)

    def __len__(self):
        return len(self.atoms)


def _noncommuting_pairs(named: Sequence[tuple[object, Projector]], tol: float):
    pairs = []
    for (a, p), (b, q) in itertools.combinations(named, 2):
        n = commutator_norm(p, q)
        if n > tol:
            pairs.append((a, b, n))
    return pairs


def build_framework(generators: Sequence[Projector], tol: float | None = None,
                    labels: Sequence[object] | None = None) -> Framework:
    """Framework generated by pairwise-commuting projectors.

    Atoms are the nonzero products Π Pᵢ^{εᵢ} (P¹ = P, P⁰ = I − P), built by
    splitting each current atom with every generator in turn; each product
    is snapped to the nearest projector to keep rounding from accumulating.
    """
    tol = resolve_tol(tol)
    generators = tuple(generators)
    labels = list(labels) if labels is not None else list(range(len(generators)))
    if not generators:
        raise ValueError("build_framework needs at least one generator")
    dims = {g.dim for g in generators}
    if len(dims) > 1:
        raise ShapeError(f"generators have differing dimensions: {sorted(dims)}")
    pairs = _noncommuting_pairs(list(zip(labels, generators)), tol)
    if pairs:
        raise NonCommutingError(pairs)

    d = generators[0].dim
    current = [Projector.identity(d)]
    for g in generators:
        split = []
        for a in current:
            inside = a.matrix @ g.matrix
            for part in (inside, a.matrix - inside):
                atom = purify(part)
                if not atom.is_zero():
                    split.append(atom)
        current = split

    fw = Framework(d, tuple(current), generators)
    for i, j in itertools.combinations(range(len(current)), 2):
        overlap = frobenius_norm(current[i].matrix @ current[j].matrix)
        if overlap > tol:
            raise ArithmeticError(f"atoms {i} and {j} overlap by {overlap:.3g}")
    return fw


def contains(fw: Framework, p: Projector, tol: float | None = None) -> bool:
    """True iff ``p`` is a sum of atoms of ``fw`` within tolerance."""
    return fw.decompose(p)[1] <= resolve_tol(tol)


# --- arguments ------------------------------------------------------------

@dataclass(frozen=True)
class Argument:
    premises: tuple[Formula, ...]
    conclusion: Formula
    binding: Mapping[str, Projector] = field(default_factory=dict)

    @classmethod
    def from_text(cls, text: str, binding: Mapping[str, Projector]) -> "Argument":
        premises, conclusion = parse_argument(text)
        return cls(tuple(premises), conclusion, dict(binding))

    def atom_names(self) -> list[str]:
        names: dict[str, None] = {}
        for f in (*self.premises, self.conclusion):
            for n in formula_atoms(f):
                names.setdefault(n)
        return list(names)


class Verdict:
    kind: ClassVar[str]

    def to_dict(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Valid(Verdict):
    kind: ClassVar[str] = "valid"

    def to_dict(self):
        return {"verdict": self.kind}


@dataclass(frozen=True)
class Invalid(Verdict):
    """``countermodel`` indexes an atom of ``framework`` lying under every
    premise and orthogonal to the conclusion; ``assignment`` is the classical
    truth value of each formula atom on it."""

    countermodel: int
    assignment: dict
    framework: Framework = field(repr=False, compare=False)
    kind: ClassVar[str] = "invalid"

    def to_dict(self):
        return {
            "verdict": self.kind,
            "countermodel_atom": self.countermodel,
            "countermodel_assignment": dict(self.assignment),
        }


@dataclass(frozen=True)
class Meaningless(Verdict):
    pairs: tuple[tuple[str, str, float], ...]
    kind: ClassVar[str] = "meaningless"

    def to_dict(self):
        return {
            "verdict": self.kind,
            "noncommuting_pairs": [
                {"left": a, "right": b, "commutator_norm": n} for a, b, n in self.pairs
            ],
        }


def assess(arg: Argument, tol: float | None = None) -> Verdict:
    """Judge an argument under the single framework rule.

    Arguments whose projectors do not all commute are Meaningless, with every
    offending pair reported. Otherwise the premises (no premises means the
    identity) must entail the conclusion inside the framework generated by
    the bound projectors.
    """
    tol = resolve_tol(tol)
    names = arg.atom_names()
    for n in names:
        if n not in arg.binding:
            raise UnboundAtomError(n)
    binding = {n: arg.binding[n] for n in names}
    d = check_binding(binding)

    pairs = _noncommuting_pairs(list(binding.items()), tol)
    if pairs:
        return Meaningless(tuple(pairs))

    fw = build_framework(list(binding.values()), tol, labels=names)
    premise = conjunction(arg.premises)
    m = quantum_eval(premise, binding) if premise is not None else Projector.identity(d)
    c = quantum_eval(arg.conclusion, binding)
    if leq(m, c, tol):
        return Valid()
    for i, a in enumerate(fw.atoms):
        if leq(a, m, tol) and frobenius_norm(c.matrix @ a.matrix) <= tol:
            assignment = {n: leq(a, binding[n], tol) for n in names}
            return Invalid(i, assignment, fw)
    raise ArithmeticError("no countermodel atom found for an invalid argument")


def assess_text(text: str, binding: Mapping[str, Projector], tol: float | None = None) -> Verdict:
    return assess(Argument.from_text(text, binding), tol)


# --- consistency audit ----------------------------------------------------

@dataclass(frozen=True)
class AuditReport:
    dimension: int
    trials: int
    seed: int
    violations: int
    valid: int
    invalid: int
    meaningless: int
    nonzero_premise_trials: int
    vacuous_trials: int

    def to_dict(self) -> dict:
        return {
            "dimension": self.dimension,
            "trials": self.trials,
            "seed": self.seed,
            "violations": self.violations,
            "valid": self.valid,
            "invalid": self.invalid,
            "meaningless": self.meaningless,
            "nonzero_premise_trials": self.nonzero_premise_trials,
            "vacuous_trials": self.vacuous_trials,
        }


AUDIT_NAMES = ("A", "B", "C")


def random_framework_binding(d: int, rng: np.random.Generator, names=AUDIT_NAMES):
    """Bind names to random members of a random framework.

    A Haar-random basis is partitioned into random blocks; each block spans
    one atom, and each name gets the sum of a random subset of atoms.
    Returns ``(atoms, binding, subsets)``.
    """
    u = numeric.random_unitary(d, rng)
    labels = rng.integers(0, rng.integers(1, d + 1), size=d)
    blocks = [np.flatnonzero(labels == k) for k in np.unique(labels)]
    atoms = [Projector.from_basis(u[:, b]) for b in blocks]
    binding, subsets = {}, {}
    for name in names:
        chosen = [k for k in range(len(atoms)) if rng.random() < 0.5]
        cols = np.concatenate([blocks[k] for k in chosen]) if chosen else np.array([], dtype=int)
        binding[name] = Projector.from_basis(u[:, cols])
        subsets[name] = frozenset(chosen)
    return atoms, binding, subsets


def consistency_audit(d: int, trials: int, seed: int, max_depth: int = 3) -> AuditReport:
    """Search for a contradiction derived inside one framework.

    Each trial draws a random framework, random premises and a random
    conclusion C, then assesses both "premises ⊢ C" and "premises ⊢ ¬C". A
    violation is both being Valid while the premise meet is nonzero. Trial
    ``t`` uses its own generator seeded by ``(seed, t)``, so reports do not
    depend on evaluation order.
    """
    if not 1 <= d <= 8:
        raise ValueError(f"audit dimension must be in 1..8, got {d}")
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    counts = dict(violations=0, valid=0, invalid=0, meaningless=0, nonzero=0, vacuous=0)
    for t in range(trials):
        rng = np.random.default_rng([seed, t])
        _, binding, _ = random_framework_binding(d, rng)
        premises = tuple(
            random_formula(rng, AUDIT_NAMES, max_depth) for _ in range(rng.integers(1, 4))
        )
        conclusion = random_formula(rng, AUDIT_NAMES, max_depth)
        v_pos = assess(Argument(premises, conclusion, binding))
        v_neg = assess(Argument(premises, Not(conclusion), binding))
        nonzero = not quantum_eval(conjunction(premises), binding).is_zero()
        counts["nonzero"] += nonzero
        for v in (v_pos, v_neg):
            counts[v.kind] += 1
        both = isinstance(v_pos, Valid) and isinstance(v_neg, Valid)
        if both and nonzero:
            counts["violations"] += 1
        elif both:
            counts["vacuous"] += 1
    return AuditReport(
        dimension=d, trials=trials, seed=seed,
        violations=counts["violations"], valid=counts["valid"], invalid=counts["invalid"],
        meaningless=counts["meaningless"], nonzero_premise_trials=counts["nonzero"],
        vacuous_trials=counts["vacuous"],
    )
