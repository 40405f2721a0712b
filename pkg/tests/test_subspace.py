import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import (
    intersection_projector,
    random_commuting_family,
    random_projector_any_rank,
    union_projector,
)
from qhl.errors import ShapeError, ValidationError
from qhl.numeric import frobenius_norm
from qhl.subspace import (
    Projector,
    SpinAxis,
    common_eigenstate_exists,
    commutator_norm,
    commutes,
    complement,
    direct_sum,
    join,
    leq,
    meet,
    projector_from_state,
    purify,
    spin_projector,
)

TOL = 1e-9
seeds = st.integers(0, 2**32 - 1)
dims = st.sampled_from([2, 3, 4, 6])


def close(p, q, tol=TOL):
    a = p.matrix if isinstance(p, Projector) else p
    b = q.matrix if isinstance(q, Projector) else q
    return frobenius_norm(a - b) <= tol


class TestConstruction:
    def test_from_state(self):
        assert close(projector_from_state([1, 0]), [[1, 0], [0, 0]])
        assert close(projector_from_state([1, 1]), np.full((2, 2), 0.5))

    def test_ghz_outer_product(self):
        v = np.zeros(8)
        v[[0, 7]] = 1
        p = projector_from_state(v)
        expected = np.zeros((8, 8))
        # amplitudes are 1/√2 at indices 0 and 7, so the corner entries are ½
        expected[np.ix_([0, 7], [0, 7])] = 0.5
        assert p.rank == 1
        assert close(p, expected)

    def test_spin_projectors(self):
        assert close(spin_projector("z", 1), [[1, 0], [0, 0]])
        assert close(spin_projector("x", 1), np.full((2, 2), 0.5))
        assert close(spin_projector("y", 1), np.array([[1, -1j], [1j, 1]]) / 2)
        assert close(spin_projector(SpinAxis.of(0, 0, -3), 1), spin_projector("z", -1))

    def test_rejects_non_projector(self):
        with pytest.raises(ValidationError, match="idempotent"):
            Projector(np.diag([1.0, 0.5]))
        with pytest.raises(ValidationError, match="Hermitian"):
            Projector([[0, 1], [0, 0]])

    def test_purify_snaps(self):
        noisy = np.diag([1.0, 0.0]) + 1e-6
        p = purify(noisy)
        assert p.rank == 1
        assert close(p, np.diag([1, 0]), 1e-5)

    def test_immutable(self, zp):
        with pytest.raises(ValueError):
            zp.matrix[0, 0] = 2

    def test_rank(self):
        assert Projector(np.eye(3)).rank == 3
        assert Projector.zero(4).rank == 0


class TestLattice:
    def test_complement(self, zp, zm):
        assert close(complement(zp), zm)
        assert complement(Projector.identity(2)).is_zero()
        assert complement(zp).rank == 1

    def test_meet_examples(self, zp, xp):
        assert close(meet(zp, zp), zp)
        # eigenvalues of [z+]+[x+] are 1±1/√2, neither near 2
        assert meet(zp, xp).is_zero()

    def test_join_examples(self, zp, zm, xp):
        assert close(join(zp, zm), np.eye(2))
        assert close(join(zp, xp), np.eye(2))

    def test_leq(self, zp, xp):
        assert not leq(zp, xp)
        assert leq(Projector.zero(2), xp)
        assert leq(xp, Projector.identity(2))

    def test_commutator_norm(self, zp, zm, xp):
        assert commutes(zp, zm)
        # [z+][x+] − [x+][z+] = ½[[0,1],[−1,0]], Frobenius norm 1/√2
        assert abs(commutator_norm(zp, xp) - 2**-0.5) < 1e-12

    def test_operators(self, zp, xp):
        assert close(~zp, complement(zp))
        assert close(zp & xp, meet(zp, xp))
        assert close(zp | xp, join(zp, xp))

    def test_dimension_mismatch(self, zp):
        for op in (meet, join, leq, commutes, commutator_norm, common_eigenstate_exists):
            with pytest.raises(ShapeError):
                op(zp, Projector.identity(3))

    def test_distributivity_failure(self, zp, xp, xm):
        left = meet(zp, join(xp, xm))
        right = join(meet(zp, xp), meet(zp, xm))
        assert close(left, zp)
        assert right.is_zero()


class TestCommonEigenstate:
    def test_qubit_pair_has_none(self, zp, xp):
        assert not common_eigenstate_exists(zp, xp)

    def test_dimension_three_witness(self, zp, xp):
        p = Projector(direct_sum(zp, np.zeros((1, 1))))
        q = Projector(direct_sum(xp, np.zeros((1, 1))))
        assert not commutes(p, q)
        found = common_eigenstate_exists(p, q)
        assert found.exists
        w = found.witness
        assert abs(abs(w[2]) - 1) < 1e-12
        assert np.linalg.norm(p.matrix @ w) < 1e-12 and np.linalg.norm(q.matrix @ w) < 1e-12

    def test_self(self, xp):
        found = common_eigenstate_exists(xp, xp)
        assert found.exists
        assert np.linalg.norm(xp.matrix @ found.witness - found.witness) < 1e-12


@settings(max_examples=60, deadline=None)
@given(seed=seeds, d=dims)
def test_orthocomplement_laws(seed, d):
    rng = np.random.default_rng(seed)
    p = random_projector_any_rank(rng, d)
    assert close(complement(complement(p)), p)
    assert meet(p, complement(p)).is_zero()
    assert close(join(p, complement(p)), np.eye(d))
    assert close(meet(p, Projector.identity(d)), p)
    assert close(join(p, Projector.zero(d)), p)


@settings(max_examples=60, deadline=None)
@given(seed=seeds, d=dims)
def test_meet_join_match_span_oracle(seed, d):
    rng = np.random.default_rng(seed)
    p, q = random_projector_any_rank(rng, d), random_projector_any_rank(rng, d)
    assert close(meet(p, q), intersection_projector(p, q))
    assert close(join(p, q), union_projector(p, q))
    assert close(complement(join(p, q)), meet(complement(p), complement(q)))


@settings(max_examples=60, deadline=None)
@given(seed=seeds, d=dims)
def test_commuting_reduction(seed, d):
    rng = np.random.default_rng(seed)
    p, q = random_commuting_family(rng, d, 2)
    assert commutes(p, q)
    pq = p.matrix @ q.matrix
    assert close(meet(p, q), pq)
    assert close(join(p, q), p.matrix + q.matrix - pq)
    assert leq(meet(p, q), p)


@settings(max_examples=60, deadline=None)
@given(seed=seeds, d=dims)
def test_distributive_on_commuting_triples(seed, d):
    rng = np.random.default_rng(seed)
    a, b, c = random_commuting_family(rng, d, 3)
    assert close(meet(a, join(b, c)), join(meet(a, b), meet(a, c)))


@settings(max_examples=30, deadline=None)
@given(seed=seeds, d=st.integers(2, 5))
def test_disjoint_tensor_factors_commute(seed, d):
    rng = np.random.default_rng(seed)
    p, q = random_projector_any_rank(rng, d), random_projector_any_rank(rng, 2)
    a = Projector(np.kron(p.matrix, np.eye(2)))
    b = Projector(np.kron(np.eye(d), q.matrix))
    assert commutes(a, b)
