import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhl import numeric
from qhl.errors import CapacityError, DegenerateInputError, ShapeError, ValidationError
from qhl.numeric import (
    SIGMA_X,
    adjoint,
    eigh,
    frobenius_norm,
    matmul,
    normalize,
    tensor,
    trace,
)

I2 = np.eye(2)
ZP = np.array([[1, 0], [0, 0]])
XP = np.array([[1, 1], [1, 1]]) / 2


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, d):
    a = random_complex(rng, (d, d))
    return (a + a.conj().T) / 2


class TestMatmul:
    def test_identity(self):
        np.testing.assert_array_equal(matmul(I2, I2), I2)

    def test_z_times_x(self):
        # hand multiplication: [[1,0],[0,0]] @ ½[[1,1],[1,1]] = ½[[1,1],[0,0]]
        np.testing.assert_allclose(matmul(ZP, XP), [[0.5, 0.5], [0, 0]])

    def test_pauli_involution(self):
        np.testing.assert_array_equal(matmul(SIGMA_X, SIGMA_X), I2)

    def test_shape_error_names_shapes(self):
        with pytest.raises(ShapeError, match=r"\(2, 3\).*\(2, 2\)"):
            matmul(np.ones((2, 3)), I2)


class TestAdjoint:
    def test_hermitian_fixed_point(self):
        sy = np.array([[0, -1j], [1j, 0]])
        np.testing.assert_array_equal(adjoint(sy), sy)

    def test_transposition(self):
        np.testing.assert_array_equal(adjoint([[0, 1], [0, 0]]), [[0, 0], [1, 0]])

    def test_involution(self, rng):
        a = random_complex(rng, (3, 4))
        np.testing.assert_array_equal(adjoint(adjoint(a)), a)


class TestTensor:
    def test_identities(self):
        np.testing.assert_array_equal(tensor(I2, I2), np.eye(4))

    def test_rank_one_diagonal(self):
        np.testing.assert_array_equal(tensor(ZP, ZP), np.diag([1, 0, 0, 0]))

    def test_index_formula(self, rng):
        a, b = random_complex(rng, (2, 3)), random_complex(rng, (3, 2))
        t = tensor(a, b)
        for i, j, k, l in np.ndindex(2, 3, 3, 2):
            assert abs(t[i * 3 + k, j * 2 + l] - a[i, j] * b[k, l]) < 1e-14

    def test_orthogonal_labels_give_zero_product(self):
        lx, lz = np.diag([1, 0]), np.diag([0, 1])
        prod = tensor(XP, lx) @ tensor(ZP, lz)
        assert frobenius_norm(prod) == 0

    def test_capacity(self):
        with pytest.raises(CapacityError):
            tensor(np.eye(64), np.eye(65))

    def test_custom_cap(self):
        with pytest.raises(CapacityError):
            tensor(I2, I2, max_axis=3)


class TestEigh:
    def test_diagonal(self):
        dec = eigh(np.diag([3.0, 1.0, 2.0]))
        np.testing.assert_allclose(dec.eigenvalues, [1, 2, 3])

    def test_x_plus(self):
        dec = eigh(XP)
        np.testing.assert_allclose(dec.eigenvalues, [0, 1], atol=1e-15)
        v = dec.eigenvectors[:, 1]
        # eigenvector for 1 is (1,1)/√2 up to phase
        assert abs(abs(np.vdot(v, np.array([1, 1]) / np.sqrt(2))) - 1) < 1e-12

    def test_z_plus_x_sum(self):
        # characteristic polynomial λ² − 2λ + ½ = 0 → λ = 1 ∓ 1/√2
        dec = eigh(ZP + XP)
        np.testing.assert_allclose(dec.eigenvalues, [1 - 2**-0.5, 1 + 2**-0.5], atol=1e-14)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError, match="asymmetry 1"):
            eigh([[0, 1], [0, 0]])


def test_trace_norm_normalize():
    assert trace(np.eye(3)) == 3
    assert frobenius_norm(np.zeros((2, 2))) == 0
    np.testing.assert_allclose(normalize([1, 1]), [2**-0.5, 2**-0.5])


def test_degenerate_inputs():
    with pytest.raises(DegenerateInputError):
        normalize([0, 0])
    with pytest.raises(ShapeError):
        trace(np.ones((2, 3)))


def test_tolerance_context():
    base = numeric.get_tolerance()
    with numeric.tolerance(1e-6):
        assert numeric.get_tolerance() == 1e-6
    assert numeric.get_tolerance() == base
    with pytest.raises(ValueError):
        numeric.set_tolerance(0)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 8))
def test_eigh_reconstruction(seed, d):
    rng = np.random.default_rng(seed)
    a = random_hermitian(rng, d)
    w, v = eigh(a)
    assert np.all(np.diff(w) >= 0)
    recon = v @ np.diag(w) @ v.conj().T
    assert frobenius_norm(a - recon) <= 1e-10 * max(1, frobenius_norm(a))
    assert np.max(np.abs(v.conj().T @ v - np.eye(d))) <= 1e-10


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.sampled_from([2, 3]))
def test_mixed_product_law(seed, n):
    rng = np.random.default_rng(seed)
    a, b, c, d = (random_complex(rng, (n, n)) for _ in range(4))
    lhs = tensor(a, b) @ tensor(c, d)
    rhs = tensor(a @ c, b @ d)
    assert np.max(np.abs(lhs - rhs)) <= 1e-10 * max(1, np.max(np.abs(rhs)))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), m=st.integers(1, 5), n=st.integers(1, 5))
def test_trace_cyclic(seed, m, n):
    rng = np.random.default_rng(seed)
    a, b = random_complex(rng, (m, n)), random_complex(rng, (n, m))
    assert abs(trace(a @ b) - trace(b @ a)) <= 1e-10 * max(1, abs(trace(a @ b)))


def test_random_unitary_is_unitary(rng):
    u = numeric.random_unitary(5, rng)
    assert frobenius_norm(u.conj().T @ u - np.eye(5)) < 1e-12
