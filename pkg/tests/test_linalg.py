import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from qutrit_sic import hesse_sic
from qutrit_sic.errors import DomainError, UsageError
from qutrit_sic.linalg import (
    TOL_NUM,
    dagger,
    eigenvalues_herm3,
    projector,
    random_density_matrix,
    random_pure_state,
    random_unitary,
    trace_product,
)

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
cmat = st.builds(
    lambda re, im: re + 1j * im,
    arrays(np.float64, (3, 3), elements=finite),
    arrays(np.float64, (3, 3), elements=finite),
)


def herm(a):
    return 0.5 * (a + dagger(a))


def test_trace_product_identity():
    assert trace_product([np.eye(3)]) == pytest.approx(3.0)


def test_trace_product_idempotent_projector():
    p = projector(random_pure_state(3))
    assert abs(trace_product([p, p]) - 1.0) < TOL_NUM


def test_trace_product_sic_pair():
    sic = hesse_sic()
    assert abs(trace_product([sic[1], sic[2]]) - 0.25) < TOL_NUM


def test_trace_product_empty_is_usage_error():
    with pytest.raises(UsageError):
        trace_product([])


@settings(max_examples=200, deadline=None)
@given(cmat, cmat, cmat)
def test_trace_product_cyclic_and_adjoint(a, b, c):
    scale = 1 + max(np.abs(a).max(), np.abs(b).max(), np.abs(c).max()) ** 3
    assert abs(trace_product([a, b, c]) - trace_product([c, a, b])) <= 1e-12 * scale
    assert abs(trace_product([a, b]) - np.conj(trace_product([dagger(b), dagger(a)]))) <= 1e-12 * scale


@pytest.mark.parametrize(
    "h, expected",
    [
        (np.diag([1.0, 0, 0]), [1, 0, 0]),
        (np.eye(3) / 3, [1 / 3] * 3),
    ],
)
def test_eigenvalues_examples(h, expected):
    np.testing.assert_allclose(eigenvalues_herm3(h), expected, atol=TOL_NUM)


def test_eigenvalues_of_sic_projectors():
    for p in hesse_sic().projectors:
        np.testing.assert_allclose(eigenvalues_herm3(p), [1, 0, 0], atol=TOL_NUM)


def test_eigenvalues_reject_non_hermitian():
    with pytest.raises(DomainError):
        eigenvalues_herm3(np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], dtype=complex))


def test_eigenvalues_reject_wrong_shape():
    with pytest.raises(UsageError):
        eigenvalues_herm3(np.eye(2))


@settings(max_examples=300, deadline=None)
@given(cmat)
def test_eigenvalues_match_lapack(a):
    # LAPACK's Hermitian solver is the independent oracle.
    h = herm(a)
    lam = eigenvalues_herm3(h)
    ref = np.linalg.eigvalsh(h)[::-1]
    scale = 1 + np.abs(h).max()
    np.testing.assert_allclose(lam, ref, atol=1e-12 * scale)
    assert np.all(np.diff(lam) <= 0)


@pytest.mark.parametrize("spec", [[2, 2, -1], [0.5, 0.5, 0], [1, 1, 1 + 1e-9], [1 / 3, 1 / 3, 1 / 3]])
def test_eigenvalues_degenerate_pairs(spec):
    rng = np.random.default_rng(5)
    u = random_unitary(rng)
    h = u @ np.diag(spec).astype(complex) @ dagger(u)
    np.testing.assert_allclose(eigenvalues_herm3(h), sorted(spec, reverse=True), atol=1e-14)


def test_random_pure_state_deterministic_and_normalised():
    assert np.array_equal(random_pure_state(11), random_pure_state(11))
    assert not np.array_equal(random_pure_state(11), random_pure_state(12))
    for s in range(1, 101):
        v = random_pure_state(s)
        rho = np.outer(v, v.conj())
        assert abs(np.vdot(v, v) - 1) < TOL_NUM
        assert abs(np.trace(rho @ rho) - 1) < TOL_NUM
        assert abs(np.trace(rho @ rho @ rho) - 1) < TOL_NUM


def test_random_unitary_and_density_matrix():
    rng = np.random.default_rng(0)
    for _ in range(20):
        u = random_unitary(rng)
        np.testing.assert_allclose(u @ dagger(u), np.eye(3), atol=1e-14)
        rho = random_density_matrix(rng)
        assert abs(np.trace(rho) - 1) < 1e-14
        assert np.linalg.eigvalsh(rho).min() > -1e-14
    assert np.linalg.matrix_rank(random_density_matrix(rng, rank=1), tol=1e-10) == 1
