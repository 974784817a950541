import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qutrit_sic.errors import DomainError
from qutrit_sic.invariants import index_generator, invariant_tensors
from qutrit_sic.linalg import TOL_NUM, eigenvalues_herm3, random_density_matrix, random_pure_state
from qutrit_sic.representation import (
    TOL_PURE,
    affine_lines,
    check_probs,
    distinct_cubic_residual,
    hesse_pure_residual,
    hs_inner_from_probs,
    incidence_defects,
    line_cubic_sum,
    lines_through,
    probs_from_state,
    purity_residuals,
    state_from_probs,
    triple_cubic_residual,
)
from qutrit_sic.sic import GENERIC_FAMILIES, FamilySpec, build_sic, hesse_sic

UNIFORM = np.full(9, 1 / 9)
PI1_PROBS = np.array([1 / 3] + [1 / 12] * 8)


def pure_probs(sic, seed):
    v = random_pure_state(seed)
    return probs_from_state(sic, np.outer(v, v.conj()))


def test_probs_examples():
    sic = hesse_sic()
    np.testing.assert_allclose(probs_from_state(sic, np.eye(3) / 3), UNIFORM, atol=TOL_NUM)
    p = probs_from_state(sic, sic[1])
    np.testing.assert_allclose(p, PI1_PROBS, atol=TOL_NUM)
    assert abs(p @ p - 1 / 6) < TOL_NUM


def test_probs_reject_bad_states():
    sic = hesse_sic()
    with pytest.raises(DomainError):
        probs_from_state(sic, np.diag([0.5, 0.6, 0]))
    with pytest.raises(DomainError):
        probs_from_state(sic, np.array([[0.5, 0.1, 0], [0, 0.5, 0], [0, 0, 0]]))


def test_state_from_probs_examples():
    sic = hesse_sic()
    np.testing.assert_allclose(state_from_probs(sic, UNIFORM), np.eye(3) / 3, atol=TOL_NUM)
    vertex = state_from_probs(sic, np.eye(9)[0])
    assert eigenvalues_herm3(vertex)[-1] < -0.1
    with pytest.raises(DomainError):
        state_from_probs(sic, np.full(9, 0.2))


@pytest.mark.parametrize("spec", [FamilySpec.hesse(), FamilySpec.generic(3, -1, 0.3), FamilySpec.pi6(2)])
def test_round_trip(spec):
    sic = build_sic(spec)
    rng = np.random.default_rng(9)
    for _ in range(30):
        rho = random_density_matrix(rng)
        p = probs_from_state(sic, rho)
        assert abs(p.sum() - 1) < TOL_NUM
        assert p.min() >= -TOL_NUM
        assert p @ p <= 1 / 6 + TOL_NUM
        np.testing.assert_allclose(state_from_probs(sic, p), rho, atol=TOL_NUM)


def test_check_probs():
    check_probs(np.array([1.0] + [0.0] * 8))
    with pytest.raises(DomainError):
        check_probs(np.array([1.1, -0.1] + [0.0] * 7))
    with pytest.raises(DomainError):
        check_probs(np.array([np.nan] + [0.0] * 8))


def test_hs_inner_examples():
    sic = hesse_sic()
    assert hs_inner_from_probs(UNIFORM, UNIFORM) == pytest.approx(1 / 3, abs=TOL_NUM)
    p = pure_probs(sic, 4)
    assert hs_inner_from_probs(p, p) == pytest.approx(1, abs=TOL_NUM)
    e0, e1 = np.eye(3)[0], np.eye(3)[1]
    p0 = probs_from_state(sic, np.outer(e0, e0))
    p1 = probs_from_state(sic, np.outer(e1, e1))
    assert hs_inner_from_probs(p0, p1) == pytest.approx(0, abs=TOL_NUM)
    assert p0 @ p1 == pytest.approx(1 / 12, abs=TOL_NUM)


def test_hs_inner_matches_trace():
    sic = build_sic(FamilySpec.generic(1, 1, 0.4))
    rng = np.random.default_rng(1)
    for _ in range(20):
        a, b = random_density_matrix(rng), random_density_matrix(rng)
        pa, pb = probs_from_state(sic, a), probs_from_state(sic, b)
        assert hs_inner_from_probs(pa, pb) == pytest.approx(np.trace(a @ b).real, abs=TOL_NUM)


@pytest.mark.parametrize("family", GENERIC_FAMILIES)
def test_pure_state_conditions_every_family(family):
    sic = build_sic(FamilySpec.generic(*family, 0.27))
    inv = invariant_tensors(sic)
    for seed in range(100):
        p = pure_probs(sic, seed)
        quad, cubic = purity_residuals(p, inv)
        assert abs(quad) < TOL_PURE
        assert abs(cubic) < TOL_PURE
        assert abs(triple_cubic_residual(p, inv)) < TOL_PURE
        assert abs(distinct_cubic_residual(p, inv)) < TOL_PURE


def test_purity_residual_examples():
    sic = hesse_sic()
    inv = invariant_tensors(sic)
    quad, cubic = purity_residuals(UNIFORM, inv)
    assert quad == pytest.approx(-1 / 18, abs=1e-15)
    assert cubic < 0
    assert cubic == pytest.approx(inv.S_real.sum() / 729 - 1 / 12, abs=1e-15)
    np.testing.assert_allclose(purity_residuals(PI1_PROBS, inv), (0, 0), atol=TOL_NUM)


def test_mixed_states_are_not_pure():
    sic = hesse_sic()
    inv = invariant_tensors(sic)
    rho = np.diag([0.5, 0.5, 0.0])
    quad, _ = purity_residuals(probs_from_state(sic, rho), inv)
    assert quad < -0.01


def test_affine_plane():
    lines = affine_lines()
    assert len(lines) == 12
    assert len(lines_through(1)) == 4
    assert incidence_defects() == []
    rows = {frozenset(r) for r in index_generator((1, 1)).tolist()}
    assert {frozenset(line) for line in lines} & rows == {frozenset(s) for s in [(1, 5, 9), (2, 6, 7), (3, 4, 8)]}


def test_affine_lines_are_generator_rows_and_columns():
    # Each line is a row or a column of some generator grid.
    cells = set()
    for family in GENERIC_FAMILIES:
        g = index_generator(family)
        cells |= {frozenset(r) for r in g.tolist()} | {frozenset(c) for c in g.T.tolist()}
    assert {frozenset(line) for line in affine_lines()} <= cells


def test_incidence_defects_detects_broken_plane():
    broken = list(affine_lines())
    broken[0] = (1, 2, 4)
    assert incidence_defects(broken)


def test_line_cubic_sum_ordered():
    v = np.arange(1.0, 10.0)
    unordered = sum(v[a - 1] * v[b - 1] * v[c - 1] for a, b, c in affine_lines())
    ordered = sum(
        v[a - 1] * v[b - 1] * v[c - 1]
        for line in affine_lines()
        for a, b, c in itertools.permutations(line)
    )
    assert line_cubic_sum(v, ordered=False) == pytest.approx(unordered)
    assert line_cubic_sum(v) == pytest.approx(ordered)


def test_hesse_pure_residual_examples():
    quad, cubic = hesse_pure_residual(PI1_PROBS)
    assert abs(quad) < 1e-15 and abs(cubic) < 1e-15
    assert np.sum(PI1_PROBS**3) == pytest.approx(1 / 24)
    _, cubic = hesse_pure_residual(UNIFORM)
    assert cubic == pytest.approx(9 / 729 - 3 * 12 / 729, abs=1e-15)
    sic = hesse_sic()
    for seed in range(100):
        quad, cubic = hesse_pure_residual(pure_probs(sic, seed))
        assert abs(quad) < TOL_PURE and abs(cubic) < TOL_PURE


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=0, max_value=2**32 - 1))
def test_hesse_quadratic_tracks_purity(seed):
    # The quadratic residual is (Tr rho^2 - 1)/12 for any state.
    rho = random_density_matrix(np.random.default_rng(seed))
    p = probs_from_state(hesse_sic(), rho)
    quad, _ = hesse_pure_residual(p)
    assert quad == pytest.approx((np.trace(rho @ rho).real - 1) / 12, abs=1e-12)
