"""Orthogonal maps between the probability vectors of two SICs.

For SICs ``P'`` and ``P`` the matrix ``R[i, j] = Tr(P'_i Q_j)``, with
``Q`` the dual basis of ``P``, satisfies ``P'_i = sum_j R[i, j] P_j`` and
carries probability vectors as ``p' = R @ p``.  Relative to the
canonical Hesse SIC every generic family has the closed form
``P^T R(t) P`` with ``R(t)`` block-circulant and ``P`` a fixed
permutation matrix.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import DIM, OMEGA
from .sic import FamilySpec, _check_family, build_sic, hesse_sic

N = DIM * DIM


def dual_basis(sic):
    """``Q_i = (4 P_i - I)/3``, so that ``Tr(Q_i P_j) = delta_ij``."""
    p = np.asarray(sic.projectors)
    return ((DIM + 1) * p - np.eye(DIM)) / DIM


@dataclass(frozen=True, eq=False)
class RotationMatrix9:
    matrix: np.ndarray
    from_spec: FamilySpec
    to_spec: FamilySpec

    def __post_init__(self):
        m = np.array(self.matrix, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __matmul__(self, other):
        """Composition: ``(B->C) @ (A->B)`` is ``A->C``."""
        return RotationMatrix9(self.matrix @ other.matrix, other.from_spec, self.to_spec)

    @property
    def T(self):
        return RotationMatrix9(self.matrix.T, self.to_spec, self.from_spec)

    def orthogonality_residual(self):
        return float(np.max(np.abs(self.matrix.T @ self.matrix - np.eye(N))))

    def row_sum_residual(self):
        return float(np.max(np.abs(self.matrix.sum(axis=1) - 1.0)))

    def column_sum_residual(self):
        return float(np.max(np.abs(self.matrix.sum(axis=0) - 1.0)))

    def det(self):
        return float(np.linalg.det(self.matrix))


def rotation_between(source, target):
    """Rotation taking ``source``'s projectors (and probabilities) to ``target``'s."""
    q = dual_basis(source)
    r = np.einsum("iab,jba->ij", np.asarray(target.projectors), q).real
    return RotationMatrix9(r, source.spec, target.spec)


def relative_rotation(a, c):
    """``R(A->C) = R(Hesse->C) @ R(Hesse->A)^T``, composing through the Hesse SIC."""
    hesse = hesse_sic()
    return rotation_between(hesse, c) @ rotation_between(hesse, a).T


_PERMUTATIONS = {
    (0, 1): (1, 2, 3, 4, 5, 6, 7, 8, 9),
    (0, -1): (1, 3, 2, 4, 6, 5, 7, 9, 8),
    (1, 1): (1, 5, 9, 2, 6, 7, 3, 4, 8),
    (1, -1): (1, 9, 5, 2, 7, 6, 3, 8, 4),
    (2, 1): (1, 6, 8, 2, 4, 9, 3, 5, 7),
    (2, -1): (1, 8, 6, 2, 9, 4, 3, 7, 5),
    (3, 1): (1, 4, 7, 2, 5, 8, 3, 6, 9),
    (3, -1): (1, 7, 4, 2, 8, 5, 3, 9, 6),
}


def family_permutation(family):
    """Images ``(p(1), ..., p(9))`` of the labelling permutation of a family."""
    return _PERMUTATIONS[_check_family(family)]


def permutation_matrix(family):
    """``P[i, j] = 1`` iff ``j = p(i)``."""
    images = np.array(family_permutation(family)) - 1
    m = np.zeros((N, N))
    m[np.arange(N), images] = 1.0
    return m


def a_func(t):
    return (1.0 + 2.0 * math.cos(2.0 * t)) / 3.0


def block_A(t):
    """Circulant 3x3 block with first row ``(a(t), a(t - pi/3), a(t + pi/3))``."""
    row = np.array([a_func(t), a_func(t - math.pi / 3), a_func(t + math.pi / 3)])
    return np.array([np.roll(row, s) for s in range(DIM)])


def block_R(t):
    """Block-diagonal 9x9 matrix with three copies of :func:`block_A`."""
    return np.kron(np.eye(DIM), block_A(t))


def circulant_eigenvalues(t):
    """Eigenvalues of ``A(t)`` for ``l = -1, 0, 1`` from the circulant formula."""
    a0, am, ap = a_func(t), a_func(t - math.pi / 3), a_func(t + math.pi / 3)
    return np.array([a0 + OMEGA**l * am + OMEGA ** (-l) * ap for l in (-1, 0, 1)])


def closed_form_rotation(family, t):
    """``P^T R(t) P`` for a generic family: the rotation from the canonical Hesse SIC."""
    p = permutation_matrix(family)
    eta, sign = _check_family(family)
    return RotationMatrix9(p.T @ block_R(t) @ p, FamilySpec.hesse(), FamilySpec.generic(eta, sign, t))


def family_rotation(spec):
    """Trace-constructed rotation from the canonical Hesse SIC to ``spec``'s SIC."""
    return rotation_between(hesse_sic(), build_sic(spec))


def apply_rotation(r, p):
    """``p' = R @ p``."""
    m = r.matrix if isinstance(r, RotationMatrix9) else np.asarray(r, dtype=float)
    return m @ np.asarray(p, dtype=float)
