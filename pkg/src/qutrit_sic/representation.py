"""SIC probability vectors of qutrit states.

A state maps to ``p(i) = Tr(rho P_i)/3`` and back through
``rho = sum_i (4 p(i) - 1/3) P_i``.  Pure states are the vectors on the
sphere ``sum p^2 = 1/6`` that also satisfy a cubic condition built from
the real structure coefficients; for the canonical Hesse SIC that cubic
only involves the 12 lines of the affine plane of order 3.
"""

import itertools
import math

import numpy as np

from .errors import DomainError, UsageError
from .linalg import DIM, TOL_NUM, as_cmat3, hermiticity_residual, TOL_HERM

#: Tolerance for cubic purity contractions (sums of 729 products).
TOL_PURE = 1e-9


def _dim_of(p):
    d = math.isqrt(p.size)
    if d * d != p.size or p.ndim != 1:
        raise UsageError(f"probability vector length must be a square, got shape {p.shape}")
    return d


def check_probs(p, tol=TOL_NUM, nonneg=True):
    """Validate a probability vector and return it as a float array.

    Entries down to ``-tol`` are accepted so that boundary points that
    graze a simplex face are not rejected.
    """
    p = np.asarray(p, dtype=float)
    _dim_of(p)
    if not np.all(np.isfinite(p)):
        raise DomainError("probability vector has non-finite entries")
    total = p.sum()
    if abs(total - 1.0) > tol:
        raise DomainError(f"probabilities sum to {total!r}, not 1")
    if nonneg and p.min() < -tol:
        raise DomainError(f"negative probability {p.min()!r}")
    return p


def probs_from_state(sic, rho):
    """SIC probabilities ``Tr(rho P_i)/3`` of a Hermitian unit-trace operator."""
    rho = as_cmat3(rho)
    herm = hermiticity_residual(rho)
    if herm > TOL_HERM:
        raise DomainError(f"state is not Hermitian (residual {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) > TOL_NUM:
        raise DomainError(f"state trace is {tr.real:.12g}, not 1")
    return np.einsum("ab,iba->i", rho, np.asarray(sic.projectors)).real / DIM


def state_from_probs(sic, p):
    """Hermitian unit-trace operator with SIC probabilities ``p``.

    Positivity is not checked; classification belongs to
    :func:`qutrit_sic.boundary.classify_state`.
    """
    p = check_probs(p, nonneg=False)
    if p.size != DIM * DIM:
        raise UsageError(f"qutrit probability vectors have 9 entries, got {p.size}")
    weights = (DIM + 1) * p - 1.0 / DIM
    return np.einsum("i,iab->ab", weights, np.asarray(sic.projectors))


def hs_inner_from_probs(p1, p2):
    """``Tr(rho1 rho2) = d(d+1) p1.p2 - 1``; ``d`` is read off the vector length."""
    p1 = np.asarray(p1, dtype=float)
    p2 = np.asarray(p2, dtype=float)
    d = _dim_of(p1)
    return d * (d + 1) * float(p1 @ p2) - 1.0


def _real_struct(inv):
    s = getattr(inv, "S_real", inv)
    return np.asarray(s).real


def cubic_form(tensor, p):
    """``sum_ijk tensor[i,j,k] p(i) p(j) p(k)``."""
    return float(np.einsum("ijk,i,j,k->", tensor, p, p, p))


def purity_residuals(p, inv):
    """``(sum p^2 - 2/(d(d+1)), sum S~ppp - 4/(d(d+1)^2))``; both vanish for pure states.

    ``inv`` is an :class:`~qutrit_sic.invariants.InvariantTensors` or the
    real structure-coefficient array itself.
    """
    p = np.asarray(p, dtype=float)
    d = _dim_of(p)
    quad = float(p @ p) - 2.0 / (d * (d + 1))
    cubic = cubic_form(_real_struct(inv), p) - 4.0 / (d * (d + 1) ** 2)
    return quad, cubic


def triple_cubic_residual(p, inv):
    """``sum T~ppp - (d+7)/(d+1)^3``, the purity cubic in triple-product form."""
    p = np.asarray(p, dtype=float)
    d = _dim_of(p)
    t = np.asarray(getattr(inv, "T", inv)).real
    return cubic_form(t, p) - (d + 7.0) / (d + 1.0) ** 3


def distinct_cubic_residual(p, inv):
    """``sum p^3 / 2 + sum_{i,j,k distinct} S~ppp``; zero on pure states."""
    p = np.asarray(p, dtype=float)
    s = _real_struct(inv).copy()
    n = p.size
    idx = np.arange(n)
    s[idx, idx, :] = 0.0
    s[idx, :, idx] = 0.0
    s[:, idx, idx] = 0.0
    return 0.5 * float(np.sum(p**3)) + cubic_form(s, p)


_LINES = (
    (1, 2, 3), (4, 5, 6), (7, 8, 9),
    (1, 4, 7), (2, 5, 8), (3, 6, 9),
    (1, 5, 9), (2, 6, 7), (3, 4, 8),
    (1, 6, 8), (2, 4, 9), (3, 5, 7),
)


def affine_lines():
    """The 12 lines of the affine plane of order 3 on labels 1..9."""
    return _LINES


def lines_through(point):
    return tuple(line for line in _LINES if point in line)


def incidence_defects(lines=_LINES, points=range(1, 10)):
    """Violations of the affine-plane axioms; empty when all hold.

    Checks 12 lines of 3 points, every point on 4 lines, and every pair
    of distinct points on exactly one common line.
    """
    defects = []
    lines = [frozenset(line) for line in lines]
    if len(set(lines)) != 12:
        defects.append(f"expected 12 distinct lines, got {len(set(lines))}")
    for line in lines:
        if len(line) != 3:
            defects.append(f"line {sorted(line)} does not have 3 points")
    for pt in points:
        count = sum(pt in line for line in lines)
        if count != 4:
            defects.append(f"point {pt} is on {count} lines")
    for a, b in itertools.combinations(points, 2):
        common = sum(a in line and b in line for line in lines)
        if common != 1:
            defects.append(f"points {a},{b} share {common} lines")
    return defects


_LINE_IDX = np.array(_LINES) - 1


def line_cubic_sum(v, ordered=True):
    """Sum of ``v(i) v(j) v(k)`` over the lines; ``ordered`` counts all 6 orderings."""
    v = np.asarray(v, dtype=float)
    total = float(np.sum(np.prod(v[_LINE_IDX], axis=1)))
    return 6.0 * total if ordered else total


def hesse_pure_residual(p):
    """``(sum p^2 - 1/6, sum p^3 - (1/2) sum_Q ppp)`` with ``Q`` the ordered line triples."""
    p = np.asarray(p, dtype=float)
    quad = float(p @ p) - 1.0 / 6.0
    cubic = float(np.sum(p**3)) - 0.5 * line_cubic_sum(p)
    return quad, cubic
