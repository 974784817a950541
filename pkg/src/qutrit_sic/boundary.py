"""Boundary of the qutrit body in the canonical Hesse SIC representation.

A probability vector is written in polar form ``p = 1/9 + r n`` about the
maximally mixed state, with ``sum n = 0`` and ``|n| = 1``.  The boundary
point in direction ``n`` is the smallest positive root of
``4 r^3 F(n) - r^2 + 1/54 = 0``, where ``F`` is a cubic form built from the
lines of the affine plane of order 3.
"""

import cmath
import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, UsageError
from .linalg import DIM, TOL_NUM, eigenvalues_herm3
from .representation import TOL_PURE, check_probs, line_cubic_sum, probs_from_state
from .sic import displacement, hesse_sic

N = DIM * DIM
UNIFORM = 1.0 / N

#: Tolerance for the equality tests of the trace-moment classification.
TOL_CLASS = 1e-8
#: Below this ``|F|`` the exact ``F = 0`` radius is used.
F_ZERO = 1e-12
F_MAX = 1.0 / math.sqrt(2.0)
# 4F^2 - 2 within a few ulps of zero: F is the endpoint to double precision.
DISC_SNAP = 4e-15

R_MIN = 1.0 / (6.0 * math.sqrt(2.0))
R_MID = 1.0 / (3.0 * math.sqrt(6.0))
R_MAX = 1.0 / (3.0 * math.sqrt(2.0))


class StateClass(enum.Enum):
    INVALID = "invalid"
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    PURE = "pure"


def trace_moments_hesse(p):
    """``(Tr rho^2, Tr rho^3)`` from canonical-Hesse SIC probabilities.

    ``Tr rho^2 = 12 sum p^2 - 1`` and
    ``Tr rho^3 = 1 + 24 sum p^3 - 12 sum_Q ppp`` over ordered line triples.
    """
    p = np.asarray(p, dtype=float)
    t2 = 12.0 * float(p @ p) - 1.0
    t3 = 1.0 + 24.0 * float(np.sum(p**3)) - 12.0 * line_cubic_sum(p)
    return t2, t3


def matrix_moments(rho):
    """``(Tr rho, Tr rho^2, Tr rho^3)`` computed directly."""
    rho = np.asarray(rho, dtype=complex)
    rho2 = rho @ rho
    return float(np.trace(rho).real), float(np.trace(rho2).real), float(np.trace(rho2 @ rho).real)


def classify_state(t1, t2, t3, tol=TOL_CLASS):
    """Classify a Hermitian operator from its first three trace moments.

    A density operator has unit trace, ``Tr rho^2 <= 1`` and
    ``3 Tr rho^2 - 2 Tr rho^3 <= 1``; equality in the last condition puts
    it on the boundary, and additionally ``Tr rho^2 = 1`` makes it pure.
    """
    det_form = 3.0 * t2 - 2.0 * t3
    if abs(t1 - 1.0) > tol or t2 > 1.0 + tol or det_form > 1.0 + tol:
        return StateClass.INVALID
    if abs(det_form - 1.0) <= tol:
        if abs(t2 - 1.0) <= tol:
            return StateClass.PURE
        return StateClass.BOUNDARY
    return StateClass.INTERIOR


def classify_by_eigenvalues(rho, tol=TOL_CLASS):
    """Classification from the spectrum, independent of the trace moments."""
    lam = eigenvalues_herm3(rho)
    if abs(lam.sum() - 1.0) > tol or lam[2] < -tol:
        return StateClass.INVALID
    if abs(lam[2]) <= tol:
        if abs(lam[1]) <= tol:
            return StateClass.PURE
        return StateClass.BOUNDARY
    return StateClass.INTERIOR


def check_direction(n, tol=TOL_NUM):
    n = np.asarray(n, dtype=float)
    if n.shape != (N,):
        raise UsageError(f"direction vectors have 9 entries, got shape {n.shape}")
    if abs(n.sum()) > tol or abs(n @ n - 1.0) > tol:
        raise DomainError(
            f"not a direction vector: sum {n.sum():.3e}, squared norm {n @ n:.12g}"
        )
    return n


def polar_decompose(p):
    """``(r, n)`` with ``p = 1/9 + r n``.

    Raises
    ------
    DomainError
        If ``p`` is the uniform vector, where the direction is undefined.
    """
    p = check_probs(p, nonneg=False)
    offset = p - UNIFORM
    r = float(np.linalg.norm(offset))
    if r <= TOL_NUM:
        raise DomainError("uniform vector (maximally mixed state) has no direction")
    return r, offset / r


def f_of_direction(n):
    """``F(n) = sum n^3 - (1/2) sum_Q n(i) n(j) n(k)`` over ordered line triples."""
    n = np.asarray(n, dtype=float)
    return float(np.sum(n**3)) - 0.5 * line_cubic_sum(n)


def f_from_eigenvalues(alpha, beta):
    """``F`` of the direction of a state with eigenvalues ``alpha, beta, 1-alpha-beta``.

    ``F = sqrt(3) (2/9 - f1 + f2) / (f1 - 1/3)^(3/2)`` with ``f1``, ``f2``
    the second and third power sums of the eigenvalues.
    """
    lam = np.array([alpha, beta, 1.0 - alpha - beta], dtype=float)
    f1 = float(np.sum(lam**2))
    f2 = float(np.sum(lam**3))
    spread = f1 - 1.0 / 3.0
    if spread <= TOL_NUM:
        raise DomainError("F is undefined for the maximally mixed state")
    return math.sqrt(3.0) * (2.0 / 9.0 - f1 + f2) / spread**1.5


def polar_cubic_residual(r, F):
    return 4.0 * r**3 * F - r**2 + 1.0 / 54.0


def _clamp_f(F, tol=TOL_NUM):
    F = float(F)
    if abs(F) > F_MAX + tol:
        raise DomainError(f"|F| = {abs(F):.12g} exceeds 1/sqrt(2); no state in that direction")
    return max(-F_MAX, min(F_MAX, F))


def g_cubed(F):
    """``1 - 4F^2 + 2F sqrt(4F^2 - 2)``, of unit modulus on ``|F| <= 1/sqrt(2)``."""
    F = _clamp_f(F)
    disc = 4.0 * F * F - 2.0
    if disc > -DISC_SNAP:
        disc = 0.0
    return 1.0 - 4.0 * F * F + 2.0 * F * cmath.sqrt(disc)


def boundary_radius(F):
    """Distance from the maximally mixed state to the boundary along a direction with ``F``.

    Closed-form smallest positive root of ``4 r^3 F - r^2 + 1/54 = 0``:
    ``r = (1 + g / w^s + w^s / g) / (12 F)`` with ``s = sgn F``,
    ``w = exp(2 pi i/3)`` and ``g`` the cube root of :func:`g_cubed` with the
    smallest positive argument.

    Raises
    ------
    DomainError
        If ``|F|`` exceeds ``1/sqrt(2)`` by more than the tolerance.
    """
    F = _clamp_f(F)
    if abs(F) < F_ZERO:
        return R_MID
    theta0 = cmath.phase(g_cubed(F))
    theta = theta0 % (2.0 * math.pi)
    arg = min(a for a in ((theta + 2.0 * math.pi * k) / 3.0 for k in range(3)) if a > 0.0)
    # With g = exp(i arg) and psi = arg - s 2pi/3 the numerator is 1 + 2 cos(psi)
    # = sin(3 psi/2) / sin(psi/2), and sin(3 psi/2) = -sin(3 arg/2).  Since
    # 3 arg = theta0 + 2 pi m, that sine is (-1)^m sin(theta0/2): O(F) with full
    # relative accuracy, so nothing cancels as F -> 0.  |sin(psi/2)| >= 1/2.
    m = round((3.0 * arg - theta0) / (2.0 * math.pi))
    half = math.sin(0.5 * theta0) * (-1.0) ** m
    psi = arg - (2.0 * math.pi / 3.0 if F > 0 else -2.0 * math.pi / 3.0)
    return -half / (12.0 * F * math.sin(0.5 * psi))


def radius_by_root_finding(F):
    """Smallest positive root of the polar cubic by bracketed root finding.

    Independent of the closed form; used as its oracle.  For ``F > 0`` the
    cubic decreases on ``(0, 1/(6F))`` and the root is bracketed there; for
    ``F < 0`` it decreases on all of ``r > 0``.  At ``F = 1/sqrt(2)`` the
    root is double and sits at ``1/(6F)``; values of ``F`` within a few ulps
    of that endpoint are snapped to it.
    """
    F = float(F)
    if abs(F) > F_MAX + TOL_NUM:
        raise DomainError(f"|F| = {abs(F):.12g} exceeds 1/sqrt(2)")
    if F == 0.0:
        return math.sqrt(1.0 / 54.0)
    if F > 0:
        r_turn = 1.0 / (6.0 * F)
        if abs(4.0 * F * F - 2.0) < DISC_SNAP:
            return r_turn
        # Every root is below 1/(3 sqrt 2), and the cubic is negative at 1 whenever 1/(6F) > 1.
        r_hi = min(r_turn, 1.0)
        if polar_cubic_residual(r_hi, F) >= 0.0:
            return r_hi
        return brentq(polar_cubic_residual, 0.0, r_hi, args=(F,), xtol=1e-16, rtol=4 * np.finfo(float).eps)
    return brentq(polar_cubic_residual, 0.0, 1.0, args=(F,), xtol=1e-16, rtol=4 * np.finfo(float).eps)


@dataclass(frozen=True, eq=False)
class BoundarySolution:
    n: np.ndarray
    F: float
    r: float

    @property
    def probs(self):
        return UNIFORM + self.r * self.n


def boundary_state(n):
    """Boundary point along direction ``n``: ``F(n)``, its radius, and ``1/9 + r n``."""
    n = check_direction(n)
    F = f_of_direction(n)
    return BoundarySolution(n, F, boundary_radius(F))


def classify_probs_hesse(p, tol=TOL_CLASS):
    t2, t3 = trace_moments_hesse(p)
    return classify_state(float(np.sum(p)), t2, t3, tol)


def random_direction(rng):
    """Gaussian 9-vector projected onto ``sum n = 0`` and normalised."""
    g = rng.standard_normal(N)
    g -= g.mean()
    return g / np.linalg.norm(g)


def sample_directions(count, seed, max_tries=None):
    """``count`` random directions with ``|F| <= 1/sqrt(2)`` and the number rejected."""
    rng = np.random.default_rng(seed)
    max_tries = max_tries or 100 * max(count, 1)
    out, rejected = [], 0
    while len(out) < count:
        if len(out) + rejected >= max_tries:
            raise DomainError(f"rejection sampling gave up after {rejected} rejections")
        n = random_direction(rng)
        if abs(f_of_direction(n)) <= F_MAX + TOL_NUM:
            out.append(n)
        else:
            rejected += 1
    return out, rejected


# Face of the simplex opposite label 9: centre (1/8, ..., 1/8, 0).
FACE_LABEL = 9
FACE_CENTRE = np.array([1.0 / 8.0] * 8 + [0.0])
_FACE_PAIRS = ((1, 5), (2, 4), (3, 6), (7, 8))


def check_face_direction(m, tol=TOL_NUM):
    m = np.asarray(m, dtype=float)
    if m.shape != (N,) or abs(m[FACE_LABEL - 1]) > tol:
        raise DomainError("face directions have 9 entries with m(9) = 0")
    if abs(m.sum()) > tol or abs(m @ m - 1.0) > tol:
        raise DomainError(f"not a face direction: sum {m.sum():.3e}, squared norm {m @ m:.12g}")
    return m


def face_decompose(p, tol=TOL_NUM):
    """``(s, m)`` with ``p = c + s m`` about the face centre ``c``; needs ``p(9) = 0``.

    ``s`` is returned non-negative; at the centre ``m`` is zero.
    """
    p = check_probs(p, nonneg=False)
    if abs(p[FACE_LABEL - 1]) > tol:
        raise DomainError(f"p(9) = {p[FACE_LABEL - 1]:.3e}; not on the face")
    offset = p - FACE_CENTRE
    offset[FACE_LABEL - 1] = 0.0
    s = float(np.linalg.norm(offset))
    if s <= tol:
        return 0.0, np.zeros(N)
    return s, offset / s


def face_phi(m):
    """Sum of squared pair sums over the four lines through label 9."""
    m = np.asarray(m, dtype=float)
    return float(sum((m[a - 1] + m[b - 1]) ** 2 for a, b in _FACE_PAIRS))


@dataclass(frozen=True)
class FaceReport:
    on_face_state: bool
    pure_residual: float
    relation_residual: float = field(default=0.0)


def face_conditions(s, m):
    """Whether ``c + s m`` is a state, and the residual of the pure-state relation.

    For ``s != 0`` the point is a state iff ``s^2 <= 1/24`` and
    ``F(m) = 3 (2 - Phi(m)) / (16 s)``; the pure states on the face satisfy
    ``F(m) = (3 sqrt(6)/8) (2 - Phi(m))``.
    """
    m = check_face_direction(m)
    phi = face_phi(m)
    F = f_of_direction(m)
    pure_residual = F - 3.0 * math.sqrt(6.0) / 8.0 * (2.0 - phi)
    if abs(s) <= TOL_NUM:
        return FaceReport(True, pure_residual, 0.0)
    relation = F - 3.0 / (16.0 * s) * (2.0 - phi)
    on_face = s * s <= 1.0 / 24.0 + TOL_NUM and abs(relation) <= TOL_PURE
    return FaceReport(on_face, pure_residual, relation)


def face_pure_probs(rng):
    """Hesse probabilities of a random pure state orthogonal to SIC vector 9."""
    sic = hesse_sic()
    m, n = divmod(FACE_LABEL - 1, DIM)
    psi = displacement(m, n) @ sic.fiducial
    v = rng.standard_normal(DIM) + 1j * rng.standard_normal(DIM)
    v -= np.vdot(psi, v) * psi
    v /= np.linalg.norm(v)
    p = probs_from_state(sic, np.outer(v, v.conj()))
    p[FACE_LABEL - 1] = 0.0
    return p


def face_report_rows(count, seed):
    """Face analysis of ``count`` random pure face states followed by the face centre.

    Rows are ``(label, s, s^2 - 1/24, pure_residual, on_face_state)``; the
    centre row has label ``centre``.
    """
    rng = np.random.default_rng(seed)
    rows = []
    for k in range(count):
        s, m = face_decompose(face_pure_probs(rng))
        rep = face_conditions(s, m)
        rows.append((k + 1, s, s * s - 1.0 / 24.0, rep.pure_residual, rep.on_face_state))
    rows.append(("centre", 0.0, -1.0 / 24.0, 0.0, True))
    return rows


def _symmetric_grid(lo, hi, count):
    # Exactly antisymmetric about the midpoint, with the midpoint always present.
    count = max(int(count), 2)
    mid, half = 0.5 * (lo + hi), 0.5 * (hi - lo)
    pts = {mid + half * (2 * k - (count - 1)) / (count - 1) for k in range(count)}
    pts.add(mid)
    return np.array(sorted(pts))


@dataclass
class BoundarySweep:
    fig2: list
    fig3: list
    samples: list
    rejected: int


def sweep_boundary(samples, seed=0):
    """Plot-ready tables of F against one eigenvalue, r against F, and sampled boundary points.

    ``fig2`` rows are ``(alpha, F)`` for eigenvalues ``(alpha, 1 - alpha, 0)``;
    ``fig3`` rows are ``(F, r)``; ``samples`` rows are
    ``(n1..n9, F, r, class)`` for random directions.
    """
    if samples < 2:
        raise UsageError("sweep needs at least 2 samples")
    fig2 = [(a, f_from_eigenvalues(a, 1.0 - a)) for a in _symmetric_grid(0.0, 1.0, samples)]
    fig3 = [(F, boundary_radius(F)) for F in _symmetric_grid(-F_MAX, F_MAX, samples)]
    directions, rejected = sample_directions(samples, seed)
    rows = []
    for n in directions:
        sol = boundary_state(n)
        cls = classify_probs_hesse(sol.probs)
        rows.append((*sol.n, sol.F, sol.r, cls.value))
    return BoundarySweep(fig2, fig3, rows, rejected)
