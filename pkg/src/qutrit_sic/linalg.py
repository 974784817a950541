"""Dense 3x3 complex and 9x9 real linear algebra.

Matrices are plain ``numpy`` arrays: complex128 of shape (3, 3) for
operators on the qutrit Hilbert space, float64 of shape (9, 9) for maps
between probability vectors.
"""

from functools import reduce

import numpy as np

from .errors import DomainError, UsageError

#: Identity-check tolerance for closed-form values.
TOL_NUM = 1e-10
#: Hermiticity tolerance.
TOL_HERM = 1e-12

DIM = 3
OMEGA = np.exp(2j * np.pi / DIM)


def as_cmat3(m):
    m = np.asarray(m, dtype=complex)
    if m.shape != (3, 3):
        raise UsageError(f"expected a 3x3 matrix, got shape {m.shape}")
    return m


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def hermiticity_residual(m):
    """Largest entry of ``|m - m^dagger|``."""
    return float(np.max(np.abs(m - dagger(m))))


def is_hermitian(m, tol=TOL_HERM):
    return hermiticity_residual(m) <= tol


def trace_product(ms):
    """Trace of the ordered product ``m1 @ m2 @ ... @ mk``.

    Parameters
    ----------
    ms : sequence of array_like
        Non-empty list of square matrices, multiplied left to right.

    Returns
    -------
    complex
    """
    ms = list(ms)
    if not ms:
        raise UsageError("trace_product needs at least one matrix")
    return complex(np.trace(reduce(np.matmul, (np.asarray(m, dtype=complex) for m in ms))))


_FLUSH = 1e-150


def _det3(m):
    return (m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
            - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
            + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))


def _trig_eigenvalues(h):
    # Shift by Tr/3, scale to unit spread, arccos of half the determinant.
    mean = np.trace(h).real / 3.0
    b = h - mean * np.eye(3)
    spread2 = np.trace(b @ b).real / 6.0
    if spread2 <= 0.0:
        return np.full(3, mean)
    spread = np.sqrt(spread2)
    half_det = np.clip(_det3(b / spread).real / 2.0, -1.0, 1.0)
    phi = np.arccos(half_det) / 3.0
    top = mean + 2.0 * spread * np.cos(phi)
    bottom = mean + 2.0 * spread * np.cos(phi + 2.0 * np.pi / 3.0)
    return np.array([top, 3.0 * mean - top - bottom, bottom])


def eigenvalues_herm3(h, tol=TOL_HERM):
    """Eigenvalues of a 3x3 Hermitian matrix, sorted descending.

    The trigonometric solution of the characteristic cubic locates all
    three roots.  A nearly degenerate pair is ill-conditioned in that form
    (errors grow like the square root of machine epsilon), so the pair is
    recomputed from the 2x2 compression onto the orthogonal complement of
    the isolated eigenvector, whose discriminant is a sum of squares.

    Raises
    ------
    DomainError
        If ``h`` is not Hermitian within ``tol``.
    """
    h = as_cmat3(h)
    if not is_hermitian(h, tol):
        raise DomainError(
            f"matrix is not Hermitian (residual {hermiticity_residual(h):.3e} > {tol:.1e})"
        )
    h = 0.5 * (h + dagger(h))
    # Work at unit scale so tiny or huge entries cannot under/overflow.
    # Power-of-two factor keeps the rescaling exact, even for subnormals.
    peak = float(max(np.max(np.abs(h.real)), np.max(np.abs(h.imag))))
    if peak == 0.0:
        return np.zeros(3)
    exp = np.frexp(peak)[1]
    re, im = np.ldexp(h.real, -exp), np.ldexp(h.imag, -exp)
    # Entries this far below unit scale cannot move any eigenvalue.
    re[np.abs(re) < _FLUSH] = 0.0
    im[np.abs(im) < _FLUSH] = 0.0
    unit = re + 1j * im
    return np.ldexp(_refined_eigenvalues(unit), exp)


def _refined_eigenvalues(h):
    lam = _trig_eigenvalues(h)
    if lam[0] == lam[2]:
        return lam

    upper_gap, lower_gap = lam[0] - lam[1], lam[1] - lam[2]
    k = 0 if upper_gap >= lower_gap else 2
    shifted = h - lam[k] * np.eye(3)
    crosses = [
        np.cross(shifted[0], shifted[1]),
        np.cross(shifted[0], shifted[2]),
        np.cross(shifted[1], shifted[2]),
    ]
    v = max(crosses, key=np.linalg.norm)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        return lam
    v = v / norm

    e = np.eye(3)[np.argmin(np.abs(v))]
    u1 = e - np.vdot(v, e) * v
    u1 /= np.linalg.norm(u1)
    u2 = np.cross(np.conj(v), np.conj(u1))
    u2 /= np.linalg.norm(u2)
    basis = np.stack([u1, u2], axis=1)
    block = dagger(basis) @ h @ basis

    centre = 0.5 * (block[0, 0].real + block[1, 1].real)
    radius = np.hypot(0.5 * (block[0, 0].real - block[1, 1].real), abs(block[0, 1]))
    # The isolated root is well conditioned in the trig form; keep it.
    out = np.array([lam[k], centre + radius, centre - radius])
    return np.sort(out)[::-1]


def random_pure_state(seed):
    """Unit vector of three independent standard complex Gaussians.

    The distribution is unitarily invariant (Haar measure on pure states)
    and the output is a deterministic function of ``seed``.
    """
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    return v / np.linalg.norm(v)


def projector(v):
    """Rank-one projector ``|v><v|`` onto the normalised vector ``v``."""
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.outer(v, np.conj(v))


def random_unitary(rng):
    """Haar-random 3x3 unitary from the QR decomposition of a complex Ginibre matrix."""
    g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_density_matrix(rng, rank=None):
    """Mixture of ``rank`` Haar-random pure states with flat Dirichlet weights.

    ``rank`` defaults to a uniform draw from 1..3.
    """
    if rank is None:
        rank = int(rng.integers(1, 4))
    weights = rng.dirichlet(np.ones(rank))
    rho = np.zeros((3, 3), dtype=complex)
    for w in weights:
        v = rng.standard_normal(3) + 1j * rng.standard_normal(3)
        rho += w * projector(v)
    return rho
