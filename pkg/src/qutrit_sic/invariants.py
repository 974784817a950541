"""Triple products, structure coefficients and their combinatorial classification.

Index arguments of the public functions are 1-based SIC labels; tensors
are 0-based numpy arrays, so ``T[i-1, j-1, k-1]`` is the triple product
of projectors ``i, j, k``.
"""

import enum
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import UsageError
from .linalg import DIM
from .rotations import dual_basis
from .sic import _check_family

N = DIM * DIM


def triple_products(sic):
    """``T[i,j,k] = Tr(P_i P_j P_k)`` for all 729 index triples."""
    p = np.asarray(sic.projectors)
    return np.einsum("iab,jbc,kca->ijk", p, p, p)


def structure_coefficients(sic):
    """Expansion coefficients of ``P_i P_j = sum_k S[i,j,k] P_k``.

    Computed against the dual basis, ``S[i,j,k] = Tr(P_i P_j Q_k)``.
    """
    p = np.asarray(sic.projectors)
    q = dual_basis(sic)
    return np.einsum("iab,jbc,kca->ijk", p, p, q)


def structure_from_triples(T, d=DIM):
    """Structure coefficients from triple products in dimension ``d``.

    ``S = ((d+1) T - (d delta_ij + 1)/(d+1)) / d``, broadcast over ``k``.
    """
    T = np.asarray(T)
    n = d * d
    overlap = (d * np.eye(n) + 1.0) / (d + 1.0)
    return ((d + 1.0) * T - overlap[:, :, None]) / d


def triples_from_structure(S, d=DIM):
    """Inverse of :func:`structure_from_triples`."""
    S = np.asarray(S)
    n = d * d
    overlap = (d * np.eye(n) + 1.0) / (d + 1.0)
    return (d * S + overlap[:, :, None]) / (d + 1.0)


@dataclass(frozen=True, eq=False)
class InvariantTensors:
    T: np.ndarray
    S: np.ndarray

    @property
    def T_real(self):
        return self.T.real

    @property
    def S_real(self):
        return self.S.real


def invariant_tensors(sic):
    return InvariantTensors(triple_products(sic), structure_coefficients(sic))


@dataclass(frozen=True)
class InvariantTriple:
    x: float
    y: float
    z: float
    t: float

    def as_tuple(self):
        return (self.x, self.y, self.z)


def _x_of(angle):
    return -(math.cos(angle) + 0.5) / 6.0


def _shifted_x(angle, sign):
    # cos(a + sign 2pi/3) + 1/2 rewritten so that a = 0 gives exactly 0.
    return (sign * math.sqrt(3.0) / 2 * math.sin(angle) - math.sin(angle / 2) ** 2) / 6.0 + 0.0


def xyz_values(t):
    """The three nonzero non-row values of the real structure coefficients at ``t``.

    ``x = -(cos 6t + 1/2)/6``; ``y`` and ``z`` shift the cosine argument by
    ``+2pi/3`` and ``-2pi/3``, so that ``y_t = x_{pi/9+t}`` and
    ``z_t = x_{pi/9-t}``.
    """
    t = float(t)
    return InvariantTriple(
        _x_of(6 * t),
        _shifted_x(6 * t, 1),
        _shifted_x(6 * t, -1),
        t,
    )


def equivalence_multiset(t):
    """Sorted ``(x, y, z)``; equal exactly for unitarily equivalent parameters."""
    return tuple(sorted(xyz_values(t).as_tuple()))


_GENERATORS = {
    (0, 1): ((1, 2, 3), (4, 5, 6), (7, 8, 9)),
    (0, -1): ((1, 3, 2), (4, 6, 5), (7, 9, 8)),
    (1, 1): ((1, 5, 9), (2, 6, 7), (3, 4, 8)),
    (1, -1): ((1, 9, 5), (2, 7, 6), (3, 8, 4)),
    (2, 1): ((1, 6, 8), (2, 4, 9), (3, 5, 7)),
    (2, -1): ((1, 8, 6), (2, 9, 4), (3, 7, 5)),
    (3, 1): ((1, 4, 7), (2, 5, 8), (3, 6, 9)),
    (3, -1): ((1, 7, 4), (2, 8, 5), (3, 9, 6)),
}


def index_generator(family):
    """3x3 grid of SIC labels that organises the structure coefficients of a family."""
    return np.array(_GENERATORS[_check_family(family)])


class TripleClass(enum.Enum):
    DIAGONAL = "diagonal"
    PAIR = "pair"
    ROW = "row"
    X = "x"
    Y = "y"
    Z = "z"
    ZERO = "zero"


def _check_index(i):
    if isinstance(i, bool) or not isinstance(i, (int, np.integer)) or not 1 <= i <= N:
        raise UsageError(f"SIC index must be an integer in 1..{N}, got {i!r}")
    return int(i)


def classify_triple(g, i, j, k):
    """Class of the index triple ``(i, j, k)`` relative to generator grid ``g``.

    Permutation invariant.  With cell ``(row, col)`` of each index in ``g``:
    one row is ROW; one column, or three distinct rows and columns, is X;
    two in column ``c`` plus a third in the remaining row of column ``c+1``
    (cyclic) is Y, of column ``c-1`` is Z; anything else is ZERO.
    """
    i, j, k = (_check_index(v) for v in (i, j, k))
    if i == j == k:
        return TripleClass.DIAGONAL
    if len({i, j, k}) == 2:
        return TripleClass.PAIR

    g = np.asarray(g)
    where = {int(g[r, c]): (r, c) for r in range(DIM) for c in range(DIM)}
    cells = [where[v] for v in (i, j, k)]
    rows = {r for r, _ in cells}
    cols = {c for _, c in cells}
    if len(rows) == 1:
        return TripleClass.ROW
    if len(cols) == 1 or (len(rows) == 3 and len(cols) == 3):
        return TripleClass.X

    for a, b, other in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        (ra, ca), (rb, cb), (ro, co) = cells[a], cells[b], cells[other]
        if ca != cb or ro in (ra, rb):
            continue
        if co == (ca + 1) % DIM:
            return TripleClass.Y
        if co == (ca - 1) % DIM:
            return TripleClass.Z
    return TripleClass.ZERO


def class_census(g):
    """Count of each class over the 84 unordered triples of distinct labels."""
    return Counter(classify_triple(g, *c) for c in itertools.combinations(range(1, N + 1), 3))


def predicted_struct_real(family, t, i, j, k):
    """Rule-predicted real part of ``S[i,j,k]`` for a generic family at ``t``.

    Repeated labels follow ``S_iii = 1``, ``S_ijj = S_jij = 1/4``,
    ``S_jji = 0``; distinct labels take ``-1/4``, ``x_t``, ``y_t``, ``z_t``
    or ``0`` according to :func:`classify_triple`.
    """
    g = index_generator(family)
    cls = classify_triple(g, i, j, k)
    if cls is TripleClass.DIAGONAL:
        return 1.0
    if cls is TripleClass.PAIR:
        return 0.0 if i == j else 0.25
    if cls is TripleClass.ROW:
        return -0.25
    if cls is TripleClass.ZERO:
        return 0.0
    xyz = xyz_values(t)
    return {TripleClass.X: xyz.x, TripleClass.Y: xyz.y, TripleClass.Z: xyz.z}[cls]


@lru_cache(maxsize=None)
def _class_tensor(family):
    g = index_generator(family)
    out = np.empty((N, N, N), dtype=object)
    for i, j, k in itertools.product(range(1, N + 1), repeat=3):
        out[i - 1, j - 1, k - 1] = classify_triple(g, i, j, k)
    return out


def predicted_struct_tensor(family, t):
    """All 729 predicted values of the real structure coefficients as a 9x9x9 array."""
    classes = _class_tensor(_check_family(family))
    xyz = xyz_values(t)
    value = {
        TripleClass.ROW: -0.25,
        TripleClass.X: xyz.x,
        TripleClass.Y: xyz.y,
        TripleClass.Z: xyz.z,
        TripleClass.ZERO: 0.0,
        TripleClass.DIAGONAL: 1.0,
    }
    out = np.empty((N, N, N))
    for idx, cls in np.ndenumerate(classes):
        if cls is TripleClass.PAIR:
            i, j, _ = idx
            out[idx] = 0.0 if i == j else 0.25
        else:
            out[idx] = value[cls]
    return out


def invariant_table(ts):
    """Rows ``(t, x, y, z)`` for each parameter value."""
    return [(xyz.t, xyz.x, xyz.y, xyz.z) for xyz in map(xyz_values, ts)]
