"""Weyl-Heisenberg operators, qutrit fiducial families and SIC ensembles.

Projectors are labelled ``i = 3*m + n + 1`` for ``X^m Z^n |psi>``; in this
module and everywhere else arrays are 0-based, so projector ``i`` lives at
``projectors[i - 1]``.
"""

import math
import re
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import SicConstructionError, UsageError
from .linalg import DIM, OMEGA, hermiticity_residual, projector

#: Tolerance on the SIC overlap law.
TOL_SIC = 1e-10

#: The eight generic families as ``(eta, sign)`` labels, Table order.
GENERIC_FAMILIES = ((0, 1), (0, -1), (1, 1), (1, -1), (2, 1), (2, -1), (3, 1), (3, -1))

CANONICAL_T_MAX = math.pi / 6


def family_label(family):
    eta, sign = family
    return f"{eta}{'+' if sign > 0 else '-'}"


def _check_family(family):
    try:
        eta, sign = family
    except (TypeError, ValueError):
        raise UsageError(f"family must be an (eta, sign) pair, got {family!r}") from None
    if eta not in (0, 1, 2, 3) or sign not in (1, -1):
        raise UsageError(f"unknown family {family!r}; eta in 0..3, sign in {{+1, -1}}")
    return int(eta), int(sign)


@dataclass(frozen=True)
class FamilySpec:
    """Which fiducial generates a SIC.

    ``kind`` is ``"generic"`` (needs ``eta``, ``sign`` and ``t``), ``"pi6"``
    (one of the four exceptional fiducials at t = pi/6, chosen by ``k``) or
    ``"hesse"`` (the canonical t = 0 fiducial).
    """

    kind: str
    eta: int = 0
    sign: int = 1
    t: float = 0.0
    k: int = 0

    def __post_init__(self):
        if self.kind == "generic":
            _check_family((self.eta, self.sign))
            if not math.isfinite(self.t):
                raise UsageError(f"t must be finite, got {self.t!r}")
        elif self.kind == "pi6":
            if self.k not in (0, 1, 2, 3):
                raise UsageError(f"pi6 fiducial index must be 0..3, got {self.k!r}")
        elif self.kind != "hesse":
            raise UsageError(f"unknown fiducial kind {self.kind!r}")

    @classmethod
    def generic(cls, eta, sign, t):
        return cls("generic", eta=int(eta), sign=int(sign), t=float(t))

    @classmethod
    def pi6(cls, k):
        return cls("pi6", k=int(k))

    @classmethod
    def hesse(cls):
        return cls("hesse")

    @property
    def family(self):
        if self.kind != "generic":
            raise UsageError(f"{self.selector} is not a generic family")
        return (self.eta, self.sign)

    @property
    def canonical_range(self):
        """True when the parameter lies in [0, pi/6] (always true for exceptional SICs)."""
        if self.kind != "generic":
            return True
        return 0.0 <= self.t <= CANONICAL_T_MAX

    @property
    def selector(self):
        if self.kind == "hesse":
            return "hesse"
        if self.kind == "pi6":
            return f"pi6:{self.k}"
        return f"gen:{family_label((self.eta, self.sign))}@{self.t!r}"

    def to_dict(self):
        out = {"selector": self.selector, "kind": self.kind}
        if self.kind == "generic":
            out.update(eta=self.eta, sign=self.sign, t=self.t, canonical_range=self.canonical_range)
        elif self.kind == "pi6":
            out["k"] = self.k
        return out

    @classmethod
    def from_dict(cls, d):
        if "selector" in d:
            return parse_selector(d["selector"])
        return cls(d["kind"], eta=d.get("eta", 0), sign=d.get("sign", 1),
                   t=d.get("t", 0.0), k=d.get("k", 0))


_GEN_RE = re.compile(r"^gen:([0-3])([+-])(?:@(.+))?$")


def parse_selector(text, t=None):
    """Parse ``hesse``, ``pi6:k`` or ``gen:<eta><sign>@<t>``.

    For generic families ``t`` may instead be passed separately (the
    CLI's ``--t``); giving it both ways with different values is an error.
    """
    text = text.strip()
    if text == "hesse":
        return FamilySpec.hesse()
    if text.startswith("pi6:"):
        try:
            return FamilySpec.pi6(int(text[4:]))
        except ValueError:
            raise UsageError(f"bad pi6 selector {text!r}") from None
    m = _GEN_RE.match(text)
    if not m:
        raise UsageError(
            f"bad SIC selector {text!r}; expected hesse, pi6:<k> or gen:<eta><sign>@<t>"
        )
    eta, sign, t_text = int(m.group(1)), (1 if m.group(2) == "+" else -1), m.group(3)
    if t_text is not None:
        try:
            t_sel = float(t_text)
        except ValueError:
            raise UsageError(f"bad t value in selector {text!r}") from None
        if t is not None and float(t) != t_sel:
            raise UsageError(f"selector {text!r} conflicts with t={t}")
        t = t_sel
    if t is None:
        raise UsageError(f"generic family {text!r} needs a t value")
    return FamilySpec.generic(eta, sign, t)


def shift_op():
    """Cyclic shift ``X|j> = |j+1 mod 3>``."""
    return np.roll(np.eye(DIM, dtype=complex), 1, axis=0)


def phase_op():
    """Clock operator ``Z|j> = omega^j |j>``."""
    return np.diag(OMEGA ** np.arange(DIM))


def displacement(m, n):
    """Weyl-Heisenberg displacement ``X^m Z^n``."""
    return np.linalg.matrix_power(shift_op(), m % DIM) @ np.linalg.matrix_power(phase_op(), n % DIM)


def sic_index(m, n):
    """1-based projector label of ``X^m Z^n``."""
    return DIM * m + n + 1


def fiducial_vector(spec):
    """Closed-form fiducial vector for ``spec``, printed global phase kept."""
    if spec.kind == "hesse":
        return np.array([0.0, 1.0, -1.0], dtype=complex) / math.sqrt(2)
    if spec.kind == "pi6":
        if spec.k == 0:
            return np.array([0.0, 1.0, 1.0], dtype=complex) / math.sqrt(2)
        first = {1: OMEGA, 2: OMEGA**2, 3: 1.0}[spec.k]
        return np.array([first, 1.0, -2.0], dtype=complex) / math.sqrt(6)

    t, s = spec.t, spec.sign
    if spec.eta == 0:
        return np.array([0.0, np.exp(-1j * s * t), -np.exp(1j * s * t)]) / math.sqrt(2)
    return math.sqrt(2.0 / 3.0) * np.array(
        [
            OMEGA**spec.eta * math.sin(t),
            math.sin(t + s * 2 * math.pi / 3),
            math.sin(t - s * 2 * math.pi / 3),
        ],
        dtype=complex,
    )


@dataclass(frozen=True, eq=False)
class SicEnsemble:
    """Nine projectors ``projectors[i-1]`` with the fiducial and spec that made them."""

    projectors: np.ndarray
    fiducial: np.ndarray
    spec: FamilySpec = field(default_factory=FamilySpec.hesse)

    def __post_init__(self):
        p = np.array(self.projectors, dtype=complex)
        if p.shape != (DIM * DIM, DIM, DIM):
            raise UsageError(f"expected 9 projectors of shape 3x3, got {p.shape}")
        p.setflags(write=False)
        object.__setattr__(self, "projectors", p)
        f = np.array(self.fiducial, dtype=complex)
        f.setflags(write=False)
        object.__setattr__(self, "fiducial", f)

    def __getitem__(self, i):
        """Projector with 1-based label ``i``."""
        if not 1 <= i <= DIM * DIM:
            raise UsageError(f"SIC index must be in 1..9, got {i}")
        return self.projectors[i - 1]

    def __len__(self):
        return DIM * DIM


def orbit_projectors(fiducial):
    """The nine projectors ``X^m Z^n |psi><psi| Z^-n X^-m`` in label order."""
    return np.array(
        [projector(displacement(m, n) @ fiducial) for m in range(DIM) for n in range(DIM)]
    )


@dataclass(frozen=True)
class SicReport:
    max_overlap_residual: float
    idempotency_residuals: tuple
    hermiticity_residual: float
    trace_residual: float
    tol: float = TOL_SIC

    @property
    def worst(self):
        return max(self.max_overlap_residual, max(self.idempotency_residuals),
                   self.hermiticity_residual, self.trace_residual)

    @property
    def passed(self):
        return self.worst < self.tol


def overlap_matrix(projectors):
    """Real parts of ``Tr(P_i P_j)`` for all pairs."""
    return np.einsum("iab,jba->ij", projectors, projectors).real


def verify_sic(sic, tol=TOL_SIC):
    """Residuals of the overlap law ``Tr(P_i P_j) = (3 delta_ij + 1)/4``.

    Idempotency is scored per projector as the larger of the largest entry
    of ``P^2 - P`` and ``|Tr(P^2 - P)|``.
    """
    p = np.asarray(sic.projectors)
    target = (DIM * np.eye(DIM * DIM) + 1) / (DIM + 1)
    overlap = float(np.max(np.abs(overlap_matrix(p) - target)))
    idem = []
    for proj in p:
        defect = proj @ proj - proj
        idem.append(max(float(np.max(np.abs(defect))), abs(np.trace(defect))))
    herm = max(hermiticity_residual(proj) for proj in p)
    trace = max(abs(np.trace(proj) - 1.0) for proj in p)
    return SicReport(overlap, tuple(idem), herm, float(trace), tol)


def build_sic(spec, tol=TOL_SIC):
    """Weyl-Heisenberg SIC generated by the fiducial of ``spec``.

    Raises
    ------
    SicConstructionError
        If the orbit violates the overlap law by more than ``tol``.
    """
    fid = fiducial_vector(spec)
    sic = SicEnsemble(orbit_projectors(fid), fid, spec)
    report = verify_sic(sic, tol)
    if not report.passed:
        raise SicConstructionError(
            f"{spec.selector} does not generate a SIC: worst overlap residual "
            f"{report.max_overlap_residual:.3e}",
            report.max_overlap_residual,
        )
    return sic


def sic_from_fiducial(fiducial, spec=None, tol=TOL_SIC):
    """SIC from an arbitrary fiducial vector, verified like :func:`build_sic`."""
    fid = np.asarray(fiducial, dtype=complex)
    fid = fid / np.linalg.norm(fid)
    sic = SicEnsemble(orbit_projectors(fid), fid, spec or FamilySpec.hesse())
    report = verify_sic(sic, tol)
    if not report.passed:
        raise SicConstructionError(
            f"fiducial does not generate a SIC: worst overlap residual "
            f"{report.max_overlap_residual:.3e}",
            report.max_overlap_residual,
        )
    return sic


def zhu_unitary():
    """Non-Clifford unitary ``diag(1, u, u^2)`` with ``u = exp(-2 pi i / 9)``."""
    u = np.exp(-2j * np.pi / 9)
    return np.diag([1.0, u, u * u])


def conjugate_projectors(unitary, projectors):
    """``U P U^dagger`` for each projector."""
    u = np.asarray(unitary, dtype=complex)
    return np.einsum("ab,ibc,dc->iad", u, projectors, np.conj(u))


def t_grid(points=25, lo=0.0, hi=CANONICAL_T_MAX):
    return np.linspace(lo, hi, points)


def builtin_specs(points=25):
    """Every built-in fiducial: 8 families on a t-grid, 4 at pi/6, and Hesse."""
    specs = [FamilySpec.generic(eta, sign, t) for eta, sign in GENERIC_FAMILIES for t in t_grid(points)]
    specs += [FamilySpec.pi6(k) for k in range(4)]
    specs.append(FamilySpec.hesse())
    return specs


HESSE = FamilySpec.hesse()


@lru_cache(maxsize=1)
def hesse_sic():
    return build_sic(HESSE)

