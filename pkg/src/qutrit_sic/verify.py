"""Self-check suites, one per module, run by ``qutrit-sic verify``.

Every check reports its worst residual against a fixed tolerance; a suite
passes when all of its checks do.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import boundary as bd
from . import invariants as iv
from . import representation as rep
from . import rotations as rot
from . import sic as sc
from .linalg import (
    TOL_NUM,
    dagger,
    eigenvalues_herm3,
    random_density_matrix,
    random_pure_state,
    random_unitary,
    trace_product,
)

GRID = sc.t_grid(25)


@dataclass
class Check:
    name: str
    worst: float
    tol: float

    @property
    def passed(self):
        return bool(np.isfinite(self.worst)) and self.worst <= self.tol


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failures(self):
        return [c for c in self.checks if not c.passed]


def _flag(ok):
    # Boolean checks: residual 0 on success, 1 on failure, tolerance 0.
    return 0.0 if ok else 1.0


def linalg_suite():
    rng = np.random.default_rng(101)
    adj, cyc, eig_det, eig_sum = 0.0, 0.0, 0.0, 0.0
    for _ in range(200):
        a, b, c = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)) for _ in range(3))
        adj = max(adj, abs(trace_product([a, b]) - np.conj(trace_product([dagger(b), dagger(a)]))))
        cyc = max(cyc, abs(trace_product([a, b, c]) - trace_product([b, c, a])))
        h = a + dagger(a)
        lam = eigenvalues_herm3(h)
        eig_det = max(eig_det, max(abs(np.linalg.det(h - x * np.eye(3))) for x in lam))
        eig_sum = max(eig_sum, abs(lam.sum() - np.trace(h).real))
    pure = 0.0
    for s in range(1, 101):
        v = random_pure_state(s)
        rho = np.outer(v, v.conj())
        pure = max(pure, abs(np.vdot(v, v) - 1), abs(np.trace(rho @ rho) - 1), abs(np.trace(rho @ rho @ rho) - 1))
    same = np.array_equal(random_pure_state(7), random_pure_state(7))
    return [
        Check("Tr(AB) = conj Tr(B'A')", adj, TOL_NUM),
        Check("cyclic trace", cyc, TOL_NUM),
        Check("det(h - lambda I) = 0", eig_det, 1e-9),
        Check("eigenvalue sum = trace", eig_sum, TOL_NUM),
        Check("random pure states are rank one", pure, TOL_NUM),
        Check("random_pure_state deterministic", _flag(same), 0.0),
    ]


def sic_suite():
    builtin = max(sc.verify_sic(sc.build_sic(s)).worst for s in sc.builtin_specs(25))
    fine = max(
        sc.verify_sic(sc.build_sic(sc.FamilySpec.generic(e, s, t))).max_overlap_residual
        for e, s in sc.GENERIC_FAMILIES
        for t in sc.t_grid(50)
    )
    identity = max(
        float(np.max(np.abs(sc.build_sic(spec).projectors.sum(axis=0) - 3 * np.eye(3))))
        for spec in sc.builtin_specs(5)
    )
    plus = sc.build_sic(sc.FamilySpec.generic(0, 1, 0.0)).projectors
    minus = sc.build_sic(sc.FamilySpec.generic(0, -1, 0.0)).projectors
    x, z = sc.shift_op(), sc.phase_op()
    cyclic = max(
        float(np.max(np.abs(np.linalg.matrix_power(x, 3) - np.eye(3)))),
        float(np.max(np.abs(np.linalg.matrix_power(z, 3) - np.eye(3)))),
    )
    return [
        Check("overlap law, all built-in ensembles", builtin, sc.TOL_SIC),
        Check("overlap law, 8 families x 50 t", fine, sc.TOL_SIC),
        Check("projectors sum to 3 I", identity, TOL_NUM),
        Check("0+ and 0- coincide at t = 0", float(np.max(np.abs(plus - minus))), TOL_NUM),
        Check("X^3 = Z^3 = I", cyclic, TOL_NUM),
    ]


def invariants_suite():
    struct, eq16, antisym = 0.0, 0.0, 0.0
    for fam in sc.GENERIC_FAMILIES:
        for t in GRID:
            inv = iv.invariant_tensors(sc.build_sic(sc.FamilySpec.generic(*fam, t)))
            struct = max(struct, float(np.max(np.abs(inv.S_real - iv.predicted_struct_tensor(fam, t)))))
            eq16 = max(eq16, float(np.max(np.abs(inv.S - iv.structure_from_triples(inv.T)))))
            im = inv.T.imag
            antisym = max(antisym, float(np.max(np.abs(im + im.transpose(1, 0, 2)))),
                          float(np.max(np.abs(im + im.transpose(2, 1, 0)))))
    expected = {iv.TripleClass.ROW: 3, iv.TripleClass.X: 9, iv.TripleClass.Y: 9,
                iv.TripleClass.Z: 9, iv.TripleClass.ZERO: 54}
    census = all(iv.class_census(iv.index_generator(f)) == expected for f in sc.GENERIC_FAMILIES)

    hesse = iv.invariant_tensors(sc.hesse_sic()).S_real
    xyz0 = iv.xyz_values(0.0)
    hesse_res = max(abs(hesse[0, 1, 2] + 0.25), abs(hesse[0, 3, 6] - xyz0.x),
                    abs(xyz0.x + 0.25), abs(xyz0.y), abs(xyz0.z))

    zhu = 0.0
    for t in GRID:
        m0 = np.array(iv.equivalence_multiset(t))
        zhu = max(zhu, float(np.max(np.abs(m0 - iv.equivalence_multiset(math.pi / 9 - t)))),
                  float(np.max(np.abs(m0 - iv.equivalence_multiset(math.pi / 9 + t)))))
    return [
        Check("measured S~ = rule prediction (8 families x 25 t)", struct, TOL_NUM),
        Check("S from T identity", eq16, TOL_NUM),
        Check("Im T totally antisymmetric", antisym, TOL_NUM),
        Check("class census 3/9/9/9/54", _flag(census), 0.0),
        Check("Hesse x = -1/4, y = z = 0", hesse_res, TOL_NUM),
        Check("xyz multisets at t, pi/9 -+ t", zhu, 1e-12),
    ]


def representation_suite():
    rng = np.random.default_rng(202)
    hesse = sc.hesse_sic()
    round_trip = 0.0
    for _ in range(100):
        a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        h = a + dagger(a)
        h = h - (np.trace(h).real - 1.0) / 3.0 * np.eye(3)
        round_trip = max(round_trip, float(np.max(np.abs(rep.state_from_probs(hesse, rep.probs_from_state(hesse, h)) - h))))

    quad, cubic, triple, alt, hesse_gap = 0.0, 0.0, 0.0, 0.0, 0.0
    fams = [sc.FamilySpec.generic(*f, 0.13) for f in sc.GENERIC_FAMILIES]
    fams.append(sc.HESSE)
    hesse_inv = iv.invariant_tensors(hesse)
    for spec in fams:
        sic = sc.build_sic(spec)
        inv = iv.invariant_tensors(sic)
        for s in range(100):
            v = random_pure_state(1000 + s)
            p = rep.probs_from_state(sic, np.outer(v, v.conj()))
            q, c = rep.purity_residuals(p, inv)
            quad, cubic = max(quad, abs(q)), max(cubic, abs(c))
            triple = max(triple, abs(rep.triple_cubic_residual(p, inv)))
            alt = max(alt, abs(rep.distinct_cubic_residual(p, inv)))
    for s in range(100):
        h = random_density_matrix(rng)
        p = rep.probs_from_state(hesse, h)
        generic = rep.purity_residuals(p, hesse_inv)
        special = rep.hesse_pure_residual(p)
        # Hesse S~ has x = -1/4, y = z = 0, so the generic cubic collapses onto lines.
        link = 0.5 * special[1] + 0.5 * special[0]
        hesse_gap = max(hesse_gap, abs(generic[0] - special[0]), abs(generic[1] - link))
    return [
        Check("rho -> p -> rho round trip", round_trip, TOL_NUM),
        Check("pure: sum p^2 = 1/6", quad, rep.TOL_PURE),
        Check("pure: sum S~ppp = 1/12", cubic, rep.TOL_PURE),
        Check("pure: sum T~ppp = 5/32", triple, rep.TOL_PURE),
        Check("pure: distinct-index cubic = 0", alt, rep.TOL_PURE),
        Check("Hesse line form agrees with generic form", hesse_gap, TOL_NUM),
        Check("affine plane incidence axioms", _flag(not rep.incidence_defects()), 0.0),
    ]


def rotations_suite():
    rng = np.random.default_rng(303)
    hesse = sc.hesse_sic()
    match, orth, rows, cols, det = 0.0, 0.0, 0.0, 0.0, 0.0
    two_path, norm = 0.0, 0.0
    for fam in sc.GENERIC_FAMILIES:
        for t in GRID:
            target = sc.build_sic(sc.FamilySpec.generic(*fam, t))
            traced = rot.rotation_between(hesse, target)
            closed = rot.closed_form_rotation(fam, t)
            match = max(match, float(np.max(np.abs(traced.matrix - closed.matrix))))
            orth = max(orth, closed.orthogonality_residual(), traced.orthogonality_residual())
            rows = max(rows, closed.row_sum_residual(), traced.row_sum_residual())
            cols = max(cols, closed.column_sum_residual())
            det = max(det, abs(closed.det() - 1.0), abs(traced.det() - 1.0))
        target = sc.build_sic(sc.FamilySpec.generic(*fam, 0.29))
        r = rot.rotation_between(hesse, target)
        for _ in range(13):
            rho = random_density_matrix(rng)
            ph = rep.probs_from_state(hesse, rho)
            two_path = max(two_path, float(np.max(np.abs(rot.apply_rotation(r, ph) - rep.probs_from_state(target, rho)))))
            norm = max(norm, abs(np.linalg.norm(rot.apply_rotation(r, ph) - 1 / 9) - np.linalg.norm(ph - 1 / 9)))
    group, eig = 0.0, 0.0
    for _ in range(20):
        t1, t2 = rng.uniform(-math.pi, math.pi, 2)
        group = max(group, float(np.max(np.abs(rot.block_R(t1) @ rot.block_R(t2) - rot.block_R(t1 + t2)))))
        expected = np.exp(2j * t1 * np.array([-1, 0, 1]))
        eig = max(eig, float(np.max(np.abs(rot.circulant_eigenvalues(t1) - expected))))
    perm_tables = all(
        np.array_equal(np.array(rot.family_permutation(f)), iv.index_generator(f).reshape(-1))
        for f in sc.GENERIC_FAMILIES
    )
    return [
        Check("closed form = trace construction", match, 1e-9),
        Check("orthogonality", orth, TOL_NUM),
        Check("row sums = 1", rows, TOL_NUM),
        Check("column sums = 1", cols, TOL_NUM),
        Check("det = 1", det, TOL_NUM),
        Check("group law R(t1)R(t2) = R(t1+t2)", group, TOL_NUM),
        Check("circulant eigenvalues exp(2itl)", eig, TOL_NUM),
        Check("rotated Hesse p = direct family p", two_path, 1e-9),
        Check("distance to centre preserved", norm, TOL_NUM),
        Check("permutations match index generators", _flag(perm_tables), 0.0),
    ]


def boundary_suite():
    rng = np.random.default_rng(404)
    hesse = sc.hesse_sic()
    Fs = np.linspace(-bd.F_MAX, bd.F_MAX, 10001)
    radii = np.array([bd.boundary_radius(F) for F in Fs])
    cubic = float(np.max(np.abs(bd.polar_cubic_residual(radii, Fs))))
    oracle = max(abs(r - bd.radius_by_root_finding(F)) for F, r in zip(Fs, radii))
    ends = max(abs(bd.boundary_radius(-bd.F_MAX) - bd.R_MIN), abs(bd.boundary_radius(0.0) - bd.R_MID),
               abs(bd.boundary_radius(bd.F_MAX) - bd.R_MAX))
    modulus = max(abs(abs(bd.g_cubed(F)) - 1.0) for F in Fs)
    monotone = _flag(bool(np.all(np.diff(radii) >= -TOL_NUM)))

    agree = 0
    moments = 0.0
    for _ in range(1000):
        rho = random_density_matrix(rng)
        t1, t2, t3 = bd.matrix_moments(rho)
        agree += bd.classify_state(t1, t2, t3) is not bd.classify_by_eigenvalues(rho)
        p = rep.probs_from_state(hesse, rho)
        h2, h3 = bd.trace_moments_hesse(p)
        moments = max(moments, abs(h2 - t2), abs(h3 - t3))
    exemplars = [np.diag([1.0, 0, 0]), np.diag([0.5, 0.5, 0]), np.eye(3) / 3]
    exemplar_ok = [bd.classify_state(*bd.matrix_moments(m)) for m in exemplars] == [
        bd.StateClass.PURE, bd.StateClass.BOUNDARY, bd.StateClass.INTERIOR]

    two_path = 0.0
    for _ in range(1000):
        a = rng.uniform()
        u = random_unitary(rng)
        rho = u @ np.diag([a, 1 - a, 0]) @ dagger(u)
        _, n = bd.polar_decompose(rep.probs_from_state(hesse, rho))
        two_path = max(two_path, abs(bd.f_of_direction(n) - bd.f_from_eigenvalues(a, 1 - a)))

    dirs, _ = bd.sample_directions(200, 405)
    on_boundary = all(
        bd.classify_probs_hesse(bd.boundary_state(n).probs) in (bd.StateClass.BOUNDARY, bd.StateClass.PURE)
        for n in dirs
    )

    face = face_checks()
    return [
        Check("polar cubic residual", cubic, TOL_NUM),
        Check("closed form = root finder", oracle, 1e-9),
        Check("r at F = -1/sqrt2, 0, 1/sqrt2", ends, TOL_NUM),
        Check("|g^3| = 1", modulus, TOL_NUM),
        Check("r nondecreasing in F", monotone, 0.0),
        Check("moment vs eigenvalue classification (mismatches)", float(agree), 0.0),
        Check("canonical exemplars classify", _flag(exemplar_ok), 0.0),
        Check("Hesse moment formulas = matrix moments", moments, TOL_NUM),
        Check("F from direction = F from eigenvalues", two_path, rep.TOL_PURE),
        Check("sampled boundary points classify as boundary", _flag(on_boundary), 0.0),
        *face,
    ]


def face_checks():
    """Pure states orthogonal to the ninth SIC vector, and the face centre."""
    rng = np.random.default_rng(505)
    s2, pure = 0.0, 0.0
    for _ in range(50):
        s, m = bd.face_decompose(bd.face_pure_probs(rng))
        s2 = max(s2, abs(s * s - 1 / 24))
        pure = max(pure, abs(bd.face_conditions(s, m).pure_residual))
    hesse = sc.hesse_sic()
    centre = rep.state_from_probs(hesse, bd.FACE_CENTRE)
    centre_cls = bd.classify_state(*bd.matrix_moments(centre))
    return [
        Check("face pure states: s^2 = 1/24", s2, TOL_NUM),
        Check("face pure states: pure relation", pure, rep.TOL_PURE),
        Check("face centre is a state", _flag(centre_cls in (bd.StateClass.BOUNDARY, bd.StateClass.INTERIOR)), 0.0),
    ]


def cli_suite():
    from .cli import render_boundary

    first = render_boundary(64, 3)
    second = render_boundary(64, 3)
    return [Check("boundary tables byte-stable", _flag(first == second), 0.0)]


SUITES = {
    "linalg-core": linalg_suite,
    "weyl-heisenberg-sic": sic_suite,
    "sic-invariants": invariants_suite,
    "sic-representation": representation_suite,
    "sic-rotations": rotations_suite,
    "qutrit-boundary": boundary_suite,
    "cli-tool": cli_suite,
}


def worker_count():
    """Worker cap from ``QUTRIT_SIC_THREADS``; 0 or unset means one per CPU."""
    raw = os.environ.get("QUTRIT_SIC_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else (os.cpu_count() or 1)


def run_suites(names=None, workers=None):
    """Run the named suites (default: all) and return results in suite order."""
    names = list(names or SUITES)
    workers = workers or worker_count()

    def run(name):
        return SuiteResult(name, SUITES[name]())

    if workers <= 1:
        return [run(n) for n in names]
    with ThreadPoolExecutor(max_workers=min(workers, len(names))) as pool:
        return list(pool.map(run, names))
