"""Qutrit state-space geometry in the SIC probability representation.

Builds the Weyl-Heisenberg qutrit SICs, their triple products and
structure coefficients, the orthogonal maps between the probability
vectors of different SICs, and the polar description of the boundary of
the 8-dimensional qutrit convex body.
"""

from .errors import DomainError, QutritSicError, SicConstructionError, UsageError
from .linalg import eigenvalues_herm3, random_pure_state, trace_product
from .sic import (
    FamilySpec,
    SicEnsemble,
    build_sic,
    displacement,
    fiducial_vector,
    hesse_sic,
    parse_selector,
    phase_op,
    shift_op,
    verify_sic,
    zhu_unitary,
)
from .invariants import (
    InvariantTensors,
    InvariantTriple,
    TripleClass,
    classify_triple,
    equivalence_multiset,
    index_generator,
    invariant_tensors,
    predicted_struct_real,
    structure_coefficients,
    triple_products,
    xyz_values,
)
from .representation import (
    affine_lines,
    hesse_pure_residual,
    hs_inner_from_probs,
    probs_from_state,
    purity_residuals,
    state_from_probs,
)
from .rotations import (
    RotationMatrix9,
    a_func,
    apply_rotation,
    block_A,
    block_R,
    closed_form_rotation,
    dual_basis,
    family_permutation,
    permutation_matrix,
    rotation_between,
)
from .boundary import (
    BoundarySolution,
    StateClass,
    boundary_radius,
    boundary_state,
    classify_state,
    f_from_eigenvalues,
    f_of_direction,
    face_conditions,
    face_phi,
    polar_decompose,
    sweep_boundary,
    trace_moments_hesse,
)

__version__ = "0.1.0"
