"""Exact noncommutative differential geometry on finite groups.

The calculus on a finite group is driven by an ad-stable generating set
(a conjugacy class): functions on the group are the base ring, one basis
one-form per class element, higher degrees cut out by a braiding
operator.  Everything is computed over the exact cyclotomic field
generated by a primitive cube root of unity, so every reported number is
a certificate, not an approximation.
"""

from .cyclotomic import Cyclotomic, OMEGA, OMEGA2, ONE, ZERO, cyc
from .linalg import (
    AffineSpace,
    CertificationError,
    ExactMatrix,
    certified_rank_blocks,
    invert,
    modular_rank,
    nullspace,
    rank,
    solve_affine,
)
from .groups import (
    ClassCalculus,
    FiniteGroup,
    GroupSpecError,
    TABLE_II,
    TABLE_III,
    OTHER,
    build_group,
    class_calculus,
    class_generates,
    classify_class_products,
    conjugacy_classes,
    cyclicity_witnesses,
    generated_subgroup,
    is_cyclic_class,
)
from .calculus import (
    BraidData,
    GroupFunction,
    OneForm,
    Omega2Basis,
    ScaleCapError,
    TwoForm,
    basis_pair_labels,
    braided_factorial,
    braided_integer,
    braiding,
    d0,
    d1,
    de_basis,
    degree2_relations,
    e_form,
    exterior_dimension,
    exterior_dimension_info,
    exterior_profile,
    omega2_basis,
    partial,
    quadratic_dimension,
    right_to_left,
    theta,
    wedge,
)
from .riemann import (
    Connection,
    Metric,
    NonlinearCurvatureError,
    TensorSquare,
    cotorsion,
    covariant_derivative,
    curvature_2forms,
    invariant_bilinear_space,
    is_regular,
    levi_civita,
    lift_i,
    lift_iprime,
    metric_from_mu,
    metric_tensor,
    ricci,
    riemann,
    solve_ricci_flat,
    solve_torsion_cotorsion_free,
    solve_torsion_free,
    torsion,
)
from .dirac import (
    FOURIER_LABELS,
    Representation,
    builtin_reps,
    casimir_action,
    chi_operator,
    chirality_gamma,
    dirac_eigenbasis,
    dirac_operator,
    fourier_decompose,
    fourier_reconstruct,
    gamma_matrices,
    laplacian,
    translation_combination,
    verify_spectrum,
)
from .cohomology import (
    FlatFamily,
    conjugate_calculus_check,
    constant_flat_connections,
    constant_one_form,
    de_rham_h1,
    gauge_transform,
    is_flat_family_member,
    s4_cross_relations_check,
    u1_curvature,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSpace",
    "BraidData",
    "CertificationError",
    "ClassCalculus",
    "Connection",
    "Cyclotomic",
    "ExactMatrix",
    "FiniteGroup",
    "FlatFamily",
    "FOURIER_LABELS",
    "GroupFunction",
    "GroupSpecError",
    "Metric",
    "NonlinearCurvatureError",
    "OMEGA",
    "OMEGA2",
    "ONE",
    "OneForm",
    "Omega2Basis",
    "OTHER",
    "Representation",
    "ScaleCapError",
    "TABLE_II",
    "TABLE_III",
    "TensorSquare",
    "TwoForm",
    "ZERO",
    "basis_pair_labels",
    "braided_factorial",
    "braided_integer",
    "braiding",
    "build_group",
    "builtin_reps",
    "casimir_action",
    "certified_rank_blocks",
    "chi_operator",
    "chirality_gamma",
    "class_calculus",
    "class_generates",
    "classify_class_products",
    "conjugacy_classes",
    "conjugate_calculus_check",
    "constant_flat_connections",
    "constant_one_form",
    "cotorsion",
    "covariant_derivative",
    "curvature_2forms",
    "cyc",
    "cyclicity_witnesses",
    "d0",
    "d1",
    "de_basis",
    "de_rham_h1",
    "degree2_relations",
    "dirac_eigenbasis",
    "dirac_operator",
    "e_form",
    "exterior_dimension",
    "exterior_dimension_info",
    "exterior_profile",
    "fourier_decompose",
    "fourier_reconstruct",
    "gamma_matrices",
    "gauge_transform",
    "generated_subgroup",
    "invariant_bilinear_space",
    "invert",
    "is_cyclic_class",
    "is_regular",
    "is_flat_family_member",
    "laplacian",
    "levi_civita",
    "lift_i",
    "lift_iprime",
    "metric_from_mu",
    "metric_tensor",
    "modular_rank",
    "nullspace",
    "omega2_basis",
    "partial",
    "quadratic_dimension",
    "rank",
    "ricci",
    "riemann",
    "right_to_left",
    "s4_cross_relations_check",
    "solve_affine",
    "solve_ricci_flat",
    "solve_torsion_cotorsion_free",
    "solve_torsion_free",
    "theta",
    "torsion",
    "translation_combination",
    "u1_curvature",
    "verify_spectrum",
    "wedge",
]
