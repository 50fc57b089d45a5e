"""Exact computations with monads, free resolutions and vector bundles on P^4."""

from .chern import (ChernPolynomial, CohomologyTable, SurfaceInvariants, chern_diff_bundle,
                    chern_from_betti, chern_of_monad, chern_twist, cohomology_table,
                    double_point_residual, riemann_roch_chi)
from .exterior import (DiffSummand, ExteriorElement, ExteriorMatrix, Monad, MonadReport,
                       compose_maps, expand_to_modules, fiberwise_check, koszul_matrix, verify_monad,
                       wedge)
from .field import GF, QQ, Field, FieldElement
from .groebner import (GroebnerBasis, Ideal, empty_projective_support, groebner_basis, ideal_quotient,
                       jacobian_singular_ideal, maximal_minors, normal_form)
from .modules import FreeModule, GradedMatrix, ModulePresentation, syzygies
from .resolutions import (BettiTable, ResolutionChain, betti_table, ext_dual_module, free_resolution,
                          graded_piece_dim, hilbert_polynomial, minimal_free_resolution,
                          minimize_resolution, sheaf_cohomology_dim)
from .ring import Monomial, MonomialOrder, Polynomial, Ring, mono_compare

__version__ = "0.1.0"

__all__ = [
    "betti_table",
    "BettiTable",
    "chern_diff_bundle",
    "chern_from_betti",
    "chern_of_monad",
    "chern_twist",
    "ChernPolynomial",
    "cohomology_table",
    "CohomologyTable",
    "compose_maps",
    "DiffSummand",
    "double_point_residual",
    "empty_projective_support",
    "expand_to_modules",
    "ext_dual_module",
    "ExteriorElement",
    "ExteriorMatrix",
    "fiberwise_check",
    "Field",
    "FieldElement",
    "free_resolution",
    "FreeModule",
    "GF",
    "graded_piece_dim",
    "GradedMatrix",
    "groebner_basis",
    "GroebnerBasis",
    "hilbert_polynomial",
    "Ideal",
    "ideal_quotient",
    "jacobian_singular_ideal",
    "koszul_matrix",
    "maximal_minors",
    "minimal_free_resolution",
    "minimize_resolution",
    "ModulePresentation",
    "Monad",
    "MonadReport",
    "mono_compare",
    "Monomial",
    "MonomialOrder",
    "normal_form",
    "Polynomial",
    "QQ",
    "ResolutionChain",
    "riemann_roch_chi",
    "Ring",
    "sheaf_cohomology_dim",
    "SurfaceInvariants",
    "syzygies",
    "verify_monad",
    "wedge",
]
