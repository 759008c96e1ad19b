"""Multi-pointed noncommutative deformation theory for finitely
presented associative algebras over the rationals."""

from .ncpoly import (Arrow, GrowthReport, NCPoly, Path, Quiver,
                     RewriteSystem, TruncationExceeded,
                     complete_rewrite_system, enumerate_normal_words,
                     growth_report, normal_form)
from .algebra import (AdmissibilityError, AlgebraPresentation,
                      TruncatedAlgebra, opposite, truncate)
from .repmod import (ExtSpace, Extension, HomSpace, ModuleError, ModuleMap,
                     RepModule, TruncationOverflow, ext1, hom, is_isomorphic,
                     is_split, projective, projectives, realize_extension,
                     simples, universal_extension)
from .deform import (DeformationState, NotSimpleCollection, ParameterAlgebra,
                     SimpleCollection, check_simple_collection, deform_versal,
                     extract_presentation, iterated_extension_dim_audit,
                     recovery_check)
from .contract import (ContractionSpec, contract, contraction_finiteness,
                       contraction_vs_deformation, opposite_symmetry_check)

__all__ = [
    "AdmissibilityError", "AlgebraPresentation", "Arrow",
    "ContractionSpec", "DeformationState", "ExtSpace", "Extension",
    "GrowthReport", "HomSpace", "ModuleError", "ModuleMap", "NCPoly",
    "NotSimpleCollection", "ParameterAlgebra", "Path", "Quiver",
    "RepModule", "RewriteSystem", "SimpleCollection", "TruncatedAlgebra",
    "TruncationExceeded", "TruncationOverflow",
    "check_simple_collection", "complete_rewrite_system", "contract",
    "contraction_finiteness", "contraction_vs_deformation", "deform_versal",
    "enumerate_normal_words", "ext1", "extract_presentation",
    "growth_report", "hom", "is_isomorphic", "is_split",
    "iterated_extension_dim_audit", "normal_form", "opposite",
    "opposite_symmetry_check", "projective", "projectives",
    "realize_extension", "recovery_check", "simples", "truncate",
    "universal_extension",
]

__version__ = "0.1.0"
