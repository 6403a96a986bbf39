"""Exact arithmetic for finite-dimensional multiplicative Hom-Leibniz algebras.

Build algebras from structure constants, check the axioms, form semidirect
products from actions, compute universal (alpha-)central extensions and
lift automorphisms and derivations across covers.  All arithmetic is exact,
over the rationals or a prime field.
"""

from .errors import HomLeibError, PreconditionError, Report, TheoremViolation, Verdict
from .exactlin import GF, QQ, Subspace, identity, kernel, matrix, rank, vector
from .homalg import (
    HomAlgebra,
    HomMorphism,
    center,
    check_hom_leibniz,
    check_morphism,
    check_multiplicative,
    derived,
    direct_product,
    is_alpha_perfect,
    is_perfect,
    yau_twist,
)
from .actions import (
    HomAction,
    SplitExtension,
    check_action_axioms,
    check_split_equivalence,
    derivation_to_hom,
    hom_to_derivation,
    semidirect,
)
from .centext import cover_report, induced_to_central, uce, uce_alpha, uce_alpha_functor, uce_functor
from .lifting import lift_automorphism, lift_derivation, make_alpha_cover
from .sdpuce import check_all as check_split_uce, make_setup

__all__ = [
    "HomLeibError",
    "PreconditionError",
    "Report",
    "TheoremViolation",
    "Verdict",
    "GF",
    "QQ",
    "Subspace",
    "identity",
    "kernel",
    "matrix",
    "rank",
    "vector",
    "HomAlgebra",
    "HomMorphism",
    "center",
    "check_hom_leibniz",
    "check_morphism",
    "check_multiplicative",
    "derived",
    "direct_product",
    "is_alpha_perfect",
    "is_perfect",
    "yau_twist",
    "HomAction",
    "SplitExtension",
    "check_action_axioms",
    "check_split_equivalence",
    "derivation_to_hom",
    "hom_to_derivation",
    "semidirect",
    "cover_report",
    "induced_to_central",
    "uce",
    "uce_alpha",
    "uce_alpha_functor",
    "uce_functor",
    "lift_automorphism",
    "lift_derivation",
    "make_alpha_cover",
    "check_split_uce",
    "make_setup",
]

__version__ = "0.1.0"
