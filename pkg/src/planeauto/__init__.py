"""Exact computations with polynomial automorphisms of the plane."""
from .cmw import AlphaRestriction, RestrictionMode, SubalgebraExpr, UniPoly, alpha_restriction_check, express_in
from .endo import Endo, compose, compose_all, is_involution, is_keller, jacobian_of, order
from .engines import (
    degree1_reduce,
    druzkowski2,
    invert_via_symmetry,
    parity_classify,
    symmetrize_deg2,
    symmetrize_poly,
    symmetrize_search,
    wang_special,
)
from .errors import *  # noqa: F401,F403
from .expr import parse_constant, parse_poly, parse_polys
from .field import GAUSSIAN, QQ, FieldElement, FieldTower, join, sqrt
from .harness import GenSpec, random_involution, random_keller_with_quadratic_x, random_tame
from .involutions import (
    ConjClass,
    Involution,
    SymmetryType,
    builtin,
    classify,
    conjugate,
    is_sigma_tau_morphism,
    symmetry_type,
    verify_conjugation,
)
from .poly import Parity, Poly, jacobian
from .tame import Affine, ElementaryX, ElementaryY, TameCertificate, decompose, invert, invert_certificate

__version__ = "0.1.0"
