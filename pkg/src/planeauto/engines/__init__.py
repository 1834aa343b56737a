"""Inversion and symmetrization engines built on the tame core."""
from .degree_one import Degree1Result, WangResult, degree1_reduce, wang_special
from .druzkowski import DruzkowskiResult, druzkowski2, linear_form
from .search import GOAL_MENU, SearchResult, symmetrize_search
from .symmetrize import (
    ParityHit,
    Step,
    SymmetrizationTranscript,
    SymmetryInverse,
    invert_via_symmetry,
    parity_classify,
    symmetrize_deg2,
    symmetrize_poly,
)
