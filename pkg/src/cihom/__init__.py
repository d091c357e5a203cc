"""Complete-intersection classes of graded local ring homomorphisms.

Rings are quotients of weighted polynomial rings over Q or F_p by homogeneous
ideals.  The package computes ring invariants, Koszul homology, deviations
of the residue field and the ci / qci / mci / fci / rci verdicts for maps.
"""

from .errors import (
    CIHomError,
    IllDefinedMapError,
    NotHomogeneousError,
    ParseError,
    ResourceLimitError,
    RingMismatchError,
    TheoremMismatch,
)
from .field import GF, QQ, Field
from .poly import PolyRing, Polynomial
from .ideal import GradedAlgebra, HomogeneousIdeal
from .modules import PresentedModule, minimal_free_resolution
from .koszul import KoszulComplex, grade, koszul_homology
from .invariants import RingInvariants, ring_invariants
from .deviations import DeviationProfile, deviation_profile
from .maps import GradedMap, MapClassification, ci_defect, classify, regular_factorization
from .parsing import load_map, load_ring, parse_map, parse_polynomial, parse_ring, print_ring

__version__ = "0.1.0"

__all__ = [
    "CIHomError", "IllDefinedMapError", "NotHomogeneousError", "ParseError",
    "ResourceLimitError", "RingMismatchError", "TheoremMismatch",
    "GF", "QQ", "Field", "PolyRing", "Polynomial",
    "GradedAlgebra", "HomogeneousIdeal", "PresentedModule", "minimal_free_resolution",
    "KoszulComplex", "grade", "koszul_homology",
    "RingInvariants", "ring_invariants", "DeviationProfile", "deviation_profile",
    "GradedMap", "MapClassification", "ci_defect", "classify", "regular_factorization",
    "load_map", "load_ring", "parse_map", "parse_polynomial", "parse_ring", "print_ring",
]
