"""Numerical laboratory for Bohr-type inequalities on the unit disk."""

from .constants import CATALOG, radius, reproduce
from .disk_series import (
    BlaschkeProduct,
    Dilated,
    DiskFunction,
    Explicit,
    HalfPlane,
    Koebe,
    Moebius,
    Polynomial,
    TruncationPolicy,
    area_odds,
    area_ratio,
    coeff,
    evaluate,
    majorant_tail,
    quadratic_sum,
    sup_modulus,
)
from .errors import (
    BohrLabError,
    BracketError,
    ConvergenceError,
    DomainError,
    KindMismatchError,
    SingularInputError,
)
from .functionals import FunctionalSpec, lhs, rhs, stated_radius
from .harmonic import HarmonicPair, co_majorant, extremal_pair, lemma51_margin
from .search import RootResult, find_root
from .verify import GridSpec, boundary_equality, branch_maximize, envelope_suite, sharpness_probe, verify_grid

__version__ = "0.1.0"
