"""Exact factorisation of max-plus tropical polynomials over a positive basis of
lattice polytopes."""

from .basis import (
    BasisError,
    BasisSet,
    NotRepresentableError,
    Orientation,
    PositiveBasisReport,
    SignedDecomposition,
    build_basis,
    check_positive_basis,
    complete_graph_basis,
    es_membership,
    graphical_basis,
    homogenize_polytope,
    is_canonical,
    is_hierarchical,
    orientation_extract,
    simplex,
)
from .factorization import (
    Factorization,
    MembershipResult,
    NotInNSError,
    NotInZSError,
    RationalFactorization,
    UncertifiedBasisError,
    Verdict,
    factor_ns,
    membership,
    rational_factor,
    verify_factorization,
)
from .fixtures import FixtureError, WeightedGraph, load_fixture, spanning_tree_polynomial
from .geometry import Polytope, convex_hull, equivalent, face_in_direction
from .intlinalg import NoSolutionError
from .minkowski import (
    HMatrix,
    b_additivity_check,
    b_constant,
    h_matrix,
    is_summand,
    minkowski_sum,
    signed_difference,
)
from .oracle import (
    MixedWitness,
    OracleLimitError,
    bruteforce_ns_membership,
    can_peel_unit,
    cayley_check,
)
from .tropical import (
    Cell,
    CellFunctional,
    RegularSubdivision,
    TropicalPoly,
    equal_as_complexes,
    equal_as_functions,
    format_poly,
    dehomogenize,
    homogenize,
    is_unit,
    legendre_value,
    multiply,
    parse_poly,
    product,
    regular_subdivision,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "b_additivity_check",
    "b_constant",
    "BasisError",
    "BasisSet",
    "bruteforce_ns_membership",
    "build_basis",
    "can_peel_unit",
    "cayley_check",
    "Cell",
    "CellFunctional",
    "check_positive_basis",
    "complete_graph_basis",
    "convex_hull",
    "dehomogenize",
    "equal_as_complexes",
    "equal_as_functions",
    "equivalent",
    "es_membership",
    "face_in_direction",
    "factor_ns",
    "Factorization",
    "FixtureError",
    "format_poly",
    "graphical_basis",
    "h_matrix",
    "HMatrix",
    "homogenize",
    "homogenize_polytope",
    "is_canonical",
    "is_hierarchical",
    "is_summand",
    "is_unit",
    "legendre_value",
    "load_fixture",
    "membership",
    "MembershipResult",
    "minkowski_sum",
    "MixedWitness",
    "multiply",
    "NoSolutionError",
    "NotInNSError",
    "NotInZSError",
    "NotRepresentableError",
    "OracleLimitError",
    "Orientation",
    "orientation_extract",
    "parse_poly",
    "Polytope",
    "PositiveBasisReport",
    "product",
    "rational_factor",
    "RationalFactorization",
    "regular_subdivision",
    "RegularSubdivision",
    "signed_difference",
    "SignedDecomposition",
    "simplex",
    "spanning_tree_polynomial",
    "TropicalPoly",
    "UncertifiedBasisError",
    "Verdict",
    "verify_factorization",
    "WeightedGraph",
]
