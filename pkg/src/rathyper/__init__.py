"""Exact toolkit for rational bivariate hypergeometric series.

Integer lattice tools, codimension-two configuration classification,
factorial-ratio integrality, Horn series with rational reconstruction, and
one-variable toric residues. All arithmetic is exact.
"""
from .configuration import (
    Classification,
    Configuration,
    analyze,
    classify_stable_rational,
    configuration_from_gale,
    detect_cayley,
    reduced_gale,
)
from .kernels import BACKEND
from .lattice import IntMatrix, hnf, integer_right_equivalent, kernel_basis, smith_invariants
from .poly import RationalFunction, SparsePoly, equal_up_to_monomial, ratfun_equal
from .ratio1d import (
    FactorialRatioSpec,
    classify_univariate,
    family_spec,
    is_integral,
    landau_profile,
    legendre_valuation,
    valuation_check,
)
from .residue import (
    ResidueSpec,
    UniPoly,
    residue_derivative_check,
    spec_from_configuration,
    sylvester_resultant,
    toric_residue_r1,
    trace_residue_sum,
)
from .series2d import (
    QUADRANT,
    Cone,
    GaleArrangement,
    ThetaOperator,
    TruncatedSeries,
    apply_theta,
    diagonal,
    dilate_restrict,
    euler_jacobi,
    expand_rational,
    fs_series,
    horn_rationality,
    horn_series,
    minimal_cells,
    reconstruct_auto,
    reconstruct_rational,
)

__version__ = "0.1.0"
