"""Bivariate engine: arrangements, Horn series, expansions, reconstruction."""
from .arrangement import CellsResult, GaleArrangement, MinimalCell, chambers, euler_jacobi, minimal_cells
from .horn import HornVerdict, fs_closed_form, horn_rationality
from .reconstruct import InsufficientTruncation, Reconstruction, reconstruct_auto, reconstruct_rational
from .series import (
    QUADRANT,
    Cone,
    ThetaOperator,
    TruncatedSeries,
    UnknownCoefficient,
    apply_theta,
    diagonal,
    dilate_restrict,
    expand_rational,
    fs_series,
    horn_coefficient,
    horn_series,
    series_from_function,
)
