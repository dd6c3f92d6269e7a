"""Complete no-fit polygons by convex decomposition and graph merging."""
from .boolean import BoolOp, boolean
from .convex_nfp import convex_nfp, minkowski_sum_convex
from .decomposition import decompose, validate_decomposition
from .extraction import NfpResult, extract_all
from .geometry import Contour, GeometryError, Piece, Point
from .kernels import backend_name
from .merge import gen_nfp

__version__ = "0.1.0"

__all__ = [
    "BoolOp", "Contour", "GeometryError", "NfpResult", "Piece", "Point",
    "backend_name", "boolean", "convex_nfp", "decompose", "extract_all",
    "gen_nfp", "minkowski_sum_convex", "validate_decomposition",
]
