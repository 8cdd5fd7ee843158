"""Matrix measures on the real line and the spectral theory built on them."""
from .borel import BorelSet, Interval, parse_set
from .cyclic import HermitianOperator, VectorSystem, build_cst, spectral_matrix_measure, verify_xmue
from .errors import MatMeasureError, ValidationError
from .l2 import L2Class, VectorFunction, inner, is_zero_layer, seminorm
from .measure import MatrixMeasure, evaluate, restrict, trace_measure
from .multop import MultOp, PiecewiseScalarFn

__all__ = [
    "BorelSet", "Interval", "parse_set",
    "HermitianOperator", "VectorSystem", "build_cst", "spectral_matrix_measure", "verify_xmue",
    "MatMeasureError", "ValidationError",
    "L2Class", "VectorFunction", "inner", "is_zero_layer", "seminorm",
    "MatrixMeasure", "evaluate", "restrict", "trace_measure",
    "MultOp", "PiecewiseScalarFn",
]
__version__ = "0.1.0"
