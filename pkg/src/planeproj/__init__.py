"""Exact computations on plane curves: point conditions, projections and their branch data,
linear systems on smooth curves, Hurwitz counts, and degree-3 functions on cubics."""
from .curve import PlaneCurve, is_smooth, project_branch_divisor
from .errors import FalsificationError, PreconditionError
from .field import GF, QQ
from .hurwitz import simple_hurwitz_number
from .kernels import BACKEND
from .points import Point, parse_point
from .poly import HomogPoly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "FalsificationError", "GF", "HomogPoly", "PlaneCurve", "Point", "PreconditionError", "QQ",
    "is_smooth", "parse_point", "parse_poly", "project_branch_divisor", "simple_hurwitz_number",
]
