"""Exact engine for beaded Jacobi diagrams."""

from ._kernel import BACKEND
from .diagram import (
    Diagram,
    DiagramError,
    DiagramSum,
    SignedCanonical,
    attach_hair,
    canonicalize,
    disjoint_union,
    euler_degree,
    join_hairs,
    simplify,
    vassiliev_degree,
)
from .laurent import HairSeries, LaurentPoly, lp_add, lp_exp_substitute, lp_mul, parse_laurent

__version__ = "0.1.0"
