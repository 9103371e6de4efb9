"""Birational reparametrization of rational surface parametrizations.

Given P = (p1 : p2 : p3 : p4) of map degree n, find a plane map S and a
birational Q with P = Q o S.  Exact arithmetic over Q throughout.
"""

__version__ = "0.1.0"

from .baselocus import (
    BaseLocusReport,
    Divisor,
    HypothesisError,
    LinearSystem,
    PointClass,
    base_locus,
    base_points,
    divisor_D,
    implicit_equation,
    linear_system_basis,
    mult_base_point,
    surface_degree,
    transversality_check,
)
from .fiber import (
    InconsistencyError,
    PlaneMap,
    ProjParam,
    deg_map_param,
    deg_map_planemap,
    fiber_ideal,
    fiber_of_planemap,
    fibers_equal,
    gstar,
    r_polynomials,
)
from .groebner import ShapeFiber, buchberger
from .polycore import MPoly, ParseError, RatFrac, VarTable, parse, resultant
from .reparam import (
    BudgetExhausted,
    Certificate,
    HypothesisFailure,
    NotTransversalError,
    ReparamSolution,
    build_Q,
    implicitize_linear_z,
    pick_point,
    reparametrize_empty_base,
    reparametrize_general,
    verify_solution,
)
from .solspace import ConstraintSets, solspace_algorithm

__all__ = [name for name in dir() if not name.startswith("_")]
