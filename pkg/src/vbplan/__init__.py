"""View-based STRIPS planning over a kitchen domain.

Problems are solved either standalone or view by view, where each view keeps
only a subset of the predicates and the plan found in one view narrows the
actions offered in the next.
"""

from ._backend import BACKEND, available_backends
from .ground import GroundTask, instantiate
from .model import (ActionSchema, Domain, GroundAction, ModelError, Plan, Problem,
                    ValidationReport, validate)
from .parser import (ParseError, ViewSpec, parse_domain, parse_plan, parse_problem,
                     parse_views, serialize_domain, serialize_plan, serialize_problem)
from .search import Outcome, SolveResult, SolverKind, brute_force_optimal, solve
from .vbp import VbpRun, filter_action, filter_problem, modify, run

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "available_backends",
    "GroundTask", "instantiate",
    "ActionSchema", "Domain", "GroundAction", "ModelError", "Plan", "Problem",
    "ValidationReport", "validate",
    "ParseError", "ViewSpec", "parse_domain", "parse_plan", "parse_problem", "parse_views",
    "serialize_domain", "serialize_plan", "serialize_problem",
    "Outcome", "SolveResult", "SolverKind", "brute_force_optimal", "solve",
    "VbpRun", "filter_action", "filter_problem", "modify", "run",
]
