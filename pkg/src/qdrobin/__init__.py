"""dbar-Robin eigencurves, quantum-dot Dirac eigenvalues and their geometric bounds."""

from .bounds import (BoundReport, b_function, benguria_lower, fk_all_condition, fk_some_params,
                     lambda_bounds, mu_bounds, raulot_q_lower)
from .disk import LAMBDA_UNIT_DISK, disk_constants, lambda_disk, mu_disk
from .fem import ConvergenceError, FemMuEvaluator, dbar_robin_mu, dirichlet_lambda, mu_curve, robin_mu
from .geometry import DomainError, DomainSpec, geometric_summary, load_domain
from .link import LinkParams, RecipeError, classify_bound, solve_lambda, vartheta, vartheta_inv
from .mesh import Mesh, build_mesh
from .steklov import steklov_q

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "ConvergenceError", "DomainError", "DomainSpec", "FemMuEvaluator",
    "LAMBDA_UNIT_DISK", "LinkParams", "Mesh", "RecipeError", "b_function", "benguria_lower",
    "build_mesh", "classify_bound", "dbar_robin_mu", "dirichlet_lambda", "disk_constants",
    "fk_all_condition", "fk_some_params", "geometric_summary", "lambda_bounds", "lambda_disk",
    "load_domain", "mu_bounds", "mu_curve", "mu_disk", "raulot_q_lower", "robin_mu",
    "solve_lambda", "steklov_q", "vartheta", "vartheta_inv",
]
