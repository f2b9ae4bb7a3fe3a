"""Augmented Lagrangian multiplier finite elements for contact problems.

P1 displacements, piecewise-constant multipliers with interior-penalty
jump stabilization, and a semismooth Newton solver, for the obstacle
problem and the scalar Signorini problem in 2D.
"""
from .contact import (ContactConfig, DiscreteSolution, Formulation, gamma_of_h,
                      generalized_jacobian, p_gamma, plus, residual)
from .harness import ConvergenceTable, emit_outputs, h1_error, l2_error, run_study
from .mesh import (BoundaryTag, FaceSet, Mesh, ProblemKind, l_shaped_mesh,
                   multiplier_faces, square_mesh, uniform_refine)
from .problems import Benchmark, get_problem, nonsmooth_obstacle, signorini, smooth_obstacle
from .solver import SolveReport, SolveSettings, linear_solve, semismooth_newton

__version__ = "0.1.0"

__all__ = [
    "Benchmark", "BoundaryTag", "ContactConfig", "ConvergenceTable", "DiscreteSolution",
    "FaceSet", "Formulation", "Mesh", "ProblemKind", "SolveReport", "SolveSettings",
    "emit_outputs", "gamma_of_h", "generalized_jacobian", "get_problem", "h1_error",
    "l2_error", "l_shaped_mesh", "linear_solve", "multiplier_faces", "nonsmooth_obstacle",
    "p_gamma", "plus", "residual", "run_study", "semismooth_newton", "signorini",
    "smooth_obstacle", "square_mesh", "uniform_refine",
]
