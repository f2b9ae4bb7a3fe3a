"""Semismooth Newton (primal-dual active set) solver for ``G(U) = 0``."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .assembly import DiscreteSystem
from .contact import ContactConfig, DiscreteSolution, linearize

log = logging.getLogger(__name__)


class SingularSystem(RuntimeError):
    def __init__(self, msg: str, iteration: int | None = None):
        super().__init__(msg if iteration is None else f"{msg} (Newton iteration {iteration})")
        self.iteration = iteration


@dataclass(frozen=True)
class SolveSettings:
    tol_residual: float = 1e-10
    max_newton: int = 100
    damping: float = 1.0
    linear_solver: str = "splu"

    def __post_init__(self):
        if self.tol_residual <= 0 or self.max_newton < 1:
            raise ValueError("need tol_residual > 0 and max_newton >= 1")
        if not 0 < self.damping <= 1:
            raise ValueError("damping must lie in (0, 1]")


@dataclass
class SolveReport:
    """Diagnostics of one nonlinear solve.

    ``iterations`` counts linearizations, including the final one at which
    convergence was detected; a zero initial residual gives 1.
    """

    converged: bool = False
    iterations: int = 0
    residual: float = np.inf
    residual_history: list = field(default_factory=list)
    active_history: list = field(default_factory=list)
    linear_residuals: list = field(default_factory=list)
    reason: str = ""


def linear_solve(J, r: np.ndarray, method: str = "splu", rtol: float = 1e-12,
                 refinements: int = 3) -> tuple[np.ndarray, float]:
    """Solve ``J x = r``; returns ``x`` and the relative residual achieved.

    ``splu`` uses a sparse LU with a few steps of iterative refinement;
    ``dense`` is a LAPACK solve for small systems.
    """
    r = np.asarray(r, dtype=float)
    if J.shape[0] != J.shape[1] or J.shape[0] != len(r):
        raise ValueError("linear system shape mismatch")
    rnorm = np.linalg.norm(r)
    if rnorm == 0:
        return np.zeros_like(r), 0.0
    if method == "dense":
        Jd = J.toarray() if sp.issparse(J) else np.asarray(J)
        try:
            x = np.linalg.solve(Jd, r)
        except np.linalg.LinAlgError as exc:
            raise SingularSystem(str(exc)) from exc
        solve = lambda b: np.linalg.solve(Jd, b)  # noqa: E731
        matvec = Jd.dot
    elif method == "splu":
        Jc = sp.csc_matrix(J)
        try:
            lu = spla.splu(Jc)
        except RuntimeError as exc:
            raise SingularSystem(str(exc)) from exc
        solve = lu.solve
        matvec = Jc.dot
        x = solve(r)
    else:
        raise ValueError(f"unknown linear solver {method!r}")
    if not np.all(np.isfinite(x)):
        raise SingularSystem("non-finite solution of the linearized system")
    res = r - matvec(x)
    rel = np.linalg.norm(res) / rnorm
    for _ in range(refinements):
        if rel <= rtol:
            break
        x = x + solve(res)
        res = r - matvec(x)
        rel = np.linalg.norm(res) / rnorm
    return x, rel


def semismooth_newton(cfg: ContactConfig, sys: DiscreteSystem,
                      settings: SolveSettings = SolveSettings(),
                      initial: np.ndarray | None = None):
    """Newton iteration with the generalized derivative of ``[.]_+``.

    Stops when ``||G(U)||_2 <= tol``, or when the active quadrature points
    did not change over the last step and that step's linear solve was
    accurate (the map is affine on a fixed active set, so the iterate is
    then exact up to rounding). Hitting ``max_newton`` returns an
    unconverged report rather than raising.
    """
    U = np.zeros(sys.size) if initial is None else np.array(initial, dtype=float)
    if len(U) != sys.size:
        raise ValueError(f"initial guess has size {len(U)}, expected {sys.size}")
    report = SolveReport()
    prev_active = None
    last_lin = np.inf
    for it in range(1, settings.max_newton + 1):
        u, lam = sys.split(U)
        G, J, active = linearize(cfg, sys, u, lam)
        norm = float(np.linalg.norm(G))
        report.iterations = it
        report.residual = norm
        report.residual_history.append(norm)
        report.active_history.append(int(active.sum()))
        log.debug("newton %d: |G| = %.3e, active = %d", it, norm, active.sum())
        if norm <= settings.tol_residual:
            report.converged, report.reason = True, "residual"
            break
        if (prev_active is not None and np.array_equal(active, prev_active)
                and last_lin <= 1e-12 and settings.damping == 1.0):
            report.converged, report.reason = True, "active set"
            break
        prev_active = active
        try:
            dU, last_lin = linear_solve(J, -G, settings.linear_solver)
        except SingularSystem as exc:
            raise SingularSystem("singular linearization", it) from exc
        report.linear_residuals.append(last_lin)
        U = U + settings.damping * dU
    else:
        report.reason = "iteration cap"
    u, lam = sys.split(U)
    sol = DiscreteSolution(u.copy(), lam.copy(), sys.primal.full(u),
                           report.iterations, list(report.residual_history))
    return sol, report
