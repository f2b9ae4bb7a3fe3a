"""Contact residuals and generalized Jacobians for the four formulations.

Unknowns are ordered ``U = [u (free primal DOFs), lam (multiplier cells)]``.
Formulation 1 uses the sign convention in which its residual is the
gradient of the augmented Lagrangian functional, so its Jacobian is
symmetric; the multiplier rows read

    -<[u - gamma*lam]_+ + gamma*lam, mu>_C - s(lam, mu) = 0.

Formulation 2 has multiplier rows

    <u + [gamma*lam - u]_+, mu>_C + s(lam, mu) = 0

and primal rows ``a(u, v) - <lam, v>_C - (f, v)``. The ``-alt`` variants
split the positive part with ``[-x]_+ = [x]_+ - x`` and agree with their
parent formulation for every argument.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from . import _core
from .assembly import DiscreteSystem


class Formulation(enum.Enum):
    F1 = "f1"
    F1_ALT = "f1-alt"
    F2 = "f2"
    F2_ALT = "f2-alt"

    @property
    def code(self) -> int:
        return _CODES[self]

    @property
    def stab_sign(self) -> float:
        return -1.0 if self in (Formulation.F1, Formulation.F1_ALT) else 1.0


_CODES = {
    Formulation.F1: _core.F1,
    Formulation.F1_ALT: _core.F1_ALT,
    Formulation.F2: _core.F2,
    Formulation.F2_ALT: _core.F2_ALT,
}


@dataclass(frozen=True)
class ContactConfig:
    """Method parameters.

    ``gamma = gamma0 * h**(2*s)``; ``s = 1/2`` gives ``gamma ~ h``.
    """

    formulation: Formulation = Formulation.F1
    gamma0: float = 0.01
    delta: float = 1.0
    s: float = 0.5

    def __post_init__(self):
        if self.gamma0 <= 0:
            raise ValueError("gamma0 must be positive")
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")

    def gamma(self, h: float) -> float:
        return gamma_of_h(self, h)


def gamma_of_h(cfg: ContactConfig, h: float) -> float:
    if h <= 0:
        raise ValueError("mesh size must be positive")
    return cfg.gamma0 * h ** (2.0 * cfg.s)


def plus(x):
    """Positive part ``max(0, x)``, elementwise for arrays."""
    return np.maximum(x, 0.0) if isinstance(x, np.ndarray) else max(0.0, x)


def p_gamma(u_val, lam_val, gamma: float, sign: int = 1):
    """``sign * (u - gamma*lam)``."""
    return sign * (u_val - gamma * lam_val)


@dataclass
class DiscreteSolution:
    u: np.ndarray
    lam: np.ndarray
    u_full: np.ndarray
    newton_iterations: int = 0
    residual_history: list = field(default_factory=list)


def _check_sizes(sys: DiscreteSystem, u, lam):
    if len(u) != sys.nu or len(lam) != sys.nl:
        raise ValueError(f"state sizes ({len(u)}, {len(lam)}) do not match "
                         f"spaces ({sys.nu}, {sys.nl})")


def _local(cfg: ContactConfig, sys: DiscreteSystem, u, lam):
    _check_sizes(sys, u, lam)
    gamma = cfg.gamma(sys.h)
    u_full = sys.primal.full(np.asarray(u, dtype=float))
    nodes = sys.mult.cell_nodes
    u_loc = np.ascontiguousarray(u_full[nodes])
    lam = np.ascontiguousarray(lam, dtype=float)
    out = _core.contact_local(cfg.formulation.code, sys.quad.phi,
                              sys.quad.weights, u_loc, lam, gamma)
    return gamma, u_full, out


def _assemble_residual(cfg, sys, gamma, u, lam, ru, rl):
    contact = np.bincount(sys.mult.cell_nodes.ravel(), ru.ravel(), minlength=sys.mesh.nv)
    r_u = sys.A @ u + contact[sys.primal.free] - sys.load
    r_l = rl + cfg.formulation.stab_sign * cfg.delta * gamma * (sys.stab @ lam)
    return r_u, r_l


def residual_parts(cfg: ContactConfig, sys: DiscreteSystem, u, lam):
    """Primal and multiplier residual blocks plus the active-point mask."""
    gamma, _, (ru, rl, _, active) = _local(cfg, sys, u, lam)
    r_u, r_l = _assemble_residual(cfg, sys, gamma, np.asarray(u, dtype=float),
                                  np.asarray(lam, dtype=float), ru, rl)
    return r_u, r_l, active


def residual(cfg: ContactConfig, sys: DiscreteSystem, u, lam) -> np.ndarray:
    """``G(U)`` over all ``M = N_V + N_Lambda`` unknowns."""
    r_u, r_l, _ = residual_parts(cfg, sys, u, lam)
    return np.concatenate([r_u, r_l])


def _jacobian_from_blocks(cfg, sys, gamma, jac) -> sp.csr_matrix:
    nc, k, _ = jac.shape
    nl = k - 1
    gidx = np.empty((nc, k), dtype=np.int64)
    gidx[:, :nl] = sys.primal.dof_of_vertex[sys.mult.cell_nodes]
    gidx[:, nl] = sys.nu + np.arange(nc)
    rows = np.repeat(gidx, k, axis=1).ravel()
    cols = np.tile(gidx, (1, k)).ravel()
    keep = (rows >= 0) & (cols >= 0)
    M = sys.size
    J = sp.csr_matrix((jac.ravel()[keep], (rows[keep], cols[keep])), shape=(M, M))
    sign = cfg.formulation.stab_sign
    static = sp.block_diag([sys.A, sign * cfg.delta * gamma * sys.stab], format="csr")
    return (J + static).tocsr()


def generalized_jacobian(cfg: ContactConfig, sys: DiscreteSystem, u, lam) -> sp.csr_matrix:
    """Newton derivative of :func:`residual` with ``H(0) = 0`` at kinks."""
    gamma, _, (_, _, jac, _) = _local(cfg, sys, u, lam)
    return _jacobian_from_blocks(cfg, sys, gamma, jac)


def linearize(cfg: ContactConfig, sys: DiscreteSystem, u, lam):
    """Residual, Jacobian and active mask from a single kernel pass."""
    gamma, _, (ru, rl, jac, active) = _local(cfg, sys, u, lam)
    r_u, r_l = _assemble_residual(cfg, sys, gamma, np.asarray(u, dtype=float),
                                  np.asarray(lam, dtype=float), ru, rl)
    J = _jacobian_from_blocks(cfg, sys, gamma, jac)
    return np.concatenate([r_u, r_l]), J, active
