"""Sparse assembly of the linear forms and the contact quadrature data."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.sparse as sp

from . import _core
from .mesh import FaceSet, Mesh
from .quadrature import ASSEMBLY_SEGMENT, ASSEMBLY_TRIANGLE, QuadratureRule
from .spaces import MultiplierSpace, PrimalSpace

ScalarField = Callable[[np.ndarray, np.ndarray], np.ndarray]


def stiffness_full(mesh: Mesh) -> sp.csr_matrix:
    """Stiffness matrix over all vertices, Dirichlet rows included."""
    coords = np.ascontiguousarray(mesh.vertices[mesh.triangles])
    local = _core.element_stiffness(coords)
    rows = np.repeat(mesh.triangles, 3, axis=1).ravel()
    cols = np.tile(mesh.triangles, (1, 3)).ravel()
    return sp.csr_matrix((local.ravel(), (rows, cols)), shape=(mesh.nv, mesh.nv))


def assemble_stiffness(space: PrimalSpace) -> sp.csr_matrix:
    """``a(u, v) = (grad u, grad v)`` restricted to the free DOFs."""
    A = stiffness_full(space.mesh)
    return A[space.free][:, space.free].tocsr()


def triangle_points(mesh: Mesh, rule: QuadratureRule):
    """Physical quadrature points ``(nt, nq, 2)`` and weights ``(nt, nq)``."""
    p = mesh.vertices[mesh.triangles]
    pts = np.einsum("qa,tad->tqd", rule.points, p)
    w = mesh.signed_areas[:, None] * rule.weights[None, :]
    return pts, w


def load_full(mesh: Mesh, f: ScalarField, rule: QuadratureRule = ASSEMBLY_TRIANGLE) -> np.ndarray:
    """``(f, phi_i)`` for every vertex ``i``."""
    pts, w = triangle_points(mesh, rule)
    fq = f(pts[..., 0], pts[..., 1]) * w
    local = np.einsum("tq,qa->ta", fq, rule.points)
    return np.bincount(mesh.triangles.ravel(), local.ravel(), minlength=mesh.nv)


def assemble_load(space: PrimalSpace, f: ScalarField,
                  rule: QuadratureRule = ASSEMBLY_TRIANGLE,
                  A_full: sp.spmatrix | None = None) -> np.ndarray:
    """Load over the free DOFs minus the stiffness action on the Dirichlet lift."""
    if A_full is None:
        A_full = stiffness_full(space.mesh)
    b = load_full(space.mesh, f, rule) - A_full @ space.lift
    return b[space.free]


@dataclass(frozen=True, eq=False)
class ContactQuadrature:
    """P1 basis values and weights at the quadrature points of contact cells."""

    phi: np.ndarray      # (nc, nq, nl)
    weights: np.ndarray  # (nc, nq)
    points: np.ndarray   # (nc, nq, 2)


def contact_quadrature(ms: MultiplierSpace, rule: QuadratureRule | None = None) -> ContactQuadrature:
    nc, nl = ms.cell_nodes.shape
    if rule is None:
        rule = ASSEMBLY_TRIANGLE if nl == 3 else ASSEMBLY_SEGMENT
    if rule.points.shape[1] != nl:
        raise ValueError("quadrature rule does not match the multiplier cells")
    coords = ms.mesh.vertices[ms.cell_nodes]
    pts = np.einsum("qa,cad->cqd", rule.points, coords)
    phi = np.ascontiguousarray(np.broadcast_to(rule.points, (nc,) + rule.points.shape))
    w = np.ascontiguousarray(ms.measures[:, None] * rule.weights[None, :])
    return ContactQuadrature(phi, w, pts)


def coupling_full(ms: MultiplierSpace) -> sp.csr_matrix:
    """``B[i, K] = integral of phi_i over cell K`` for every vertex ``i``."""
    nc, nl = ms.cell_nodes.shape
    vals = np.repeat(ms.measures / nl, nl)
    cols = np.repeat(np.arange(nc), nl)
    return sp.csr_matrix((vals, (ms.cell_nodes.ravel(), cols)), shape=(ms.mesh.nv, nc))


def coupling_matrix(space: PrimalSpace, ms: MultiplierSpace) -> sp.csr_matrix:
    return coupling_full(ms)[space.free].tocsr()


def assemble_stabilization(ms: MultiplierSpace, faces: FaceSet,
                           delta: float, gamma: float) -> sp.csr_matrix:
    """Interior-penalty matrix on multiplier jumps.

    Each face between cells (K+, K-) adds
    ``delta * gamma * h_F * |F| * (e+ - e-)(e+ - e-)^T``.
    """
    if delta < 0 or gamma <= 0:
        raise ValueError("need delta >= 0 and gamma > 0")
    n = ms.ndofs
    if len(faces) == 0:
        return sp.csr_matrix((n, n))
    c = delta * gamma * faces.h * faces.measure
    p, m = faces.cells[:, 0], faces.cells[:, 1]
    rows = np.concatenate([p, m, p, m])
    cols = np.concatenate([p, m, m, p])
    vals = np.concatenate([c, c, -c, -c])
    return sp.csr_matrix((vals, (rows, cols)), shape=(n, n))


@dataclass(frozen=True, eq=False)
class DiscreteSystem:
    """Everything the nonlinear solver needs for one mesh.

    ``stab`` is the stabilization matrix for ``delta = gamma = 1``; the
    formulation scales it. ``h`` is the node-count mesh size.
    """

    primal: PrimalSpace
    mult: MultiplierSpace
    faces: FaceSet
    A_full: sp.csr_matrix
    A: sp.csr_matrix
    load: np.ndarray
    quad: ContactQuadrature
    stab: sp.csr_matrix
    h: float

    @property
    def mesh(self) -> Mesh:
        return self.primal.mesh

    @property
    def nu(self) -> int:
        return self.primal.ndofs

    @property
    def nl(self) -> int:
        return self.mult.ndofs

    @property
    def size(self) -> int:
        return self.nu + self.nl

    def split(self, U: np.ndarray):
        return U[:self.nu], U[self.nu:]


def assemble_system(primal: PrimalSpace, mult: MultiplierSpace, faces: FaceSet,
                    f: ScalarField) -> DiscreteSystem:
    A_full = stiffness_full(primal.mesh)
    A = A_full[primal.free][:, primal.free].tocsr()
    load = assemble_load(primal, f, A_full=A_full)
    quad = contact_quadrature(mult)
    stab = assemble_stabilization(mult, faces, 1.0, 1.0)
    return DiscreteSystem(primal, mult, faces, A_full, A, load, quad, stab,
                          primal.mesh.h)
