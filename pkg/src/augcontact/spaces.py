"""Degrees of freedom for the P1 primal space and the P0 multiplier space."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .mesh import BoundaryTag, Mesh, ProblemKind


class InvalidProblem(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PrimalSpace:
    """Continuous P1 functions with Dirichlet vertices eliminated.

    ``dof_of_vertex[v]`` is the free-DOF index of vertex ``v`` or -1 when
    the vertex is constrained. ``lift`` holds the prescribed Dirichlet
    values (zero on free vertices).
    """

    mesh: Mesh
    free: np.ndarray
    constrained: np.ndarray
    dof_of_vertex: np.ndarray
    lift: np.ndarray

    @property
    def ndofs(self) -> int:
        return len(self.free)

    def full(self, u: np.ndarray) -> np.ndarray:
        """Vertex values from free coefficients plus the Dirichlet lift."""
        out = self.lift.copy()
        out[self.free] = u
        return out


def build_primal_space(mesh: Mesh, dirichlet_tag: BoundaryTag = BoundaryTag.DIRICHLET,
                       g: Callable[[np.ndarray, np.ndarray], np.ndarray] | None = None
                       ) -> PrimalSpace:
    """Constrain every vertex on a ``dirichlet_tag`` edge.

    ``g(x, y)`` gives the Dirichlet values; homogeneous when omitted.
    """
    constrained = mesh.vertices_with_tag(dirichlet_tag)
    is_free = np.ones(mesh.nv, dtype=bool)
    is_free[constrained] = False
    free = np.flatnonzero(is_free)
    if len(free) == 0:
        raise InvalidProblem("all vertices are constrained; no unknowns")
    dof = np.full(mesh.nv, -1, dtype=np.int64)
    dof[free] = np.arange(len(free))
    lift = np.zeros(mesh.nv)
    if g is not None and len(constrained):
        xy = mesh.vertices[constrained]
        lift[constrained] = g(xy[:, 0], xy[:, 1])
    return PrimalSpace(mesh, free, constrained, dof, lift)


@dataclass(frozen=True, eq=False)
class MultiplierSpace:
    """Piecewise constants on the contact cells.

    For the obstacle problem the cells are the triangles; for Signorini
    they are the contact-tagged boundary edges. ``cell_nodes`` lists the
    mesh vertices of each cell (3 or 2 per cell).
    """

    mesh: Mesh
    kind: ProblemKind
    cells: np.ndarray
    cell_nodes: np.ndarray
    measures: np.ndarray

    @property
    def ndofs(self) -> int:
        return len(self.cells)


def build_multiplier_space(mesh: Mesh, kind: ProblemKind) -> MultiplierSpace:
    if kind is ProblemKind.OBSTACLE:
        cells = np.arange(mesh.nt)
        nodes = mesh.triangles
        measures = mesh.signed_areas
    else:
        cells = mesh.edges_with_tag(BoundaryTag.CONTACT)
        if len(cells) == 0:
            raise InvalidProblem("Signorini problem without contact edges")
        nodes = mesh.edges[cells]
        measures = mesh.edge_lengths[cells]
    return MultiplierSpace(mesh, kind, cells, np.ascontiguousarray(nodes), measures)
