"""Structured triangular meshes with boundary tags and uniform refinement.

Vertices are stored as an ``(nv, 2)`` array, triangles as ``(nt, 3)``
counterclockwise index triples. Edges are derived from the triangles and
carry their one or two adjacent triangles. Boundary edges are oriented so
that the adjacent triangle lies on the left.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

log = logging.getLogger(__name__)

TAG_TOL = 1e-12


class BoundaryTag(enum.IntEnum):
    INTERIOR = -1
    DIRICHLET = 0
    NEUMANN = 1
    CONTACT = 2


class ProblemKind(enum.Enum):
    OBSTACLE = "obstacle"
    SIGNORINI = "signorini"


#: maps boundary edge midpoints (m, 2) to integer tags (m,)
Tagger = Callable[[np.ndarray], np.ndarray]


def all_dirichlet(midpoints: np.ndarray) -> np.ndarray:
    return np.full(len(midpoints), BoundaryTag.DIRICHLET, dtype=np.int64)


@dataclass(frozen=True, eq=False)
class Mesh:
    """Conforming triangulation of a polygonal domain.

    Attributes
    ----------
    vertices : (nv, 2) float array
    triangles : (nt, 3) int array, counterclockwise
    edges : (ne, 2) int array of vertex pairs
    edge_triangles : (ne, 2) int array, second column -1 on the boundary
    boundary_tags : (ne,) int array of :class:`BoundaryTag` values,
        ``INTERIOR`` for interior edges
    triangle_edges : (nt, 3) int array; local edge ``k`` is opposite to
        local vertex ``k``
    """

    vertices: np.ndarray
    triangles: np.ndarray
    edges: np.ndarray
    edge_triangles: np.ndarray
    boundary_tags: np.ndarray
    triangle_edges: np.ndarray

    @property
    def nv(self) -> int:
        return len(self.vertices)

    @property
    def nt(self) -> int:
        return len(self.triangles)

    @property
    def ne(self) -> int:
        return len(self.edges)

    @property
    def h(self) -> float:
        """Mesh size by the node-count convention ``1/sqrt(nv)``."""
        return float(1.0 / np.sqrt(self.nv))

    @property
    def signed_areas(self) -> np.ndarray:
        p = self.vertices[self.triangles]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    @property
    def area(self) -> float:
        return float(self.signed_areas.sum())

    @property
    def edge_lengths(self) -> np.ndarray:
        d = self.vertices[self.edges[:, 1]] - self.vertices[self.edges[:, 0]]
        return np.hypot(d[:, 0], d[:, 1])

    @property
    def boundary_edges(self) -> np.ndarray:
        return np.flatnonzero(self.edge_triangles[:, 1] < 0)

    @property
    def interior_edges(self) -> np.ndarray:
        return np.flatnonzero(self.edge_triangles[:, 1] >= 0)

    def edges_with_tag(self, tag: BoundaryTag) -> np.ndarray:
        return np.flatnonzero(self.boundary_tags == tag)

    def vertices_with_tag(self, tag: BoundaryTag) -> np.ndarray:
        return np.unique(self.edges[self.edges_with_tag(tag)])

    def dump(self, path) -> None:
        """Write the plain-text mesh format (header ``NV NT NE``)."""
        with open(path, "w") as fh:
            fh.write(f"{self.nv} {self.nt} {self.ne}\n")
            for x, y in self.vertices:
                fh.write(f"{float(x)!r} {float(y)!r}\n")
            for i, j, k in self.triangles:
                fh.write(f"{i} {j} {k}\n")
            for (i, j), tag in zip(self.edges, self.boundary_tags):
                fh.write(f"{i} {j} {int(tag)}\n")


def load_mesh(path) -> Mesh:
    """Read a mesh written by :meth:`Mesh.dump`."""
    with open(path) as fh:
        nv, nt, ne = (int(v) for v in fh.readline().split())
        data = [fh.readline().split() for _ in range(nv + nt + ne)]
    vertices = np.array(data[:nv], dtype=float)
    triangles = np.array(data[nv:nv + nt], dtype=np.int64)
    edge_rows = np.array(data[nv + nt:], dtype=np.int64).reshape(ne, 3)
    mesh = from_triangles(vertices, triangles)
    key = {tuple(sorted(e)): t for *e, t in edge_rows}
    tags = np.array([key[tuple(sorted(e))] for e in mesh.edges], dtype=np.int64)
    return _replace_tags(mesh, tags)


def from_triangles(vertices: np.ndarray, triangles: np.ndarray,
                   tagger: Tagger | None = all_dirichlet) -> Mesh:
    """Build edge connectivity and boundary tags for a triangulation.

    With ``tagger=None`` boundary edges are left ``INTERIOR`` for the caller
    to fill in.
    """
    vertices = np.ascontiguousarray(vertices, dtype=float)
    triangles = np.ascontiguousarray(triangles, dtype=np.int64)
    nt = len(triangles)

    # local edge k is opposite local vertex k, traversed counterclockwise
    local = triangles[:, [[1, 2], [2, 0], [0, 1]]].reshape(-1, 2)
    key = np.sort(local, axis=1)
    uniq, first, inverse = np.unique(key, axis=0, return_index=True,
                                     return_inverse=True)
    inverse = inverse.ravel()
    ne = len(uniq)
    owner = np.repeat(np.arange(nt), 3)

    counts = np.bincount(inverse, minlength=ne)
    if counts.max() > 2:
        raise ValueError("non-manifold triangulation: edge shared by >2 triangles")

    edge_triangles = np.full((ne, 2), -1, dtype=np.int64)
    edge_triangles[:, 0] = owner[first]
    second = np.ones(len(inverse), dtype=bool)
    second[first] = False
    edge_triangles[inverse[second], 1] = owner[second]

    # orient each edge as seen counterclockwise from its first triangle
    edges = local[first].copy()

    tags = np.full(ne, BoundaryTag.INTERIOR, dtype=np.int64)
    bnd = np.flatnonzero(counts == 1)
    if len(bnd) and tagger is not None:
        mid = 0.5 * (vertices[edges[bnd, 0]] + vertices[edges[bnd, 1]])
        tags[bnd] = np.asarray(tagger(mid), dtype=np.int64)

    mesh = Mesh(vertices, triangles, edges, edge_triangles, tags,
                inverse.reshape(nt, 3))
    _check(mesh, tagged=tagger is not None)
    return mesh


def _replace_tags(mesh: Mesh, tags: np.ndarray) -> Mesh:
    return Mesh(mesh.vertices, mesh.triangles, mesh.edges,
                mesh.edge_triangles, tags, mesh.triangle_edges)


def _check(mesh: Mesh, tagged: bool = True) -> None:
    area = mesh.signed_areas
    bad = np.flatnonzero(area <= 0)
    if len(bad):
        raise ValueError(f"triangle {bad[0]} has non-positive signed area")
    bnd = mesh.edge_triangles[:, 1] < 0
    if tagged and np.any(mesh.boundary_tags[bnd] == BoundaryTag.INTERIOR):
        raise ValueError("tagger left a boundary edge untagged")


def _grid(lo, hi, nx: int, ny: int):
    xs = np.linspace(lo[0], hi[0], nx + 1)
    ys = np.linspace(lo[1], hi[1], ny + 1)
    X, Y = np.meshgrid(xs, ys)
    return np.column_stack([X.ravel(), Y.ravel()])


def _cell_triangles(nx: int, cells_i: np.ndarray, cells_j: np.ndarray) -> np.ndarray:
    """Split grid cells (i, j) along the lower-left to upper-right diagonal."""
    v00 = cells_j * (nx + 1) + cells_i
    v10 = v00 + 1
    v01 = v00 + nx + 1
    v11 = v01 + 1
    lower = np.column_stack([v00, v10, v11])
    upper = np.column_stack([v00, v11, v01])
    return np.stack([lower, upper], axis=1).reshape(-1, 3)


def square_mesh(lo=(0.0, 0.0), hi=(1.0, 1.0), n: int = 1,
                tagger: Tagger = all_dirichlet) -> Mesh:
    """Structured mesh of a rectangle with ``n`` cells per side, 2n^2 triangles."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    if np.any(hi <= lo):
        raise ValueError("need lo < hi componentwise")
    verts = _grid(lo, hi, n, n)
    jj, ii = np.divmod(np.arange(n * n), n)
    return from_triangles(verts, _cell_triangles(n, ii, jj), tagger)


def l_shaped_mesh(n: int = 1, tagger: Tagger = all_dirichlet) -> Mesh:
    """Mesh of ``(-2,2)^2`` minus ``[0,2) x (-2,0]``.

    ``n`` is the number of cells per side of each of the three 2x2 blocks.
    The re-entrant corner at the origin is a vertex for every ``n``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    m = 2 * n
    verts = _grid((-2.0, -2.0), (2.0, 2.0), m, m)
    jj, ii = np.divmod(np.arange(m * m), m)
    keep = ~((ii >= n) & (jj < n))
    tris = _cell_triangles(m, ii[keep], jj[keep])
    used = np.unique(tris)
    renum = np.full(len(verts), -1, dtype=np.int64)
    renum[used] = np.arange(len(used))
    return from_triangles(verts[used], renum[tris], tagger)


def uniform_refine(mesh: Mesh) -> Mesh:
    """Red refinement: split every triangle into four via edge midpoints.

    New vertices are appended after the old ones in edge order, so vertex
    ``nv + e`` is the midpoint of edge ``e``. Boundary tags are inherited
    from the parent edge.
    """
    nv = mesh.nv
    mids = 0.5 * (mesh.vertices[mesh.edges[:, 0]] + mesh.vertices[mesh.edges[:, 1]])
    verts = np.vstack([mesh.vertices, mids])
    t = mesh.triangles
    m = nv + mesh.triangle_edges  # m[:, k] is the midpoint opposite vertex k
    tris = np.concatenate([
        np.column_stack([t[:, 0], m[:, 2], m[:, 1]]),
        np.column_stack([m[:, 2], t[:, 1], m[:, 0]]),
        np.column_stack([m[:, 1], m[:, 0], t[:, 2]]),
        np.column_stack([m[:, 0], m[:, 1], m[:, 2]]),
    ])
    child = from_triangles(verts, tris, tagger=None)
    tags = child.boundary_tags.copy()
    bnd = child.boundary_edges
    # each child boundary edge joins one parent vertex and one midpoint
    mid_vertex = child.edges[bnd].max(axis=1)
    tags[bnd] = mesh.boundary_tags[mid_vertex - nv]
    return _replace_tags(child, tags)


def refine(mesh: Mesh, times: int) -> Mesh:
    for _ in range(times):
        mesh = uniform_refine(mesh)
    return mesh


def prolong(coarse: Mesh, values: np.ndarray) -> np.ndarray:
    """Interpolate P1 vertex values onto ``uniform_refine(coarse)``."""
    values = np.asarray(values)
    return np.concatenate([values, 0.5 * (values[coarse.edges[:, 0]]
                                          + values[coarse.edges[:, 1]])])


@dataclass(frozen=True, eq=False)
class FaceSet:
    """Interior faces of the multiplier mesh.

    ``cells[f]`` holds the two multiplier cells adjacent to face ``f``;
    ``h`` is the face size weight and ``measure`` the face measure
    (edge length in the bulk, 1 for the point faces of a boundary polyline).
    """

    cells: np.ndarray
    h: np.ndarray
    measure: np.ndarray
    warnings: list = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.cells)


def multiplier_faces(mesh: Mesh, kind: ProblemKind) -> FaceSet:
    if kind is ProblemKind.OBSTACLE:
        inner = mesh.interior_edges
        lengths = mesh.edge_lengths[inner]
        return FaceSet(mesh.edge_triangles[inner].copy(), lengths, lengths.copy())

    contact = mesh.edges_with_tag(BoundaryTag.CONTACT)
    if len(contact) < 2:
        msg = f"{len(contact)} contact edge(s): no multiplier faces, stabilization disabled"
        log.warning(msg)
        return FaceSet(np.zeros((0, 2), dtype=np.int64), np.zeros(0), np.zeros(0), [msg])

    # multiplier cell c is contact edge contact[c]; faces are shared endpoints
    ends = mesh.edges[contact].ravel()
    cell = np.repeat(np.arange(len(contact)), 2)
    order = np.argsort(ends, kind="stable")
    ends, cell = ends[order], cell[order]
    shared = np.flatnonzero(ends[1:] == ends[:-1])
    pairs = np.column_stack([cell[shared], cell[shared + 1]])
    lengths = mesh.edge_lengths[contact]
    h = 0.5 * (lengths[pairs[:, 0]] + lengths[pairs[:, 1]])
    return FaceSet(pairs, h, np.ones(len(pairs)))
