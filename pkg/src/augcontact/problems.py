"""The three benchmark problems: smooth obstacle, L-shaped obstacle, Signorini."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .mesh import (TAG_TOL, BoundaryTag, Mesh, ProblemKind, all_dirichlet,
                   l_shaped_mesh, refine, square_mesh)

Field = Callable[[np.ndarray, np.ndarray], np.ndarray]


class Benchmark(enum.Enum):
    SMOOTH_OBSTACLE = "smooth-obstacle"
    NONSMOOTH_OBSTACLE = "nonsmooth-obstacle"
    SIGNORINI = "signorini"


@dataclass(frozen=True)
class ProblemSpec:
    """A benchmark problem.

    ``base_mesh`` is level 0; level ``l`` is ``l`` uniform refinements of it.
    ``theory_s`` is the exponent of the a-priori theory
    (``gamma = gamma0 * h**(2*theory_s)``); runs default to ``gamma ~ h``.
    """

    benchmark: Benchmark
    kind: ProblemKind
    base_mesh: Callable[[], Mesh]
    load: Field
    dirichlet: Field | None
    exact: Field | None
    exact_grad: Callable[[np.ndarray, np.ndarray], tuple] | None
    gamma0: float
    theory_s: float
    default_s: float = 0.5
    area: float = 1.0

    @property
    def name(self) -> str:
        return self.benchmark.value

    @property
    def has_exact(self) -> bool:
        return self.exact is not None

    def mesh(self, level: int) -> Mesh:
        return refine(self.base_mesh(), level)


# -- smooth obstacle -------------------------------------------------------

R0 = 0.25


def smooth_exact(x, y):
    return -np.maximum(x * x + y * y - R0 ** 2, 0.0) ** 2


def smooth_exact_grad(x, y):
    c = -4.0 * np.maximum(x * x + y * y - R0 ** 2, 0.0)
    return c * x, c * y


def smooth_load(x, y):
    r2 = x * x + y * y
    s = r2 - R0 ** 2
    return np.where(r2 <= R0 ** 2, 8 * R0 ** 2 * (1 - s), 8 * (r2 + s))


def smooth_obstacle() -> ProblemSpec:
    return ProblemSpec(
        benchmark=Benchmark.SMOOTH_OBSTACLE,
        kind=ProblemKind.OBSTACLE,
        base_mesh=lambda: square_mesh((-1.0, -1.0), (1.0, 1.0), 2, all_dirichlet),
        load=smooth_load,
        dirichlet=smooth_exact,
        exact=smooth_exact,
        exact_grad=smooth_exact_grad,
        gamma0=0.01,
        theory_s=1.0,
        area=4.0,
    )


# -- nonsmooth obstacle on the L-shape -------------------------------------

def cutoff(r):
    """C^2 cutoff: 1 for r <= 1/4, 0 for r >= 3/4, quintic in between.

    Returns the value and the first two derivatives in ``r``.
    """
    t = 2.0 * (np.asarray(r, dtype=float) - 0.25)
    mid = (t >= 0) & (t < 1)
    tm = np.where(mid, t, 0.0)
    g = np.where(t < 0, 1.0, np.where(mid, -6 * tm**5 + 15 * tm**4 - 10 * tm**3 + 1, 0.0))
    dg = np.where(mid, 2.0 * (-30 * tm**4 + 60 * tm**3 - 30 * tm**2), 0.0)
    d2g = np.where(mid, 4.0 * (-120 * tm**3 + 180 * tm**2 - 60 * tm), 0.0)
    return g, dg, d2g


def polar_angle(x, y):
    """Angle in [0, 2pi); the L-shape occupies [0, 3pi/2]."""
    phi = np.arctan2(y, x)
    return np.where(phi < 0, phi + 2 * np.pi, phi)


def nonsmooth_exact(x, y):
    r = np.hypot(x, y)
    g, _, _ = cutoff(r)
    return -r ** (2 / 3) * g * np.sin(2 * polar_angle(x, y) / 3)


def nonsmooth_exact_grad(x, y):
    r = np.hypot(x, y)
    phi = polar_angle(x, y)
    g, dg, _ = cutoff(r)
    rs = np.where(r > 0, r, 1.0)
    s, c = np.sin(2 * phi / 3), np.cos(2 * phi / 3)
    du_dr = -((2 / 3) * rs ** (-1 / 3) * g + rs ** (2 / 3) * dg) * s
    du_dphi_r = -(2 / 3) * rs ** (-1 / 3) * g * c
    gx = du_dr * np.cos(phi) - du_dphi_r * np.sin(phi)
    gy = du_dr * np.sin(phi) + du_dphi_r * np.cos(phi)
    return np.where(r > 0, gx, 0.0), np.where(r > 0, gy, 0.0)


def nonsmooth_load(x, y):
    """``-Laplace(u_exact)`` plus the contact force ``1`` beyond r = 5/4."""
    r = np.hypot(x, y)
    s = np.sin(2 * polar_angle(x, y) / 3)
    _, dg, d2g = cutoff(r)
    rs = np.where(r > 0, r, 1.0)
    bulk = rs ** (2 / 3) * s * (dg / rs + d2g) + (4 / 3) * rs ** (-1 / 3) * dg * s
    contact = np.where(r <= 1.25, 0.0, 1.0)
    return np.where(r > 0, bulk, 0.0) + contact


def nonsmooth_obstacle() -> ProblemSpec:
    return ProblemSpec(
        benchmark=Benchmark.NONSMOOTH_OBSTACLE,
        kind=ProblemKind.OBSTACLE,
        base_mesh=lambda: l_shaped_mesh(1, all_dirichlet),
        load=nonsmooth_load,
        dirichlet=nonsmooth_exact,
        exact=nonsmooth_exact,
        exact_grad=nonsmooth_exact_grad,
        gamma0=0.01,
        theory_s=1.0,
        area=12.0,
    )


# -- Signorini on the unit square ------------------------------------------

def signorini_tagger(mid: np.ndarray) -> np.ndarray:
    tags = np.full(len(mid), BoundaryTag.NEUMANN, dtype=np.int64)
    tags[np.abs(mid[:, 1]) < TAG_TOL] = BoundaryTag.CONTACT
    tags[np.abs(mid[:, 1] - 1.0) < TAG_TOL] = BoundaryTag.DIRICHLET
    return tags


def signorini_load(x, y):
    return -2 * np.pi * np.sin(2 * np.pi * x)


def signorini() -> ProblemSpec:
    return ProblemSpec(
        benchmark=Benchmark.SIGNORINI,
        kind=ProblemKind.SIGNORINI,
        base_mesh=lambda: square_mesh((0.0, 0.0), (1.0, 1.0), 2, signorini_tagger),
        load=signorini_load,
        dirichlet=None,
        exact=None,
        exact_grad=None,
        gamma0=0.1,
        theory_s=0.5,
        area=1.0,
    )


PROBLEMS = {
    Benchmark.SMOOTH_OBSTACLE: smooth_obstacle,
    Benchmark.NONSMOOTH_OBSTACLE: nonsmooth_obstacle,
    Benchmark.SIGNORINI: signorini,
}


def get_problem(name: str | Benchmark) -> ProblemSpec:
    return PROBLEMS[Benchmark(name)]()
