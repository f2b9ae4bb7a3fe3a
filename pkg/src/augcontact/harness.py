"""Convergence studies: refinement sequences, error norms, CSV and SVG output."""
from __future__ import annotations

import csv
import io
import logging
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .assembly import DiscreteSystem, assemble_system, triangle_points
from .contact import ContactConfig
from .mesh import Mesh, multiplier_faces, prolong, uniform_refine
from .problems import Benchmark, ProblemSpec
from .quadrature import ERROR_TRIANGLE, QuadratureRule
from .solver import SolveReport, SolveSettings, SingularSystem, semismooth_newton
from .spaces import build_multiplier_space, build_primal_space

log = logging.getLogger(__name__)

CSV_HEADER = ["level", "nno", "h", "err_l2", "err_h1", "ord_l2", "ord_h1", "newton_its"]

#: reference slopes drawn next to each study (H1, L2)
REFERENCE_SLOPES = {
    Benchmark.SMOOTH_OBSTACLE: (1.0, 2.0),
    Benchmark.NONSMOOTH_OBSTACLE: (1.0, 5.0 / 3.0),
    Benchmark.SIGNORINI: (1.0, 2.0),
}


class MeshHierarchy:
    """Nested uniformly refined meshes with exact P1 prolongation."""

    def __init__(self, base: Mesh):
        self._meshes = [base]

    def mesh(self, level: int) -> Mesh:
        while len(self._meshes) <= level:
            self._meshes.append(uniform_refine(self._meshes[-1]))
        return self._meshes[level]

    def prolong(self, values: np.ndarray, src: int, dst: int) -> np.ndarray:
        if dst < src:
            raise ValueError("can only prolong to finer levels")
        for lev in range(src, dst):
            values = prolong(self.mesh(lev), values)
        return values


@dataclass
class Reference:
    """Overkill solution: P1 vertex values on ``hierarchy.mesh(level)``."""

    hierarchy: MeshHierarchy
    level: int
    values: np.ndarray

    @property
    def mesh(self) -> Mesh:
        return self.hierarchy.mesh(self.level)


def p1_at_points(mesh: Mesh, u: np.ndarray, rule: QuadratureRule) -> np.ndarray:
    return np.einsum("qa,ta->tq", rule.points, u[mesh.triangles])


def p1_gradients(mesh: Mesh, u: np.ndarray) -> np.ndarray:
    """Elementwise constant gradients ``(nt, 2)`` of a P1 function."""
    p = mesh.vertices[mesh.triangles]
    d1 = p[:, 1] - p[:, 0]
    d2 = p[:, 2] - p[:, 0]
    det = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    U = u[mesh.triangles]
    a = U[:, 1] - U[:, 0]
    b = U[:, 2] - U[:, 0]
    return np.column_stack([(a * d2[:, 1] - b * d1[:, 1]) / det,
                            (b * d1[:, 0] - a * d2[:, 0]) / det])


def _on_reference(u_h, mesh, ref: Reference, level: int | None):
    if level is None:
        # locate the level of ``mesh`` in the hierarchy by vertex count
        level = next(k for k in range(ref.level + 1) if ref.hierarchy.mesh(k).nv == mesh.nv)
    return ref.hierarchy.prolong(u_h, level, ref.level)


def l2_error(u_h: np.ndarray, exact: Callable | Reference, mesh: Mesh,
             rule: QuadratureRule = ERROR_TRIANGLE, level: int | None = None) -> float:
    """L2 norm of ``u_h - exact``; ``u_h`` are vertex values on ``mesh``.

    With a :class:`Reference`, ``u_h`` is prolonged onto the reference mesh
    and both P1 functions are compared there.
    """
    if isinstance(exact, Reference):
        diff = _on_reference(u_h, mesh, exact, level) - exact.values
        return l2_error(diff, lambda x, y: np.zeros_like(x), exact.mesh, rule)
    pts, w = triangle_points(mesh, rule)
    e = p1_at_points(mesh, np.asarray(u_h, dtype=float), rule) - exact(pts[..., 0], pts[..., 1])
    return float(np.sqrt(np.sum(w * e * e)))


def h1_error(u_h: np.ndarray, exact_grad: Callable | Reference, mesh: Mesh,
             rule: QuadratureRule = ERROR_TRIANGLE, level: int | None = None) -> float:
    """H1 seminorm of ``u_h - exact``."""
    if isinstance(exact_grad, Reference):
        diff = _on_reference(u_h, mesh, exact_grad, level) - exact_grad.values
        g = p1_gradients(exact_grad.mesh, diff)
        return float(np.sqrt(np.sum(exact_grad.mesh.signed_areas * (g ** 2).sum(axis=1))))
    pts, w = triangle_points(mesh, rule)
    g = p1_gradients(mesh, np.asarray(u_h, dtype=float))
    gx, gy = exact_grad(pts[..., 0], pts[..., 1])
    e2 = (g[:, :1] - gx) ** 2 + (g[:, 1:] - gy) ** 2
    return float(np.sqrt(np.sum(w * e2)))


# -- tables ---------------------------------------------------------------

@dataclass
class Row:
    level: int
    nno: int
    h: float
    err_l2: float
    err_h1: float
    newton_its: int
    converged: bool = True
    ord_l2: float | None = None
    ord_h1: float | None = None


@dataclass
class ConvergenceTable:
    problem: str
    rows: list = field(default_factory=list)
    slopes: tuple = (1.0, 2.0)

    def add(self, row: Row) -> None:
        if self.rows:
            prev = self.rows[-1]
            ratio = math.log(prev.h / row.h)
            row.ord_l2 = math.log(prev.err_l2 / row.err_l2) / ratio
            row.ord_h1 = math.log(prev.err_h1 / row.err_h1) / ratio
        self.rows.append(row)

    @property
    def all_converged(self) -> bool:
        return all(r.converged for r in self.rows)

    @property
    def last_orders(self) -> tuple:
        return self.rows[-1].ord_l2, self.rows[-1].ord_h1

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        fmt = lambda v: "" if v is None else repr(float(v))  # noqa: E731
        for r in self.rows:
            w.writerow([r.level, r.nno, fmt(r.h), fmt(r.err_l2), fmt(r.err_h1),
                        fmt(r.ord_l2), fmt(r.ord_h1), r.newton_its])
        return buf.getvalue()

    def __str__(self) -> str:
        lines = [f"{'lvl':>3} {'nno':>7} {'h':>9} {'err_l2':>10} {'ord':>5} "
                 f"{'err_h1':>10} {'ord':>5} {'its':>4}"]
        for r in self.rows:
            o2 = "" if r.ord_l2 is None else f"{r.ord_l2:.2f}"
            o1 = "" if r.ord_h1 is None else f"{r.ord_h1:.2f}"
            flag = "" if r.converged else "  NOT CONVERGED"
            lines.append(f"{r.level:>3} {r.nno:>7} {r.h:>9.3e} {r.err_l2:>10.3e} {o2:>5} "
                         f"{r.err_h1:>10.3e} {o1:>5} {r.newton_its:>4}{flag}")
        return "\n".join(lines)


# -- studies --------------------------------------------------------------

def build_system(problem: ProblemSpec, mesh: Mesh) -> DiscreteSystem:
    primal = build_primal_space(mesh, g=problem.dirichlet)
    mult = build_multiplier_space(mesh, problem.kind)
    faces = multiplier_faces(mesh, problem.kind)
    return assemble_system(primal, mult, faces, problem.load)


def solve_level(problem: ProblemSpec, cfg: ContactConfig, mesh: Mesh,
                settings: SolveSettings = SolveSettings()):
    sys = build_system(problem, mesh)
    try:
        sol, report = semismooth_newton(cfg, sys, settings)
    except SingularSystem as exc:
        log.error("level with %d nodes failed: %s", mesh.nv, exc)
        sol, report = None, SolveReport(reason=str(exc))
    return sys, sol, report


def run_study(problem: ProblemSpec, cfg: ContactConfig, levels: int,
              settings: SolveSettings = SolveSettings(), start_level: int = 1,
              overkill_extra: int = 2, keep_solutions: bool = False):
    """Solve on ``levels`` consecutive refinements starting at ``start_level``.

    ``gamma`` is recomputed on every level from that level's ``h``. Problems
    without an exact solution are compared against an overkill solve
    ``overkill_extra`` levels beyond the finest study level, which is
    computed first. Returns the table (and the per-level solutions when
    ``keep_solutions``).
    """
    if levels < 2:
        raise ValueError("a convergence study needs at least two levels")
    hier = MeshHierarchy(problem.base_mesh())
    table = ConvergenceTable(problem.name, slopes=REFERENCE_SLOPES[problem.benchmark])
    finest = start_level + levels - 1

    exact, exact_grad = problem.exact, problem.exact_grad
    if not problem.has_exact:
        ref_level = finest + overkill_extra
        t0 = time.perf_counter()
        _, ref_sol, ref_report = solve_level(problem, cfg, hier.mesh(ref_level), settings)
        if ref_sol is None or not ref_report.converged:
            raise RuntimeError(f"overkill solve on level {ref_level} did not converge")
        log.info("overkill reference: level %d, %d nodes, %.1fs", ref_level,
                 hier.mesh(ref_level).nv, time.perf_counter() - t0)
        exact = exact_grad = Reference(hier, ref_level, ref_sol.u_full)

    solutions = []
    for level in range(start_level, finest + 1):
        mesh = hier.mesh(level)
        t0 = time.perf_counter()
        sys, sol, report = solve_level(problem, cfg, mesh, settings)
        if sol is None:
            table.rows.append(Row(level, mesh.nv, mesh.h, math.nan, math.nan,
                                  report.iterations, converged=False))
            solutions.append(None)
            continue
        e2 = l2_error(sol.u_full, exact, mesh, level=level)
        e1 = h1_error(sol.u_full, exact_grad, mesh, level=level)
        table.add(Row(level, mesh.nv, mesh.h, e2, e1, report.iterations, report.converged))
        log.info("level %d: nno=%d its=%d L2=%.3e H1=%.3e (%.1fs)", level, mesh.nv,
                 report.iterations, e2, e1, time.perf_counter() - t0)
        solutions.append((sys, sol, report))
    if keep_solutions:
        return table, solutions
    return table


# -- output ---------------------------------------------------------------

def plot_svg(table: ConvergenceTable) -> str:
    """Log-log error plot with reference slope lines, as SVG text."""
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "augcontact"
    rows = [r for r in table.rows if np.isfinite(r.err_l2)]
    h = np.array([r.h for r in rows])
    e2 = np.array([r.err_l2 for r in rows])
    e1 = np.array([r.err_h1 for r in rows])
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.loglog(h, e2, "o-", label="L2 error")
    ax.loglog(h, e1, "s-", label="H1 error")
    p1, p2 = table.slopes
    ax.loglog(h, e1[-1] * (h / h[-1]) ** p1, "k:", label=f"slope {p1:g}")
    ax.loglog(h, e2[-1] * (h / h[-1]) ** p2, "k--", label=f"slope {p2:.3g}")
    ax.set_xlabel("h = 1/sqrt(NNO)")
    ax.set_ylabel("error")
    ax.set_title(table.problem)
    ax.legend()
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()


def emit_outputs(table: ConvergenceTable, out_dir, stem: str | None = None) -> dict:
    """Write ``<stem>.csv`` and ``<stem>.svg`` into ``out_dir``."""
    if not table.rows:
        raise ValueError("empty convergence table")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = stem or table.problem
    paths = {"csv": out / f"{stem}.csv", "svg": out / f"{stem}.svg"}
    paths["csv"].write_text(table.to_csv())
    paths["svg"].write_text(plot_svg(table))
    return paths


def dump_solution(mesh: Mesh, u: np.ndarray, path) -> None:
    """Flat ``x y u`` triples, one vertex per line."""
    np.savetxt(path, np.column_stack([mesh.vertices, u]), fmt="%.17g", header="x y u")
