import numpy as np
import pytest
import sympy as sym

from augcontact.mesh import BoundaryTag, ProblemKind
from augcontact.problems import (R0, cutoff, get_problem, nonsmooth_exact, nonsmooth_exact_grad,
                                 nonsmooth_load, polar_angle, signorini_load, smooth_exact,
                                 smooth_exact_grad, smooth_load)

x, y = sym.symbols("x y", real=True)


def test_smooth_exact_values():
    # the positive part vanishes inside the contact disc r <= r0
    assert smooth_exact(np.array(0.0), np.array(0.0)) == 0.0
    assert smooth_exact(np.array(0.5), np.array(0.0)) == pytest.approx(-(0.25 - R0 ** 2) ** 2)
    th = np.linspace(0, 2 * np.pi, 17)
    np.testing.assert_allclose(smooth_exact(R0 * np.cos(th), R0 * np.sin(th)), 0, atol=1e-30)


def test_smooth_load_continuous_at_r0():
    th = np.linspace(0, 2 * np.pi, 9)
    inside = smooth_load(R0 * np.cos(th), R0 * np.sin(th))
    eps = 1e-14
    outside = smooth_load((R0 + eps) * np.cos(th), (R0 + eps) * np.sin(th))
    np.testing.assert_allclose(inside, 8 * R0 ** 2, rtol=1e-12)
    np.testing.assert_allclose(outside, 8 * R0 ** 2, rtol=1e-12)


def test_smooth_load_is_minus_laplacian_outside():
    u = -(x ** 2 + y ** 2 - sym.Rational(1, 16)) ** 2
    f = sym.lambdify((x, y), -(sym.diff(u, x, 2) + sym.diff(u, y, 2)))
    pts = np.array([[0.5, 0.1], [-0.3, 0.7], [0.9, -0.9]])
    np.testing.assert_allclose(smooth_load(pts[:, 0], pts[:, 1]), f(pts[:, 0], pts[:, 1]),
                               rtol=1e-13)


def test_smooth_gradient():
    u = -(x ** 2 + y ** 2 - sym.Rational(1, 16)) ** 2
    gx, gy = (sym.lambdify((x, y), sym.diff(u, v)) for v in (x, y))
    pts = np.array([[0.5, 0.1], [-0.3, 0.7]])
    ex, ey = smooth_exact_grad(pts[:, 0], pts[:, 1])
    np.testing.assert_allclose(ex, gx(pts[:, 0], pts[:, 1]))
    np.testing.assert_allclose(ey, gy(pts[:, 0], pts[:, 1]))
    np.testing.assert_array_equal(smooth_exact_grad(np.array([0.1]), np.array([0.1]))[0], 0)


def test_cutoff_branches_and_smoothness():
    g, dg, d2g = cutoff(np.array([0.0, 0.1, 0.8, 1.0, 3.0]))
    np.testing.assert_array_equal(g, [1, 1, 0, 0, 0])
    # quintic branch meets the constant branches with matching value,
    # first and second derivative
    at_inner = cutoff(np.array([0.25]))
    np.testing.assert_allclose([a[0] for a in at_inner], [1, 0, 0], atol=1e-10)
    below_outer = cutoff(np.array([np.nextafter(0.75, 0)]))
    np.testing.assert_allclose([a[0] for a in below_outer], [0, 0, 0], atol=1e-10)


def test_cutoff_derivatives_match_sympy():
    r = sym.symbols("r", positive=True)
    t = 2 * (r - sym.Rational(1, 4))
    g = -6 * t ** 5 + 15 * t ** 4 - 10 * t ** 3 + 1
    rs = np.array([0.3, 0.5, 0.7])
    got = cutoff(rs)
    for k, arr in enumerate(got):
        fk = sym.lambdify(r, sym.diff(g, r, k))
        np.testing.assert_allclose(arr, fk(rs), rtol=1e-12)


def test_angle_convention():
    np.testing.assert_allclose(polar_angle(np.array([1.0, 0.0, -1.0, 0.0]),
                                           np.array([0.0, 1.0, 0.0, -1.0])),
                               [0, np.pi / 2, np.pi, 3 * np.pi / 2])
    # exact solution vanishes on both legs of the re-entrant corner
    s = np.linspace(0.01, 0.7, 7)
    np.testing.assert_allclose(nonsmooth_exact(s, 0 * s), 0, atol=1e-15)
    np.testing.assert_allclose(nonsmooth_exact(0 * s, -s), 0, atol=1e-15)


def test_nonsmooth_values():
    # r = 1: cutoff is zero
    phi = 3 * np.pi / 4
    assert nonsmooth_exact(np.cos(phi), np.sin(phi)) == 0
    r = 0.2
    assert nonsmooth_exact(r * np.cos(phi), r * np.sin(phi)) == pytest.approx(-r ** (2 / 3))


def _nonsmooth_symbolic():
    r, p = sym.symbols("r phi", positive=True)
    t = 2 * (r - sym.Rational(1, 4))
    g = -6 * t ** 5 + 15 * t ** 4 - 10 * t ** 3 + 1
    u = -r ** sym.Rational(2, 3) * g * sym.sin(2 * p / 3)
    lap = sym.diff(u, r, 2) + sym.diff(u, r) / r + sym.diff(u, p, 2) / r ** 2
    return r, p, u, lap


def test_nonsmooth_load_is_minus_laplacian():
    r, p, u, lap = _nonsmooth_symbolic()
    f = sym.lambdify((r, p), -lap)
    for rr, pp in [(0.3, 0.5), (0.5, 2.0), (0.7, 4.0), (0.6, 4.6)]:
        got = nonsmooth_load(np.array(rr * np.cos(pp)), np.array(rr * np.sin(pp)))
        assert got == pytest.approx(f(rr, pp), rel=1e-12)
    # harmonic core and contact zone
    assert nonsmooth_load(np.array(0.1), np.array(0.1)) == pytest.approx(0.0, abs=1e-14)
    assert nonsmooth_load(np.array(1.0), np.array(0.5)) == 0.0
    assert nonsmooth_load(np.array(-1.5), np.array(0.5)) == 1.0


def test_nonsmooth_gradient_finite_difference():
    pts = np.array([[0.3, 0.2], [-0.4, -0.3], [0.1, 0.6], [-0.05, 0.02]])
    gx, gy = nonsmooth_exact_grad(pts[:, 0], pts[:, 1])
    eps = 1e-6
    fx = (nonsmooth_exact(pts[:, 0] + eps, pts[:, 1]) - nonsmooth_exact(pts[:, 0] - eps, pts[:, 1])) / (2 * eps)
    fy = (nonsmooth_exact(pts[:, 0], pts[:, 1] + eps) - nonsmooth_exact(pts[:, 0], pts[:, 1] - eps)) / (2 * eps)
    np.testing.assert_allclose(gx, fx, rtol=1e-6, atol=1e-8)
    np.testing.assert_allclose(gy, fy, rtol=1e-6, atol=1e-8)


def test_signorini_problem():
    p = get_problem("signorini")
    assert p.kind is ProblemKind.SIGNORINI
    assert not p.has_exact
    assert p.theory_s == 0.5 and p.gamma0 == 0.1
    assert signorini_load(np.array(0.25), np.array(0.7)) == pytest.approx(-2 * np.pi)
    m = p.mesh(3)
    from augcontact.harness import triangle_points  # noqa: PLC0415
    pts, w = triangle_points(m, __import__("augcontact").quadrature.ERROR_TRIANGLE)
    assert abs(np.sum(w * signorini_load(pts[..., 0], pts[..., 1]))) < 1e-12
    tags = set(m.boundary_tags[m.boundary_edges])
    assert tags == {BoundaryTag.DIRICHLET, BoundaryTag.NEUMANN, BoundaryTag.CONTACT}


@pytest.mark.parametrize("name", ["smooth-obstacle", "nonsmooth-obstacle"])
def test_dirichlet_data_is_exact_solution(name):
    p = get_problem(name)
    m = p.mesh(2)
    v = m.vertices[m.vertices_with_tag(BoundaryTag.DIRICHLET)]
    np.testing.assert_array_equal(p.dirichlet(v[:, 0], v[:, 1]), p.exact(v[:, 0], v[:, 1]))
    assert m.area == pytest.approx(p.area)
