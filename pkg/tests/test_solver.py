import dataclasses

import numpy as np
import pytest
import scipy.sparse as sp

from augcontact.contact import ContactConfig, Formulation, generalized_jacobian
from augcontact.harness import build_system
from augcontact.mesh import BoundaryTag
from augcontact.problems import get_problem
from augcontact.solver import (SingularSystem, SolveSettings, linear_solve,
                               semismooth_newton)

from oracles import dense_poisson


def test_linear_solve_identity(rng):
    r = rng.standard_normal(7)
    x, rel = linear_solve(sp.identity(7, format="csr"), r)
    np.testing.assert_allclose(x, r)
    assert rel <= 1e-12


def test_linear_solve_spd_against_dense(smooth_sys2, rng):
    _, sys = smooth_sys2
    A = sys.A
    assert A.shape[0] <= 50
    r = rng.standard_normal(A.shape[0])
    x, rel = linear_solve(A, r)
    np.testing.assert_allclose(x, np.linalg.solve(A.toarray(), r), rtol=1e-10, atol=1e-12)
    assert rel <= 1e-12


@pytest.mark.parametrize("form", [Formulation.F1, Formulation.F2])
def test_linear_solve_saddle_against_dense(form, signorini_sys2, rng):
    _, sys = signorini_sys2
    J = generalized_jacobian(ContactConfig(form, 0.5), sys, -np.ones(sys.nu), np.zeros(sys.nl))
    r = rng.standard_normal(sys.size)
    x, rel = linear_solve(J, r)
    np.testing.assert_allclose(x, np.linalg.solve(J.toarray(), r), rtol=1e-10, atol=1e-12)
    y, _ = linear_solve(J, r, method="dense")
    np.testing.assert_allclose(x, y, rtol=1e-10, atol=1e-12)
    assert rel <= 1e-12


def test_linear_solve_singular():
    J = sp.csr_matrix(np.array([[1.0, 2.0], [2.0, 4.0]]))
    with pytest.raises(SingularSystem):
        linear_solve(J, np.array([1.0, 0.0]))
    with pytest.raises(SingularSystem):
        linear_solve(J, np.array([1.0, 0.0]), method="dense")


def test_zero_load_converges_immediately(signorini_sys2):
    _, sys = signorini_sys2
    sys0 = dataclasses.replace(sys, load=np.zeros_like(sys.load))
    sol, rep = semismooth_newton(ContactConfig(Formulation.F1, 0.1), sys0)
    assert rep.converged and rep.iterations == 1
    assert not sol.u.any() and not sol.lam.any()


def test_iteration_cap_reports_not_converged():
    p = get_problem("smooth-obstacle")
    sys = build_system(p, p.mesh(3))
    sol, rep = semismooth_newton(ContactConfig(), sys, SolveSettings(max_newton=2))
    assert not rep.converged and rep.reason == "iteration cap"
    assert rep.iterations == 2


def test_settings_validation():
    with pytest.raises(ValueError):
        SolveSettings(tol_residual=0)
    with pytest.raises(ValueError):
        SolveSettings(max_newton=0)
    with pytest.raises(ValueError):
        SolveSettings(damping=1.5)


def test_bad_initial_guess_size(signorini_sys2):
    _, sys = signorini_sys2
    with pytest.raises(ValueError):
        semismooth_newton(ContactConfig(), sys, initial=np.zeros(3))


@pytest.mark.parametrize("form", list(Formulation))
def test_no_contact_matches_poisson(form):
    p = dataclasses.replace(get_problem("smooth-obstacle"), dirichlet=None,
                            load=lambda x, y: -10.0 + 0 * x)
    mesh = p.mesh(2)
    sys = build_system(p, mesh)
    sol, rep = semismooth_newton(ContactConfig(form, 0.01 if form.value.startswith("f1") else 10.0), sys)
    assert rep.converged
    ref = dense_poisson(mesh, p.load, sys.primal.free, sys.primal.lift)
    np.testing.assert_allclose(sol.u_full, ref, atol=1e-10)
    np.testing.assert_allclose(sol.lam, 0, atol=1e-10)


def test_damped_newton_still_converges(signorini_sys2):
    _, sys = signorini_sys2
    cfg = ContactConfig(Formulation.F1, 0.1)
    a, ra = semismooth_newton(cfg, sys)
    b, rb = semismooth_newton(cfg, sys, SolveSettings(damping=0.7, max_newton=200))
    assert ra.converged and rb.converged
    np.testing.assert_allclose(a.u, b.u, atol=1e-8)


def test_signorini_solution_signs():
    p = get_problem("signorini")
    mesh = p.mesh(3)
    sys = build_system(p, mesh)
    sol, rep = semismooth_newton(ContactConfig(Formulation.F1, p.gamma0), sys)
    assert rep.converged
    contact_v = mesh.vertices_with_tag(BoundaryTag.CONTACT)
    # contact and separation both occur along y = 0
    assert sol.u_full[contact_v].min() < -1e-3
    assert np.sum(sol.lam < -1e-6) > 0
    assert sol.lam.max() <= 1e-6 or np.sum(sol.lam > 1e-6) <= 2


def test_smooth_obstacle_sign_conditions():
    p = get_problem("smooth-obstacle")
    mesh = p.mesh(3)
    sys = build_system(p, mesh)
    cfg = ContactConfig(Formulation.F1, p.gamma0)
    sol, rep = semismooth_newton(cfg, sys)
    assert rep.converged
    # u_h <= 0 up to discretization error near the free boundary
    assert sol.u_full.max() <= 1e-3
    r = np.hypot(*mesh.vertices.T)
    assert np.all(sol.u_full[r > 0.5] < 0)
    assert sol.lam.max() <= 1e-6
