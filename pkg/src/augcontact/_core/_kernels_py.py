"""Pure-numpy element kernels; reference for the compiled ``_kernels``."""
import numpy as np

F1, F1_ALT, F2, F2_ALT = 0, 1, 2, 3


def element_stiffness(coords):
    """P1 stiffness blocks ``(nt, 3, 3)`` for triangles ``coords (nt, 3, 2)``."""
    # edge vectors opposite each vertex; grad phi_k = rot90(e_k) / (2 area)
    e = coords[:, [2, 0, 1]] - coords[:, [1, 2, 0]]
    area = 0.5 * (e[:, 2, 0] * (-e[:, 1, 1]) - e[:, 2, 1] * (-e[:, 1, 0]))
    if np.any(area <= 0):
        bad = int(np.flatnonzero(area <= 0)[0])
        raise ValueError(f"degenerate triangle {bad}")
    return np.einsum("tid,tjd->tij", e, e) / (4.0 * area)[:, None, None]


def contact_local(code, phi, w, u_loc, lam, gamma):
    """Contact residual and Jacobian blocks per multiplier cell.

    Parameters
    ----------
    code : int
        Formulation code (``F1``, ``F1_ALT``, ``F2``, ``F2_ALT``).
    phi : (nc, nq, nl) array
        P1 basis values at quadrature points of each contact cell.
    w : (nc, nq) array
        Physical quadrature weights.
    u_loc : (nc, nl) array
        Primal nodal values on each cell.
    lam : (nc,) array
        Cellwise constant multiplier.
    gamma : float

    Returns
    -------
    ru : (nc, nl) primal residual contributions
    rl : (nc,) multiplier residual contributions
    jac : (nc, nl + 1, nl + 1) Jacobian blocks; index ``nl`` is the multiplier
    active : (nc, nq) bool, points where ``u - gamma*lam`` is in contact
    """
    uq = np.einsum("cqa,ca->cq", phi, u_loc)
    lq = lam[:, None]
    x = uq - gamma * lq
    g = 1.0 / gamma
    one = np.ones_like(x)
    if code == F1:
        H = (x > 0).astype(float)
        xp = x * H
        cu, cm = g * xp, -xp - gamma * lq
        du_u, du_l, dm_u, dm_l = g * H, -H, -H, gamma * (H - 1.0)
        active = H > 0
    elif code == F1_ALT:
        Hy = (-x > 0).astype(float)
        yp = -x * Hy
        cu, cm = g * uq - lq + g * yp, -uq - yp
        du_u, du_l, dm_u, dm_l = g * (1.0 - Hy), Hy - 1.0, Hy - 1.0, -gamma * Hy
        active = Hy == 0
    elif code == F2:
        Hy = (-x > 0).astype(float)
        yp = -x * Hy
        cu, cm = -lq * one, uq + yp
        du_u, du_l, dm_u, dm_l = 0.0 * one, -one, 1.0 - Hy, gamma * Hy
        active = Hy == 0
    elif code == F2_ALT:
        H = (x > 0).astype(float)
        xp = x * H
        cu, cm = -lq * one, gamma * lq + xp
        du_u, du_l, dm_u, dm_l = 0.0 * one, -one, H, gamma * (1.0 - H)
        active = H > 0
    else:
        raise ValueError(f"unknown formulation code {code}")

    ru = np.einsum("cq,cqa->ca", w * cu, phi)
    rl = (w * cm).sum(axis=1)
    nc, nq, nl = phi.shape
    jac = np.empty((nc, nl + 1, nl + 1))
    jac[:, :nl, :nl] = np.einsum("cq,cqa,cqb->cab", w * du_u, phi, phi)
    jac[:, :nl, nl] = np.einsum("cq,cqa->ca", w * du_l, phi)
    jac[:, nl, :nl] = np.einsum("cq,cqb->cb", w * dm_u, phi)
    jac[:, nl, nl] = (w * dm_l).sum(axis=1)
    return ru, rl, jac, active
