# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled element kernels. Same contract as ``_kernels_py``."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

cdef enum:
    F1 = 0
    F1_ALT = 1
    F2 = 2
    F2_ALT = 3


def element_stiffness(double[:, :, ::1] coords):
    cdef Py_ssize_t nt = coords.shape[0]
    out = np.empty((nt, 3, 3))
    cdef double[:, :, ::1] K = out
    cdef double e[3][2]
    cdef double area, s
    cdef Py_ssize_t t, i, j, a, b
    for t in range(nt):
        for i in range(3):
            a = (i + 1) % 3
            b = (i + 2) % 3
            e[i][0] = coords[t, b, 0] - coords[t, a, 0]
            e[i][1] = coords[t, b, 1] - coords[t, a, 1]
        area = 0.5 * (e[2][0] * (-e[1][1]) - e[2][1] * (-e[1][0]))
        if area <= 0:
            raise ValueError(f"degenerate triangle {t}")
        s = 1.0 / (4.0 * area)
        for i in range(3):
            for j in range(3):
                K[t, i, j] = (e[i][0] * e[j][0] + e[i][1] * e[j][1]) * s
    return out


def contact_local(int code, double[:, :, ::1] phi, double[:, ::1] w,
                  double[:, ::1] u_loc, double[::1] lam, double gamma):
    if code < F1 or code > F2_ALT:
        raise ValueError(f"unknown formulation code {code}")
    cdef Py_ssize_t nc = phi.shape[0], nq = phi.shape[1], nl = phi.shape[2]
    ru_a = np.zeros((nc, nl))
    rl_a = np.zeros(nc)
    jac_a = np.zeros((nc, nl + 1, nl + 1))
    active_a = np.zeros((nc, nq), dtype=np.bool_)
    cdef double[:, ::1] ru = ru_a
    cdef double[::1] rl = rl_a
    cdef double[:, :, ::1] jac = jac_a
    cdef cnp.npy_bool[:, ::1] active = active_a
    cdef double g = 1.0 / gamma
    cdef double uq, lq, x, H, wq, cu, cm, du_u, du_l, dm_u, dm_l
    cdef Py_ssize_t c, q, a, b
    for c in range(nc):
        lq = lam[c]
        for q in range(nq):
            uq = 0.0
            for a in range(nl):
                uq += phi[c, q, a] * u_loc[c, a]
            x = uq - gamma * lq
            if code == F1:
                H = 1.0 if x > 0 else 0.0
                cu = g * x * H
                cm = -x * H - gamma * lq
                du_u = g * H
                du_l = -H
                dm_u = -H
                dm_l = gamma * (H - 1.0)
                active[c, q] = H > 0
            elif code == F1_ALT:
                H = 1.0 if -x > 0 else 0.0
                cu = g * uq - lq - g * x * H
                cm = -uq + x * H
                du_u = g * (1.0 - H)
                du_l = H - 1.0
                dm_u = H - 1.0
                dm_l = -gamma * H
                active[c, q] = H == 0
            elif code == F2:
                H = 1.0 if -x > 0 else 0.0
                cu = -lq
                cm = uq - x * H
                du_u = 0.0
                du_l = -1.0
                dm_u = 1.0 - H
                dm_l = gamma * H
                active[c, q] = H == 0
            else:
                H = 1.0 if x > 0 else 0.0
                cu = -lq
                cm = gamma * lq + x * H
                du_u = 0.0
                du_l = -1.0
                dm_u = H
                dm_l = gamma * (1.0 - H)
                active[c, q] = H > 0
            wq = w[c, q]
            rl[c] += wq * cm
            jac[c, nl, nl] += wq * dm_l
            for a in range(nl):
                ru[c, a] += wq * cu * phi[c, q, a]
                jac[c, a, nl] += wq * du_l * phi[c, q, a]
                jac[c, nl, a] += wq * dm_u * phi[c, q, a]
                for b in range(nl):
                    jac[c, a, b] += wq * du_u * phi[c, q, a] * phi[c, q, b]
    return ru_a, rl_a, jac_a, active_a
