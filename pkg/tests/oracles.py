"""Independent reference computations used by several test modules."""
import numpy as np


def dense_poisson(mesh, f, free, lift):
    """P1 Poisson solve with loop-based assembly and a dense solve.

    Element gradients come from inverting the affine map, the load from a
    centroid-free 3-point edge-midpoint rule (exact for quadratics).
    """
    nv = mesh.nv
    A = np.zeros((nv, nv))
    b = np.zeros(nv)
    for tri in mesh.triangles:
        P = mesh.vertices[tri]
        T = np.column_stack([P[1] - P[0], P[2] - P[0]])
        area = 0.5 * abs(np.linalg.det(T))
        G = np.linalg.solve(T.T, np.array([[-1.0, 1.0, 0.0], [-1.0, 0.0, 1.0]]))
        A[np.ix_(tri, tri)] += area * G.T @ G
        mids = 0.5 * (P[[0, 1, 2]] + P[[1, 2, 0]])
        fm = f(mids[:, 0], mids[:, 1])
        # basis values at midpoints of edges (0,1), (1,2), (2,0)
        phi = np.array([[0.5, 0.5, 0.0], [0.0, 0.5, 0.5], [0.5, 0.0, 0.5]])
        b[tri] += area / 3 * phi.T @ fm
    rhs = b[free] - A[np.ix_(free, range(nv))] @ lift
    u = lift.copy()
    u[free] = np.linalg.solve(A[np.ix_(free, free)], rhs)
    return u
