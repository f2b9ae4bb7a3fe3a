"""Quadrature rules on the reference triangle and segment.

Triangle rules are given in barycentric coordinates with weights summing
to one (multiply by the element area); segment rules in the parameter
``t`` in [0, 1] with weights summing to one (multiply by the length).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class QuadratureRule:
    points: np.ndarray   # (nq, 3) barycentric or (nq, 2) segment (1-t, t)
    weights: np.ndarray  # (nq,)
    order: int

    def __len__(self) -> int:
        return len(self.weights)


def _sym(a, b, c):
    return [(a, b, c), (b, c, a), (c, a, b)]


def triangle_rule(order: int) -> QuadratureRule:
    """Symmetric Gauss rules (Strang-Fix / Dunavant) up to order 5."""
    if order <= 1:
        pts, wts = [(1 / 3, 1 / 3, 1 / 3)], [1.0]
    elif order == 2:
        pts = _sym(2 / 3, 1 / 6, 1 / 6)
        wts = [1 / 3] * 3
    elif order <= 4:
        a1, w1 = 0.445948490915965, 0.223381589678011
        a2, w2 = 0.091576213509771, 0.109951743655322
        pts = _sym(1 - 2 * a1, a1, a1) + _sym(1 - 2 * a2, a2, a2)
        wts = [w1] * 3 + [w2] * 3
        order = 4
    elif order == 5:
        s15 = np.sqrt(15.0)
        a1 = (6 - s15) / 21
        a2 = (6 + s15) / 21
        w1 = (155 - s15) / 1200
        w2 = (155 + s15) / 1200
        pts = [(1 / 3, 1 / 3, 1 / 3)] + _sym(1 - 2 * a1, a1, a1) + _sym(1 - 2 * a2, a2, a2)
        wts = [9 / 40] + [w1] * 3 + [w2] * 3
    else:
        raise ValueError(f"no triangle rule of order {order}")
    pts = np.array(pts, dtype=float)
    wts = np.array(wts, dtype=float)
    return QuadratureRule(pts, wts / wts.sum(), order)


def segment_rule(npoints: int = 3) -> QuadratureRule:
    """Gauss-Legendre rule on [0, 1]; exact to degree ``2*npoints - 1``."""
    x, w = np.polynomial.legendre.leggauss(npoints)
    t = 0.5 * (x + 1.0)
    return QuadratureRule(np.column_stack([1.0 - t, t]), 0.5 * w, 2 * npoints - 1)


#: assembly and contact integration
ASSEMBLY_TRIANGLE = triangle_rule(4)
ASSEMBLY_SEGMENT = segment_rule(3)
#: error norms, one order above assembly
ERROR_TRIANGLE = triangle_rule(5)
