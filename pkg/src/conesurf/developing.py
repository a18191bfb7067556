"""Developing face chains through incircle frames.

Each face-side gets a frame: the isometry carrying the upward imaginary axis
(marked at ``i``) onto that side, oriented counterclockwise for the face and
marked at its incircle tangency point.  Crossing an edge is then a half-turn
followed by a slide of ``-shear`` along the axis, so a transition never
involves the side lengths themselves.  This keeps every matrix of size O(1)
even when edges are thousands of units long, and the same code develops
ideal triangles (cusped surfaces) with the ideal incircle.
"""

from __future__ import annotations

import math

import numpy as np

from conesurf.combinatorics import CurveClass, Triangulation
from conesurf.errors import GeometricError
from conesurf.hyperbolic import HALF_TURN, rotation, translation

IDEAL_HALF_CENTRAL = math.pi / 3


def side_frames(inradii, tangency_dirs) -> tuple[np.ndarray, np.ndarray]:
    """Frames and their inverses, shape (F, 3, 2, 2)."""
    F = len(inradii)
    A = np.empty((F, 3, 2, 2))
    Ainv = np.empty((F, 3, 2, 2))
    down = rotation(-math.pi / 2)
    for f in range(F):
        push = translation(-inradii[f]) @ down
        for k in range(3):
            M = rotation(tangency_dirs[f][k] + math.pi / 2) @ push
            A[f, k] = M
            Ainv[f, k] = np.array([[M[1, 1], -M[0, 1]], [-M[1, 0], M[0, 0]]])
    return A, Ainv


def ideal_tangency_dirs() -> np.ndarray:
    """Tangency directions of the ideal triangle in canonical position."""
    phi = IDEAL_HALF_CENTRAL
    psi = np.array([math.pi / 2, math.pi / 2 + 2 * phi, math.pi / 2 + 4 * phi])
    return psi[[1, 2, 0]] + phi


def transitions(T: Triangulation, c: CurveClass, A, Ainv, shear) -> list[np.ndarray]:
    """``g_j`` maps coordinates of face ``f_j`` into those of the face before it."""
    gs = []
    for f, k in c.entries:
        fp, kp = T.partner(f, k)
        d = -shear[T.edge_index[f, k]]
        gs.append(A[fp, kp] @ translation(d) @ HALF_TURN @ Ainv[f, k])
    return gs


def chain_product(gs) -> np.ndarray:
    H = np.eye(2)
    with np.errstate(over="ignore", invalid="ignore"):
        for g in gs:
            H = H @ g
            det = H[0, 0] * H[1, 1] - H[0, 1] * H[1, 0]
            if not (math.isfinite(det) and det > 0):
                raise GeometricError("holonomy overflows double precision; translation length too large")
            H = H / math.sqrt(det)
    return H


def based_holonomies(gs) -> list[np.ndarray]:
    """Holonomy based in each face of the chain: ``g_{j+1} ... g_{j+m}``."""
    m = len(gs)
    return [chain_product([gs[(j + i) % m] for i in range(1, m + 1)]) for j in range(m)]


def axis_offset(N) -> float:
    """Signed position, along the imaginary axis measured from ``i``, where the axis of ``N`` crosses it.

    Returns ``inf`` when the axis does not cross the imaginary axis.
    """
    a, b, c, d = N[0, 0], N[0, 1], N[1, 0], N[1, 1]
    if abs(a + d) <= 2 or c == 0 or b / c <= 0:
        return math.inf
    # fixed points x1, x2 satisfy c x^2 + (d - a) x - b = 0, so -x1 x2 = b / c
    return 0.5 * math.log(b / c)
