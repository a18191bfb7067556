"""Measured-foliation coordinates on the admissible cone of a triangulation.

A positive edge-weight vector satisfying the strict triangle inequalities on
each face determines, face by face, a three-pronged foliated triangle.  Its
corner weights, singular feet, shears and radii are all linear (or
piecewise-linear) in the weights and are computed here.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from conesurf.combinatorics import Triangulation, head_corner, tail_corner
from conesurf.errors import AdmissibilityError, BalanceError, PositivityError

BALANCE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ShearRadius:
    """Shear per edge and radius per vertex."""

    s: np.ndarray
    r: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "s", np.asarray(self.s, dtype=float))
        object.__setattr__(self, "r", np.asarray(self.r, dtype=float))


# -- per-face formulas ----------------------------------------------------------

def _face_check(fw) -> np.ndarray:
    fw = np.asarray(fw, dtype=float)
    if fw.shape != (3,) or np.any(~np.isfinite(fw)) or np.any(fw <= 0):
        raise AdmissibilityError(f"face weights must be 3 positive numbers, got {fw}")
    slack = fw.sum() - 2 * fw
    if np.any(slack <= 0):
        raise AdmissibilityError("face violates a strict triangle inequality", slack=float(slack.min()))
    return fw


def face_corner_weights(fw) -> np.ndarray:
    """Corner weight at each corner ``c``: ``(w_{c+1} + w_{c+2} - w_c) / 2``."""
    fw = _face_check(fw)
    return 0.5 * fw.sum() - fw


def feet_coordinates(fw) -> np.ndarray:
    """Position of the singular foot on each side, as a fraction from the side's tail."""
    fw = _face_check(fw)
    return (np.roll(fw, -2) + fw - np.roll(fw, -1)) / (2 * fw)


def signed_intersection(fw, j: int, tp: float) -> float:
    """Signed transverse measure from the foot on side ``j`` to the point at ``tp``."""
    fw = _face_check(fw)
    if not 0.0 <= tp <= 1.0:
        raise AdmissibilityError(f"boundary parameter {tp} outside [0, 1]")
    t = feet_coordinates(fw)
    return float((tp - t[j]) * fw[j])


def arc_intersection(fw, p, q) -> float:
    """Transverse measure of the arc joining boundary points ``p`` and ``q`` inside the face.

    Points are ``(side, t)``.  Each point belongs to the sector of the corner it
    is closer to (relative to the foot on its side); within one sector the arc
    can be pulled off the singular point, otherwise it must pass it.
    """
    fw = _face_check(fw)
    t = feet_coordinates(fw)
    (i, tp), (j, tq) = p, q
    Ip = signed_intersection(fw, i, tp)
    Iq = signed_intersection(fw, j, tq)
    sector_p = head_corner(i) if tp > t[i] else tail_corner(i)
    sector_q = head_corner(j) if tq > t[j] else tail_corner(j)
    if sector_p == sector_q:
        return abs(abs(Ip) - abs(Iq))
    return abs(Ip) + abs(Iq)


# -- global maps -------------------------------------------------------------------

@lru_cache(maxsize=64)
def _tables(T: Triangulation):
    plus_f = np.array([f for f, _ in T.plus_side])
    plus_k = np.array([k for _, k in T.plus_side])
    minus_f = np.array([f for f, _ in T.minus_side])
    minus_k = np.array([k for _, k in T.minus_side])
    B = T.balance_matrix()
    B.setflags(write=False)
    return plus_f, plus_k, minus_f, minus_k, B, np.linalg.pinv(B)


def face_weights(T: Triangulation, w) -> np.ndarray:
    return np.asarray(w, dtype=float)[T.edge_index]


def validate_admissible(T: Triangulation, w) -> None:
    """Raise :class:`AdmissibilityError` unless ``w`` lies in the open admissible cone."""
    w = np.asarray(w, dtype=float)
    if w.shape != (T.num_edges,):
        raise AdmissibilityError(f"expected {T.num_edges} edge weights, got shape {w.shape}")
    bad = np.flatnonzero(~np.isfinite(w) | (w <= 0))
    if bad.size:
        e = int(bad[0])
        raise AdmissibilityError(f"edge {e + 1} has non-positive weight {w[e]}")
    fw = w[T.edge_index]
    slack = (fw.sum(axis=1, keepdims=True) - 2 * fw).min(axis=1)
    bad = np.flatnonzero(slack <= 0)
    if bad.size:
        f = int(bad[0])
        raise AdmissibilityError(
            f"face {f + 1} violates a strict triangle inequality (slack {slack[f]:.6g})",
            face=f, slack=float(slack[f]),
        )


def corner_weights(T: Triangulation, w) -> np.ndarray:
    """(F, 3) array of corner weights."""
    validate_admissible(T, w)
    fw = face_weights(T, w)
    return 0.5 * fw.sum(axis=1, keepdims=True) - fw


def _shear_from_corners(T, a):
    pf, pk, mf, mk, _, _ = _tables(T)
    return a[pf, (pk + 1) % 3] - a[mf, (mk + 2) % 3]


def shear_map(T: Triangulation, w) -> np.ndarray:
    """Shear per edge: corner weight at the tail in the left face minus that in the right face."""
    return _shear_from_corners(T, corner_weights(T, w))


def _radius_from_corners(T, a):
    r = np.full(T.num_vertices, np.inf)
    np.minimum.at(r, T.corner_vertex.ravel(), a.ravel())
    return r


def radius_map(T: Triangulation, w) -> np.ndarray:
    """Smallest corner weight at each vertex."""
    return _radius_from_corners(T, corner_weights(T, w))


def shear_radius(T: Triangulation, w) -> ShearRadius:
    a = corner_weights(T, w)
    return ShearRadius(_shear_from_corners(T, a), _radius_from_corners(T, a))


def star_sums(T: Triangulation, s) -> np.ndarray:
    """Sum of shears over each vertex star, loop edges counted twice."""
    return _tables(T)[4] @ np.asarray(s, dtype=float)


def project_balanced(T: Triangulation, s, tol: float = BALANCE_TOL) -> np.ndarray:
    """Orthogonal projection onto the balanced subspace, if ``s`` is within ``tol`` of it."""
    s = np.asarray(s, dtype=float)
    if s.shape != (T.num_edges,):
        raise BalanceError(f"expected {T.num_edges} shears, got shape {s.shape}")
    if not np.all(np.isfinite(s)):
        raise BalanceError("shears must be finite")
    _, _, _, _, B, Bp = _tables(T)
    resid = B @ s
    worst = float(np.abs(resid).max())
    if worst > tol:
        v = int(np.argmax(np.abs(resid)))
        raise BalanceError(f"shears around vertex {v + 1} sum to {resid[v]:.6g}, not 0")
    return s - Bp @ resid


def reconstruct(T: Triangulation, sr: ShearRadius) -> np.ndarray:
    """Edge weights with the given shears and radii."""
    r = np.asarray(sr.r, dtype=float)
    if r.shape != (T.num_vertices,):
        raise PositivityError(f"expected {T.num_vertices} radii, got shape {r.shape}")
    if not np.all(np.isfinite(r)) or np.any(r <= 0):
        raise PositivityError(f"radii must be positive, got {r}")
    s = project_balanced(T, sr.s)
    a = np.empty((T.num_faces, 3))
    for v, star in enumerate(T.star_corners):
        # s of the half-edge clockwise-before each corner is a_j - a_{j-1}
        steps = np.array([s[T.half_edge(f, c)[0]] for f, c in star])
        S = np.cumsum(steps)
        vals = r[v] + S - S.min()
        for (f, c), x in zip(star, vals):
            a[f, c] = x
    pf, pk, _, _, _, _ = _tables(T)
    return a[pf, (pk + 1) % 3] + a[pf, (pk + 2) % 3]


def decompose(T: Triangulation, w) -> tuple[np.ndarray, np.ndarray]:
    """Split ``w`` into interior weights and per-vertex radii."""
    w = np.asarray(w, dtype=float)
    r = radius_map(T, w)
    return w - peripheral_part(T, r), r


def peripheral_part(T: Triangulation, r) -> np.ndarray:
    """``r(tail) + r(head)`` per edge."""
    r = np.asarray(r, dtype=float)
    return r[T.edge_ends[:, 0]] + r[T.edge_ends[:, 1]]


def recompose(T: Triangulation, w0, r) -> np.ndarray:
    return np.asarray(w0, dtype=float) + peripheral_part(T, r)
