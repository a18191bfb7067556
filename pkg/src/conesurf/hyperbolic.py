"""Hyperbolic trigonometry and PSL(2,R) helpers in the upper half-plane.

Triangle formulas go through the half-perimeter offsets ``t_k = s - l_k``
(the incircle tangency offsets), evaluated with log-sinh so that triangles
with sides in the tens of thousands still give clean angles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from conesurf.errors import DomainError

DET_TOL = 1e-9
PARABOLIC_TOL = 1e-9
LOG2 = math.log(2.0)


def logsinh(x):
    """log(sinh x) for x > 0 without overflow."""
    x = np.asarray(x, dtype=float)
    lo, hi = np.minimum(x, 1.0), np.maximum(x, 1.0)
    return np.where(x > 1.0, hi - LOG2 + np.log1p(-np.exp(-2.0 * hi)), np.log(np.sinh(lo)))


def logcosh(x):
    x = np.abs(np.asarray(x, dtype=float))
    return x - LOG2 + np.log1p(np.exp(-2.0 * x))


def arcosh_from_log(logc):
    """arcosh(exp(logc)) for logc >= 0."""
    logc = np.maximum(np.asarray(logc, dtype=float), 0.0)
    return logc + np.log1p(np.sqrt(-np.expm1(-2.0 * logc)))


# -- triangles ---------------------------------------------------------------

def tangency_offsets(L) -> np.ndarray:
    """Offsets ``t_k = (l_i + l_j - l_k)/2`` from vertex k to the incircle tangency points."""
    L = np.asarray(L, dtype=float)
    if L.shape != (3,) or not np.all(np.isfinite(L)) or np.any(L <= 0):
        raise DomainError(f"side lengths must be 3 positive finite numbers, got {L}")
    t = 0.5 * L.sum() - L
    if np.any(t <= 0):
        k = int(np.argmin(t))
        raise DomainError(f"triangle inequality fails opposite side {k + 1} (slack {2 * t[k]:.3g})")
    return t


def _half_angle_logs(t):
    s = t.sum()
    ls = logsinh(t)
    lss = logsinh(s)
    # log tan(alpha_k / 2)
    return 0.5 * (ls[[1, 2, 0]] + ls[[2, 0, 1]] - lss - ls)


def triangle_angles(L) -> np.ndarray:
    """Interior angles; ``alpha_k`` sits at the vertex opposite side ``l_k``."""
    t = tangency_offsets(L)
    return 2.0 * np.arctan(np.exp(_half_angle_logs(t)))


def inradius(L) -> float:
    t = tangency_offsets(L)
    log_tanh = 0.5 * (logsinh(t).sum() - logsinh(t.sum()))
    return float(np.arctanh(np.exp(log_tanh)))


IDEAL_INRADIUS = math.atanh(0.5)  # = arcosh(2 / sqrt 3)


@dataclass(frozen=True)
class Placement:
    """A triangle in canonical position: incenter at ``i``, first vertex straight above."""

    vertices: np.ndarray  # complex, counterclockwise
    incenter: complex
    inradius: float
    offsets: np.ndarray  # tangency offsets t_k
    half_central: np.ndarray  # phi_k: angle at the incenter between vertex k and an adjacent tangency point
    vertex_distance: np.ndarray  # distance from incenter to vertex k
    vertex_direction: np.ndarray
    tangency_direction: np.ndarray  # direction of the tangency point on side k

    @property
    def central_angles(self) -> np.ndarray:
        """Angle at the incenter subtended by side k (between its two endpoints)."""
        phi = self.half_central
        return phi[[1, 2, 0]] + phi[[2, 0, 1]]


def canonical_placement(L) -> Placement:
    L = np.asarray(L, dtype=float)
    t = tangency_offsets(L)
    r = inradius(L)
    phi = np.arctan(np.tanh(t) / math.sinh(r))
    D = arcosh_from_log(logcosh(r) + logcosh(t))
    psi = np.empty(3)
    psi[0] = math.pi / 2
    psi[1] = psi[0] + phi[0] + phi[1]
    psi[2] = psi[1] + phi[1] + phi[2]
    tang = psi[[1, 2, 0]] + phi[[1, 2, 0]]
    with np.errstate(over="ignore"):
        verts = np.array([mobius(rotation(psi[k] - math.pi / 2), 1j * math.exp(min(D[k], 700.0)))
                          for k in range(3)])
    return Placement(verts, 1j, r, t, phi, D, psi, tang)


def tangency_point(P: Placement, k: int) -> complex:
    return mobius(rotation(P.tangency_direction[k] - math.pi / 2), 1j * math.exp(P.inradius))


def arc_length_in_triangle(L, p, q) -> float:
    """Distance between boundary points ``p = (side, t)`` and ``q = (side, t)``.

    ``t`` runs from 0 at the tail of the side (vertex ``side+1``) to 1 at its head,
    proportionally to arc length.
    """
    L = np.asarray(L, dtype=float)
    alpha = triangle_angles(L)
    (i, tp), (j, tq) = p, q
    i, j = int(i) % 3, int(j) % 3
    for tt in (tp, tq):
        if not 0.0 <= tt <= 1.0:
            raise DomainError(f"boundary parameter {tt} outside [0, 1]")
    if i == j:
        return abs(tp - tq) * L[i]
    if j == (i + 1) % 3:
        x, y, a = (1 - tp) * L[i], tq * L[j], alpha[(i + 2) % 3]
    else:
        x, y, a = tp * L[i], (1 - tq) * L[j], alpha[(i + 1) % 3]
    return sas_distance(x, y, a)


def sas_distance(x: float, y: float, angle: float) -> float:
    """Third side opposite ``angle`` between sides ``x`` and ``y`` (law of cosines)."""
    h = math.sinh(0.5 * (x - y)) ** 2 + math.sinh(x) * math.sinh(y) * math.sin(0.5 * angle) ** 2
    return 2.0 * math.asinh(math.sqrt(max(h, 0.0)))


def angle_of_parallelism(d: float) -> float:
    """``arcsin(1/cosh d)``, written as ``2 arctan(e^-d)`` for accuracy at large d."""
    if d < 0:
        raise DomainError("distance must be nonnegative")
    return 2.0 * math.atan(math.exp(-d))


def foot_offset_distance(r: float, x: float, theta: float, y: float) -> float:
    """Distance between two points pushed off a circle of radius ``r`` along normals.

    ``p`` sits at signed distance ``x`` from the point ``A`` at radius ``r`` on
    the reference ray, measured along the geodesic perpendicular to that ray
    (positive to the left).  ``q`` is built the same way from the ray at angle
    ``theta`` counterclockwise from the first.
    """
    if r <= 0 or not -math.pi < theta < math.pi:
        raise DomainError("need r > 0 and theta in (-pi, pi)")
    # hyperboloid model, center at (0, 0, 1)
    p = np.array([math.sinh(r) * math.cosh(x), math.sinh(x), math.cosh(r) * math.cosh(x)])
    q0 = np.array([math.sinh(r) * math.cosh(y), math.sinh(y), math.cosh(r) * math.cosh(y)])
    c, s = math.cos(theta), math.sin(theta)
    q = np.array([c * q0[0] - s * q0[1], s * q0[0] + c * q0[1], q0[2]])
    v = p - q
    m = v[0] ** 2 + v[1] ** 2 - v[2] ** 2  # Minkowski norm of the chord
    return 2.0 * math.asinh(0.5 * math.sqrt(max(m, 0.0)))


# -- isometries ------------------------------------------------------------------

def mobius(M, z):
    a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    return (a * z + b) / (c * z + d)


def normalize(M) -> np.ndarray:
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    if det <= 0:
        raise DomainError(f"matrix determinant {det} is not positive")
    return M / math.sqrt(det)


def rotation(phi: float) -> np.ndarray:
    """Counterclockwise rotation by ``phi`` about ``i``."""
    c, s = math.cos(phi / 2), math.sin(phi / 2)
    return np.array([[c, s], [-s, c]])


def translation(d: float) -> np.ndarray:
    """Translation by ``d`` along the imaginary axis (towards infinity)."""
    return np.array([[math.exp(d / 2), 0.0], [0.0, math.exp(-d / 2)]])


HALF_TURN = np.array([[0.0, -1.0], [1.0, 0.0]])  # z -> -1/z, rotation by pi about i


def distance(z: complex, w: complex) -> float:
    if z.imag <= 0 or w.imag <= 0:
        raise DomainError("points must lie in the upper half-plane")
    return 2.0 * math.asinh(abs(z - w) / (2.0 * math.sqrt(z.imag * w.imag)))


@dataclass(frozen=True)
class HolonomyType:
    kind: str  # "hyperbolic", "parabolic" or "elliptic"
    length: float
    angle: float  # unsigned rotation angle for elliptic elements, else 0
    trace: float


def translation_length(M) -> HolonomyType:
    M = np.asarray(M, dtype=float)
    det = M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    if abs(det - 1) > DET_TOL:
        M = normalize(M)
    tr = float(abs(M[0, 0] + M[1, 1]))
    if abs(tr - 2.0) <= PARABOLIC_TOL:
        return HolonomyType("parabolic", 0.0, 0.0, tr)
    if tr > 2.0:
        return HolonomyType("hyperbolic", 2.0 * math.acosh(tr / 2.0), 0.0, tr)
    return HolonomyType("elliptic", 0.0, 2.0 * math.acos(tr / 2.0), tr)


def rotation_angle(M) -> float:
    """Counterclockwise rotation angle in [0, 2pi) of an elliptic element about its fixed point."""
    M = normalize(np.asarray(M, dtype=float))
    a, c, d = M[0, 0], M[1, 0], M[1, 1]
    disc = (a + d) ** 2 - 4.0
    if disc >= 0 or c == 0:
        raise DomainError("matrix is not elliptic")
    z0 = complex((a - d) / (2 * c), math.sqrt(-disc) / (2 * abs(c)))
    deriv = 1.0 / (c * z0 + d) ** 2
    return math.atan2(deriv.imag, deriv.real) % (2 * math.pi)
