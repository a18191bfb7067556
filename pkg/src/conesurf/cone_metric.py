"""Hyperbolic cone-surfaces in edge-length coordinates."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from conesurf import developing
from conesurf.combinatorics import (
    CurveClass,
    Triangulation,
    flip,
    validate_curve,
    vertex_link,
)
from conesurf.errors import (
    ConeAngleWarning,
    EllipticHolonomyError,
    GeodesicFlipError,
    UnflippableError,
    UnrealizedGeodesicError,
)
from conesurf.foliation import (
    ShearRadius,
    corner_weights,
    reconstruct,
    shear_radius,
    validate_admissible,
)
from conesurf.hyperbolic import (
    arc_length_in_triangle,
    canonical_placement,
    rotation_angle,
    sas_distance,
    translation_length,
    triangle_angles,
)


@dataclass(frozen=True, eq=False)
class ConeSurface:
    T: Triangulation
    lengths: np.ndarray

    def __post_init__(self):
        L = np.array(self.lengths, dtype=float)
        validate_admissible(self.T, L)
        L.setflags(write=False)
        object.__setattr__(self, "lengths", L)

    def face_lengths(self, f: int) -> np.ndarray:
        return self.lengths[self.T.edge_index[f]]


@dataclass(frozen=True, eq=False)
class CircularFoliationData:
    weights: np.ndarray
    offsets: np.ndarray  # (F, 3), tangency offset at each corner
    inradii: np.ndarray  # (F,)


def corner_angles(X: ConeSurface) -> np.ndarray:
    """(F, 3) triangle angles at each corner."""
    return np.array([triangle_angles(X.face_lengths(f)) for f in range(X.T.num_faces)])


def cone_angles(X: ConeSurface) -> np.ndarray:
    theta = np.zeros(X.T.num_vertices)
    np.add.at(theta, X.T.corner_vertex.ravel(), corner_angles(X).ravel())
    return theta


def face_areas(X: ConeSurface) -> np.ndarray:
    return math.pi - corner_angles(X).sum(axis=1)


def area(X: ConeSurface) -> float:
    return float(face_areas(X).sum())


def gauss_bonnet_bound(T: Triangulation) -> float:
    """``2 pi (2g - 2 + n)``: area plus total cone angle."""
    return 2 * math.pi * (2 * T.genus - 2 + T.num_vertices)


def circular_foliation(X: ConeSurface) -> CircularFoliationData:
    offsets = corner_weights(X.T, X.lengths)
    radii = np.array([canonical_placement(X.face_lengths(f)).inradius for f in range(X.T.num_faces)])
    return CircularFoliationData(X.lengths, offsets, radii)


def shear_radius_coords(X: ConeSurface) -> ShearRadius:
    return shear_radius(X.T, X.lengths)


def from_shear_radius(T: Triangulation, sr: ShearRadius) -> ConeSurface:
    return ConeSurface(T, reconstruct(T, sr))


# -- flips ----------------------------------------------------------------------------

def geodesic_flip(X: ConeSurface, e: int) -> ConeSurface:
    """Replace edge ``e`` by the geodesic joining the opposite corners of its quadrilateral."""
    T = X.T
    if not 0 <= e < T.num_edges:
        raise IndexError(f"edge {e} out of range 0..{T.num_edges - 1}")
    (f1, k1), (f2, k2) = T.plus_side[e], T.minus_side[e]
    if f1 == f2:
        raise UnflippableError(f"edge {e + 1} is the enclosed edge of a self-folded face")
    ang = corner_angles(X)
    at_tail = ang[f1, (k1 + 1) % 3] + ang[f2, (k2 + 2) % 3]
    at_head = ang[f1, (k1 + 2) % 3] + ang[f2, (k2 + 1) % 3]
    for where, total in (("tail", at_tail), ("head", at_head)):
        if total >= math.pi:
            raise GeodesicFlipError(
                f"quadrilateral angle {total:.12g} >= pi at the {where} of edge {e + 1}",
                angle_sum=float(total),
            )
    L = X.lengths
    a = L[T.edge_index[f1, (k1 + 2) % 3]]
    b = L[T.edge_index[f2, (k2 + 1) % 3]]
    T2, _ = flip(T, e)
    new = L.copy()
    new[e] = sas_distance(a, b, at_tail)
    return ConeSurface(T2, new)


# -- curves -------------------------------------------------------------------------------

def _frames(X: ConeSurface):
    P = [canonical_placement(X.face_lengths(f)) for f in range(X.T.num_faces)]
    return developing.side_frames([p.inradius for p in P], [p.tangency_direction for p in P])


def _guard_angles(X: ConeSurface):
    theta = cone_angles(X)
    if np.any(theta >= math.pi):
        warnings.warn(
            f"cone angle {theta.max():.6g} >= pi; closed geodesics may pass through cone points",
            ConeAngleWarning,
            stacklevel=3,
        )


def _transitions(X: ConeSurface, c: CurveClass):
    A, Ainv = _frames(X)
    s = shear_radius(X.T, X.lengths).s
    return developing.transitions(X.T, c, A, Ainv, s)


def curve_holonomy(X: ConeSurface, c: CurveClass) -> np.ndarray:
    c = validate_curve(X.T, c)
    _guard_angles(X)
    return developing.chain_product(_transitions(X, c))


def _hyperbolic_chain(X: ConeSurface, c: CurveClass):
    gs = _transitions(X, c)
    kind = translation_length(developing.chain_product(gs))
    if kind.kind != "hyperbolic":
        raise EllipticHolonomyError(
            f"curve {c.name or '?'} has {kind.kind} holonomy (|tr| = {kind.trace:.12g})"
        )
    return gs, kind


def _axis_offsets(X: ConeSurface, c: CurveClass, gs) -> np.ndarray:
    A, Ainv = _frames(X)
    out = []
    for (f, k), H in zip(c.entries, developing.based_holonomies(gs)):
        out.append(developing.axis_offset(Ainv[f, k] @ H @ A[f, k]))
    return np.array(out)


def curve_length(X: ConeSurface, c: CurveClass) -> float:
    """Length of the closed geodesic running through the face chain of ``c``.

    Raises :class:`EllipticHolonomyError` if the holonomy is not hyperbolic, and
    :class:`UnrealizedGeodesicError` if its axis leaves the developed chain
    (the infimum in the class is then only approached by curves that snag on
    a cone point).
    """
    c = validate_curve(X.T, c)
    _guard_angles(X)
    gs, kind = _hyperbolic_chain(X, c)
    a = corner_weights(X.T, X.lengths)
    x = _axis_offsets(X, c, gs)
    for j, (f, k) in enumerate(c.entries):
        lo, hi = -a[f, (k + 1) % 3], a[f, (k + 2) % 3]
        if not lo < x[j] < hi:
            raise UnrealizedGeodesicError(
                f"curve {c.name or '?'}: axis misses edge {X.T.edge_index[f, k] + 1} "
                f"at crossing {j + 1}; no smooth geodesic through this face chain"
            )
    return kind.length


def link_rotation(X: ConeSurface, v: int) -> float:
    """Rotation angle of the holonomy around vertex ``v``, in [0, 2pi)."""
    c = vertex_link(X.T, v)
    H = developing.chain_product(_transitions(X, c))
    return rotation_angle(H)


def tangency_deviation(X: ConeSurface, c: CurveClass, signed: bool = False) -> np.ndarray:
    """Distance at each crossing between the geodesic and the entered face's tangency point.

    Measured along the developed edge.  Entries are ``inf`` where the axis
    misses the developed edge line.
    """
    c = validate_curve(X.T, c)
    gs, _ = _hyperbolic_chain(X, c)
    x = _axis_offsets(X, c, gs)
    return x if signed else np.abs(x)


def polyline_length(X: ConeSurface, c: CurveClass, tol: float = 1e-10) -> float:
    """Shortest closed polyline through the face chain of ``c``.

    Independent of the holonomy route: it minimizes the summed in-face arc
    lengths over the crossing positions.  The objective is convex but has
    kinks where a segment collapses onto a shared vertex, so it is smoothed
    as ``sum sqrt(d^2 + eps^2)`` and ``eps`` is driven down with warm starts.
    Agrees with :func:`curve_length` when the geodesic stays inside the chain.
    """
    c = validate_curve(X.T, c)
    visits = c.visits(X.T)
    FL = [X.face_lengths(f) for f, _, _ in visits]
    m = len(visits)

    def seg(u, j):
        return arc_length_in_triangle(FL[j], (visits[j][1], u[j]), (visits[j][2], 1.0 - u[(j + 1) % m]))

    u = np.full(m, 0.5)
    bounds = [(0.0, 1.0)] * m
    for eps in (1e-1, 1e-3, 1e-5, 1e-7, 1e-9, tol):
        def smooth(v, eps=eps):
            v = np.clip(v, 0.0, 1.0)
            return sum(math.sqrt(seg(v, j) ** 2 + eps * eps) for j in range(m))

        res = minimize(smooth, u, method="L-BFGS-B", bounds=bounds,
                       options={"ftol": 1e-16, "gtol": 1e-13, "maxiter": 100000})
        u = np.clip(res.x, 0.0, 1.0)
    return float(sum(seg(u, j) for j in range(m)))


# -- maximal angle ----------------------------------------------------------------------

def max_angle_sequence(T: Triangulation, p: int, n: int) -> ConeSurface:
    """The surface ``X_n`` whose cone angle at ``p`` approaches pi times the faces at ``p``."""
    if not 0 <= p < T.num_vertices:
        raise IndexError(f"vertex {p} out of range")
    if n < 1:
        raise ValueError("n must be a positive integer")
    at_p = (T.edge_ends == p).sum(axis=1)
    w0 = np.where(at_p == 2, 1.0 / n, np.where(at_p == 1, 1.0 + 1.0 / n, 2.0))
    r = np.full(T.num_vertices, float(n))
    r[p] = 1.0 / n
    return ConeSurface(T, w0 + r[T.edge_ends[:, 0]] + r[T.edge_ends[:, 1]])


def face_count_bound(T: Triangulation, p: int) -> float:
    """``pi`` times the number of faces incident to ``p``."""
    return math.pi * len(T.faces_at(p))
