"""Complete cusped surfaces given by balanced shears on an ideal triangulation.

Uses the same incircle-frame developing as cone surfaces, with every face
the ideal triangle.  Crossing an edge slides by minus its shear, so the
shear is the signed gap between the two tangency points on the edge, the
classical shear coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from conesurf import developing
from conesurf.combinatorics import CurveClass, Triangulation, validate_curve
from conesurf.errors import GeometricError, ParabolicClassError
from conesurf.foliation import project_balanced
from conesurf.hyperbolic import IDEAL_INRADIUS, translation_length

CUSPED_BALANCE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class CuspedSurface:
    T: Triangulation
    shears: np.ndarray

    def __post_init__(self):
        s = project_balanced(self.T, self.shears, tol=CUSPED_BALANCE_TOL)
        s.setflags(write=False)
        object.__setattr__(self, "shears", s)


def _ideal_frames(T: Triangulation):
    dirs = developing.ideal_tangency_dirs()
    return developing.side_frames([IDEAL_INRADIUS] * T.num_faces, [dirs] * T.num_faces)


def cusped_holonomy(Y: CuspedSurface, c: CurveClass) -> np.ndarray:
    c = validate_curve(Y.T, c)
    A, Ainv = _ideal_frames(Y.T)
    return developing.chain_product(developing.transitions(Y.T, c, A, Ainv, Y.shears))


def cusped_trace(Y: CuspedSurface, c: CurveClass) -> float:
    H = cusped_holonomy(Y, c)
    return float(abs(H[0, 0] + H[1, 1]))


def cusped_length(Y: CuspedSurface, c: CurveClass) -> float:
    kind = translation_length(cusped_holonomy(Y, c))
    if kind.kind == "parabolic":
        raise ParabolicClassError(f"curve {c.name or '?'} is peripheral (|tr| = 2)")
    if kind.kind != "hyperbolic":
        raise GeometricError(f"curve {c.name or '?'} has elliptic holonomy on a cusped surface")
    return kind.length
