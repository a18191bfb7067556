"""Peripheral and interior stretch rays.

Both stretches act diagonally in shear-radius coordinates: the peripheral
one scales radii by ``e^t``, the interior one scales shears by ``e^t``.  On
edge lengths that becomes scaling one of the two summands of the
decomposition ``l = w0 + r(tail) + r(head)``.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from conesurf.cone_metric import ConeSurface, cone_angles, curve_length
from conesurf.combinatorics import CurveClass
from conesurf.errors import ConeAngleWarning, EllipticHolonomyError
from conesurf.foliation import ShearRadius, decompose, peripheral_part, reconstruct, shear_map, shear_radius


class StretchMode(enum.Enum):
    PERIPHERAL = "peripheral"
    INTERIOR = "interior"

    @classmethod
    def parse(cls, text) -> StretchMode:
        if isinstance(text, cls):
            return text
        key = str(text).lower()
        for mode in cls:
            if mode.value.startswith(key[:3]):
                return mode
        raise ValueError(f"unknown stretch mode {text!r}")


def stretch(X: ConeSurface, mode, t: float) -> ConeSurface:
    mode = StretchMode.parse(mode)
    w0, r = decompose(X.T, X.lengths)
    per = peripheral_part(X.T, r)
    if mode is StretchMode.PERIPHERAL:
        L = w0 + math.exp(t) * per
    else:
        L = math.exp(t) * w0 + per
    return ConeSurface(X.T, L)


def stretch_coords(X: ConeSurface, mode, t: float) -> ShearRadius:
    """Shear-radius coordinates of ``stretch(X, mode, t)`` without forming lengths."""
    mode = StretchMode.parse(mode)
    sr = shear_radius(X.T, X.lengths)
    if mode is StretchMode.PERIPHERAL:
        return ShearRadius(sr.s, math.exp(t) * sr.r)
    return ShearRadius(math.exp(t) * sr.s, sr.r)


def stretch_via_reconstruct(X: ConeSurface, mode, t: float) -> ConeSurface:
    """The same deformation routed through the inverse chart; a cross-check."""
    return ConeSurface(X.T, reconstruct(X.T, stretch_coords(X, mode, t)))


def circle_packed_limit(X: ConeSurface) -> ConeSurface:
    _, r = decompose(X.T, X.lengths)
    return ConeSurface(X.T, peripheral_part(X.T, r))


def cusped_target(X: ConeSurface) -> np.ndarray:
    return shear_map(X.T, X.lengths)


@dataclass
class RayTable:
    mode: StretchMode
    t: np.ndarray
    lengths: np.ndarray  # (rows, E)
    angles: np.ndarray  # (rows, V)
    shears: np.ndarray  # (rows, E)
    radii: np.ndarray  # (rows, V)
    curve_names: list[str] = field(default_factory=list)
    curve_lengths: np.ndarray | None = None  # (rows, curves); nan where not hyperbolic
    flags: list[list[str]] = field(default_factory=list)

    def __len__(self):
        return len(self.t)


def sample_ray(X: ConeSurface, mode, t0: float, t1: float, steps: int,
               curves: list[CurveClass] | tuple = ()) -> RayTable:
    mode = StretchMode.parse(mode)
    if not t0 < t1:
        raise ValueError("need t0 < t1")
    if steps < 2:
        raise ValueError("need at least 2 steps")
    ts = np.linspace(t0, t1, steps)
    sr = shear_radius(X.T, X.lengths)
    names = [c.name or f"curve{i + 1}" for i, c in enumerate(curves)]
    rows_L, rows_th, rows_s, rows_r, rows_c, flags = [], [], [], [], [], []
    for t in ts:
        Xt = stretch(X, mode, t)
        scale = math.exp(t)
        rows_L.append(Xt.lengths)
        theta = cone_angles(Xt)
        rows_th.append(theta)
        if mode is StretchMode.PERIPHERAL:
            rows_s.append(sr.s)
            rows_r.append(scale * sr.r)
        else:
            rows_s.append(scale * sr.s)
            rows_r.append(sr.r)
        row_flags = []
        if np.any(theta >= math.pi):
            row_flags.append("angle>=pi")
        lens = []
        for name, c in zip(names, curves):
            try:
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", ConeAngleWarning)
                    lens.append(curve_length(Xt, c))
            except EllipticHolonomyError:
                lens.append(math.nan)
                row_flags.append(f"elliptic:{name}")
        rows_c.append(lens)
        flags.append(row_flags)
    return RayTable(
        mode, ts, np.array(rows_L), np.array(rows_th), np.array(rows_s), np.array(rows_r),
        names, np.array(rows_c).reshape(len(ts), len(names)), flags,
    )
