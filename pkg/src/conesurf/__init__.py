"""Coordinates and deformations of hyperbolic cone-surfaces on a fixed triangulation."""

from conesurf.combinatorics import (
    CurveClass,
    Triangulation,
    build_triangulation,
    canonical_form,
    flip,
    validate_curve,
    vertex_link,
    vertex_star,
)
from conesurf.cone_metric import (
    ConeSurface,
    area,
    circular_foliation,
    cone_angles,
    curve_holonomy,
    curve_length,
    from_shear_radius,
    geodesic_flip,
    max_angle_sequence,
    shear_radius_coords,
    tangency_deviation,
)
from conesurf.cusped import CuspedSurface, cusped_holonomy, cusped_length
from conesurf.deformations import StretchMode, circle_packed_limit, cusped_target, sample_ray, stretch
from conesurf.foliation import (
    ShearRadius,
    corner_weights,
    decompose,
    radius_map,
    reconstruct,
    shear_map,
    shear_radius,
    validate_admissible,
)

__version__ = "0.1.0"

__all__ = [
    "area",
    "build_triangulation",
    "canonical_form",
    "circle_packed_limit",
    "circular_foliation",
    "cone_angles",
    "ConeSurface",
    "corner_weights",
    "curve_holonomy",
    "curve_length",
    "CurveClass",
    "cusped_holonomy",
    "cusped_length",
    "cusped_target",
    "CuspedSurface",
    "decompose",
    "flip",
    "from_shear_radius",
    "geodesic_flip",
    "max_angle_sequence",
    "radius_map",
    "reconstruct",
    "sample_ray",
    "shear_map",
    "shear_radius",
    "shear_radius_coords",
    "ShearRadius",
    "stretch",
    "StretchMode",
    "tangency_deviation",
    "Triangulation",
    "validate_admissible",
    "validate_curve",
    "vertex_link",
    "vertex_star",
]
