"""Shared samplers and independent reference computations for the tests."""

import math

import numpy as np
from hypothesis import strategies as st

from conesurf.combinatorics import (
    CurveClass,
    genus_two_one_vertex,
    once_punctured_torus,
    self_folded_sphere,
    thrice_punctured_sphere,
    validate_curve,
)
from conesurf.errors import AdmissibilityError
from conesurf.foliation import ShearRadius, validate_admissible

TRIANGULATIONS = {
    "torus": once_punctured_torus,
    "sphere": thrice_punctured_sphere,
    "folded": self_folded_sphere,
    "genus2": genus_two_one_vertex,
}
ACCEPTANCE_SURFACES = ("torus", "sphere", "genus2")

# crossing sequences ([edge, face], 1-based) of essential non-peripheral classes
TORUS_CURVES = {
    "a": [[2, 2], [3, 1]],
    "b": [[1, 1], [-2, 2]],
    "c": [[1, 1], [-3, 2]],
    "ab": [[1, 1], [-2, 2], [1, 1], [-3, 2]],
    "aab": [[1, 1], [-2, 2], [1, 1], [-2, 2], [1, 1], [-3, 2]],
}
# every hyperbolic class on the thrice-punctured sphere is non-simple
SPHERE_CURVES = {
    "eight12": [[1, 1], [-3, 2], [1, 1], [-2, 2]],
    "eight13": [[1, 1], [-3, 2], [2, 1], [-3, 2]],
    "eight23": [[2, 1], [-1, 2], [2, 1], [-3, 2]],
    "tri": [[1, 1], [-3, 2], [2, 1], [-1, 2], [3, 1], [-2, 2]],
}


def curve(T, steps, name=""):
    return validate_curve(T, CurveClass.from_steps(T, steps, name))


def random_admissible(T, rng, lo=-1.0, hi=1.5):
    """Log-uniform edge weights, rejection-sampled into the admissible cone."""
    while True:
        w = np.exp(rng.uniform(lo, hi, T.num_edges))
        try:
            validate_admissible(T, w)
            return w
        except AdmissibilityError:
            continue


def balanced_basis(T):
    """Orthonormal basis of the shear vectors with vanishing star sums (columns)."""
    B = T.balance_matrix().astype(float)
    _, sv, vt = np.linalg.svd(B)
    rank = int((sv > 1e-10 * sv.max()).sum())
    return vt[rank:].T


def random_balanced(T, rng, scale=1.0):
    """Isotropic Gaussian on the balanced subspace; exactly zero when that subspace is trivial."""
    N = balanced_basis(T)
    return N @ rng.normal(scale=scale, size=N.shape[1])


def random_sr(T, rng):
    return ShearRadius(random_balanced(T, rng), np.exp(rng.uniform(-1, 1, T.num_vertices)))


def law_of_cosines_angles(L):
    """Textbook angles, opposite each side."""
    l1, l2, l3 = L
    out = []
    for a, b, c in ((l2, l3, l1), (l3, l1, l2), (l1, l2, l3)):
        cos = (math.cosh(a) * math.cosh(b) - math.cosh(c)) / (math.sinh(a) * math.sinh(b))
        out.append(math.acos(max(-1.0, min(1.0, cos))))
    return np.array(out)


def triangle_lengths():
    """Hypothesis strategy for hyperbolic triangles via positive tangency offsets."""
    off = st.floats(min_value=0.01, max_value=8.0, allow_nan=False)
    return st.tuples(off, off, off).map(lambda t: np.array([t[1] + t[2], t[2] + t[0], t[0] + t[1]]))


def log_weights(n, lo=-2.0, hi=3.0):
    return st.lists(st.floats(min_value=lo, max_value=hi, allow_nan=False), min_size=n, max_size=n).map(
        lambda xs: np.exp(np.array(xs))
    )
