import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conesurf.combinatorics import once_punctured_torus, vertex_link
from conesurf.cone_metric import ConeSurface
from conesurf.deformations import (
    StretchMode,
    circle_packed_limit,
    cusped_target,
    sample_ray,
    stretch,
    stretch_coords,
    stretch_via_reconstruct,
)
from conesurf.foliation import shear_radius
from helpers import ACCEPTANCE_SURFACES, TORUS_CURVES, TRIANGULATIONS, curve, random_admissible

PER, INT = StretchMode.PERIPHERAL, StretchMode.INTERIOR


def test_mode_parsing():
    assert StretchMode.parse("per") is PER
    assert StretchMode.parse("interior") is INT
    assert StretchMode.parse(INT) is INT
    with pytest.raises(ValueError):
        StretchMode.parse("sideways")


def test_peripheral_ln2_example():
    X = ConeSurface(once_punctured_torus(), [2.0, 2.0, 3.0])
    assert np.allclose(stretch(X, PER, math.log(2)).lengths, [3.0, 3.0, 4.0], atol=1e-14)
    assert np.allclose(stretch(X, INT, math.log(2)).lengths, [3.0, 3.0, 5.0], atol=1e-14)


def test_circle_packed_limit_example():
    X = ConeSurface(once_punctured_torus(), [2.0, 2.0, 3.0])
    assert np.allclose(circle_packed_limit(X).lengths, 1.0)
    assert np.allclose(cusped_target(X), shear_radius(X.T, X.lengths).s)


def _surface(name, seed):
    T = TRIANGULATIONS[name]()
    return ConeSurface(T, random_admissible(T, np.random.default_rng(seed)))


@pytest.mark.parametrize("name", ACCEPTANCE_SURFACES)
@given(t1=st.floats(-3, 3), t2=st.floats(-3, 3), seed=st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_group_law_and_commutation(name, t1, t2, seed):
    X = _surface(name, seed)
    for mode in (PER, INT):
        two = stretch(stretch(X, mode, t1), mode, t2).lengths
        assert np.allclose(two, stretch(X, mode, t1 + t2).lengths, rtol=1e-10, atol=1e-10)
    ab = stretch(stretch(X, PER, t1), INT, t2).lengths
    ba = stretch(stretch(X, INT, t2), PER, t1).lengths
    assert np.allclose(ab, ba, rtol=1e-10, atol=1e-10)


@pytest.mark.parametrize("name", ACCEPTANCE_SURFACES)
@given(t=st.floats(-4, 4), seed=st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_stretches_act_diagonally(name, t, seed):
    X = _surface(name, seed)
    sr = shear_radius(X.T, X.lengths)
    p = shear_radius(X.T, stretch(X, PER, t).lengths)
    assert np.allclose(p.s, sr.s, atol=1e-10) and np.allclose(p.r, math.exp(t) * sr.r, rtol=1e-10)
    q = shear_radius(X.T, stretch(X, INT, t).lengths)
    assert np.allclose(q.r, sr.r, rtol=1e-10) and np.allclose(q.s, math.exp(t) * sr.s, atol=1e-10)
    for mode in (PER, INT):
        c = stretch_coords(X, mode, t)
        assert np.allclose(stretch_via_reconstruct(X, mode, t).lengths, stretch(X, mode, t).lengths, rtol=1e-10)
        assert c.r.shape == sr.r.shape


def test_interior_antistretch_tends_to_circle_packing():
    X = _surface("genus2", 7)
    lim = circle_packed_limit(X).lengths
    for t in (-5.0, -15.0, -30.0):
        assert np.abs(stretch(X, INT, t).lengths - lim).max() < 10 * math.exp(t) * X.lengths.max()


def test_sample_ray_table():
    X = ConeSurface(once_punctured_torus(), [2.0, 2.0, 3.0])
    a = curve(X.T, TORUS_CURVES["a"], "a")
    table = sample_ray(X, "per", 0.0, 2.0, 5, [a, vertex_link(X.T, 0)])
    assert len(table) == 5 and table.lengths.shape == (5, 3)
    assert np.allclose(table.radii[:, 0], 0.5 * np.exp(table.t))
    assert np.allclose(table.shears, table.shears[0])
    assert table.curve_names == ["a", "link1"]
    assert np.all(np.isnan(table.curve_lengths[:, 1]))
    assert all("elliptic:link1" in f for f in table.flags)
    assert "angle>=pi" in table.flags[0]
    assert np.all(np.isfinite(table.curve_lengths[:, 0]))


def test_sample_ray_validation():
    X = ConeSurface(once_punctured_torus(), [2.0, 2.0, 3.0])
    with pytest.raises(ValueError):
        sample_ray(X, PER, 1.0, 0.0, 5)
    with pytest.raises(ValueError):
        sample_ray(X, PER, 0.0, 1.0, 1)


def test_interior_ray_radii_fixed():
    X = _surface("sphere", 3)
    table = sample_ray(X, INT, -3.0, 0.0, 4)
    assert np.allclose(table.radii, table.radii[0])
    assert np.allclose(table.shears[0] * math.exp(3.0), table.shears[-1])
