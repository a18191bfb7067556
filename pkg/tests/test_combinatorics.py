import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conesurf.combinatorics import (
    CurveClass,
    build_triangulation,
    canonical_form,
    flip,
    is_isomorphic,
    once_punctured_torus,
    self_folded_sphere,
    thrice_punctured_sphere,
    transport_curve,
    validate_curve,
    vertex_link,
    vertex_star,
)
from conesurf.errors import (
    AdjacencyError,
    DegenerateError,
    EmptyCurveError,
    EulerError,
    OrientabilityError,
    TriangulationError,
    UnflippableError,
)
from helpers import TORUS_CURVES, TRIANGULATIONS, curve


@pytest.mark.parametrize("name, counts", [
    ("torus", (1, 3, 2, 1)),
    ("sphere", (3, 3, 2, 0)),
    ("folded", (3, 3, 2, 0)),
    ("genus2", (1, 9, 6, 2)),
])
def test_standard_counts(name, counts):
    T = TRIANGULATIONS[name]()
    assert (T.num_vertices, T.num_edges, T.num_faces, T.genus) == counts


def test_gluing_orientation_decides_topology():
    # reversing the cyclic order on the second face turns the sphere into the torus
    assert build_triangulation([[1, 2, 3], [-1, -2, -3]]).genus == 1
    assert build_triangulation([[1, 2, 3], [-1, -3, -2]]).num_vertices == 3


def test_orientability_error():
    with pytest.raises(OrientabilityError):
        build_triangulation([[1, 2, 3], [1, -3, -2]])


def test_unglued_edge():
    with pytest.raises(TriangulationError):
        build_triangulation([[1, 2, 3], [-1, -2, 4]])


def test_disconnected_is_euler_error():
    with pytest.raises(EulerError):
        build_triangulation([[1, 2, 3], [-1, -2, -3], [4, 5, 6], [-4, -5, -6]])


def test_degenerate_error_is_a_triangulation_error():
    assert issubclass(DegenerateError, TriangulationError)


@pytest.mark.parametrize("name", list(TRIANGULATIONS))
def test_euler_identities(name):
    T = TRIANGULATIONS[name]()
    g, n = T.genus, T.num_vertices
    assert T.num_edges == 6 * g - 6 + 3 * n
    assert T.num_faces == 4 * g - 4 + 2 * n
    assert sum(len(s) for s in T.star_corners) == 2 * T.num_edges


@pytest.mark.parametrize("name", list(TRIANGULATIONS))
def test_stars_partition_corners(name):
    T = TRIANGULATIONS[name]()
    seen = sorted(c for s in T.star_corners for c in s)
    assert seen == [(f, c) for f in range(T.num_faces) for c in range(3)]
    for v, star in enumerate(T.star_corners):
        assert len(vertex_star(T, v)) == len(star)


def test_star_sizes():
    assert len(vertex_star(once_punctured_torus(), 0)) == 6
    T = thrice_punctured_sphere()
    assert [len(vertex_star(T, v)) for v in range(3)] == [2, 2, 2]
    # loop edges appear twice in the torus star
    star = vertex_star(once_punctured_torus(), 0)
    assert sorted(e for e, _ in star) == [0, 0, 1, 1, 2, 2]
    with pytest.raises(IndexError):
        vertex_star(T, 3)


def test_self_folded_star():
    T = self_folded_sphere()
    sizes = sorted(len(s) for s in T.star_corners)
    assert sizes == [1, 1, 4]
    assert len(T.faces_at(0)) == 1


def test_star_rotation_rule():
    # the half-edge after h is the side following h's partner inside its face
    for name in TRIANGULATIONS:
        T = TRIANGULATIONS[name]()
        for star in T.star_corners:
            for (f, c), (f2, c2) in zip(star, star[1:] + star[:1]):
                fp, kp = T.partner(f, (c + 1) % 3)
                assert (fp, (kp + 1) % 3) == (f2, c2)


@pytest.mark.parametrize("e", range(3))
def test_torus_flips_are_isomorphic(e):
    T = once_punctured_torus()
    T2, relabel = flip(T, e)
    assert is_isomorphic(T, T2)
    assert relabel == {0: 0, 1: 1, 2: 2}


@pytest.mark.parametrize("name", ["torus", "sphere", "genus2"])
def test_flip_involution(name):
    T = TRIANGULATIONS[name]()
    for e in range(T.num_edges):
        try:
            T2, _ = flip(T, e)
        except UnflippableError:
            continue
        assert (T2.genus, T2.num_vertices, T2.num_edges, T2.num_faces) == (
            T.genus, T.num_vertices, T.num_edges, T.num_faces)
        T3, _ = flip(T2, e)
        assert canonical_form(T3) == canonical_form(T)


def test_self_folded_flip_refused():
    T = self_folded_sphere()
    # edges 2 and 3 are enclosed by a self-folded face
    for e in (1, 2):
        with pytest.raises(UnflippableError):
            flip(T, e)
    with pytest.raises(IndexError):
        flip(T, 7)


def test_canonical_form_ignores_labels():
    T = once_punctured_torus()
    relabelled = build_triangulation([[3, 1, 2], [-2, -3, -1]])
    assert canonical_form(T) == canonical_form(relabelled)
    assert not is_isomorphic(T, thrice_punctured_sphere())


@given(st.permutations([1, 2, 3, 4, 5, 6, 7, 8, 9]), st.lists(st.sampled_from([1, -1]), min_size=9, max_size=9))
@settings(max_examples=25, deadline=None)
def test_canonical_form_relabel_invariance(perm, signs):
    T = TRIANGULATIONS["genus2"]()
    faces = [[signs[abs(x) - 1] * perm[abs(x) - 1] * (1 if x > 0 else -1) for x in face]
             for face in T.signed_faces()]
    assert canonical_form(build_triangulation(faces)) == canonical_form(T)


def test_curve_validation_examples():
    T = once_punctured_torus()
    c = validate_curve(T, CurveClass.from_steps(T, [[2, 2], [3, 1]]))
    assert len(c) == 2
    with pytest.raises(EmptyCurveError):
        validate_curve(T, CurveClass(()))
    with pytest.raises(AdjacencyError):
        validate_curve(T, CurveClass.from_steps(T, [[2, 2], [3, 2]]))


def test_backtrack_removed():
    T = once_punctured_torus()
    # cross edge 1 into face 2, then straight back into face 1
    back = CurveClass.from_steps(T, [[1, 2], [-1, 1]])
    with pytest.raises(EmptyCurveError):
        validate_curve(T, back)


def test_backtrack_inside_longer_curve():
    T = once_punctured_torus()
    base = curve(T, TORUS_CURVES["a"])
    f, k = base.entries[-1]
    # after entering face f, cross one of its other sides and immediately come back
    k2 = next(x for x in range(3) if x != k and T.partner(*base.entries[0])[1] != x)
    out = T.partner(f, k2)
    detour = base.entries + (out, (f, k2))
    assert validate_curve(T, CurveClass(detour)) == base


@pytest.mark.parametrize("name", list(TRIANGULATIONS))
def test_validate_is_idempotent_and_rotation_invariant(name):
    T = TRIANGULATIONS[name]()
    for v in range(T.num_vertices):
        c = vertex_link(T, v)
        assert validate_curve(T, c) == c
        for s in range(len(c)):
            assert validate_curve(T, c.rotated(s)) == c


def test_steps_roundtrip():
    T = once_punctured_torus()
    for steps in TORUS_CURVES.values():
        c = curve(T, steps)
        assert curve(T, c.steps(T)) == c


def test_transport_through_flip_keeps_crossings_outside_quad():
    T = once_punctured_torus()
    c = curve(T, TORUS_CURVES["a"])
    for e in range(3):
        c2 = transport_curve(T, e, c)
        T2, _ = flip(T, e)
        assert validate_curve(T2, c2) == c2


def test_frozen_properties():
    T = once_punctured_torus()
    with pytest.raises(Exception):
        T.edge_index[0, 0] = 5
    assert list(itertools.chain(*T.signed_faces())) == [1, 2, 3, -1, -2, -3]
