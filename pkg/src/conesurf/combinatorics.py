"""Triangulations of marked surfaces given as oriented face gluings.

Faces are triangles whose three sides are listed counterclockwise.  Each side
carries a signed edge label: ``+e`` when the side runs along edge ``e`` in the
edge's own direction, ``-e`` when it runs against it.  File and constructor
input uses 1-based labels (``0`` has no sign); everything internal is 0-based.

Indexing inside a face: side ``k`` runs from corner ``k+1`` to corner ``k+2``
(mod 3), so corner ``c`` sits opposite side ``c``.  This matches the usual
labelling of a triangle with vertices v1, v2, v3 counterclockwise and edge e_i
opposite v_i.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from conesurf.errors import (
    AdjacencyError,
    DegenerateError,
    EmptyCurveError,
    EulerError,
    OrientabilityError,
    TriangulationError,
    UnflippableError,
)

Side = tuple[int, int]  # (face, side index)
Corner = tuple[int, int]  # (face, corner index)
HalfEdge = tuple[int, int]  # (edge, +1 / -1); +1 when leaving the edge's tail


def tail_corner(k: int) -> int:
    return (k + 1) % 3


def head_corner(k: int) -> int:
    return (k + 2) % 3


def out_side(c: int) -> int:
    """Side of a face leaving corner ``c`` counterclockwise."""
    return (c + 2) % 3


def in_side(c: int) -> int:
    """Side of a face arriving at corner ``c``."""
    return (c + 1) % 3


@dataclass(frozen=True, eq=False)
class Triangulation:
    """Immutable triangulation with all derived combinatorics precomputed.

    Build instances with :func:`build_triangulation`.
    """

    faces: tuple[tuple[int, int, int], ...]
    num_faces: int = field(init=False)
    num_edges: int = field(init=False)
    num_vertices: int = field(init=False)
    genus: int = field(init=False)
    edge_index: np.ndarray = field(init=False, repr=False)
    edge_sign: np.ndarray = field(init=False, repr=False)
    plus_side: tuple[Side, ...] = field(init=False, repr=False)
    minus_side: tuple[Side, ...] = field(init=False, repr=False)
    corner_vertex: np.ndarray = field(init=False, repr=False)
    edge_ends: np.ndarray = field(init=False, repr=False)
    star_corners: tuple[tuple[Corner, ...], ...] = field(init=False, repr=False)

    def __post_init__(self):
        set_ = object.__setattr__
        faces = self.faces
        F = len(faces)
        if F == 0:
            raise DegenerateError("triangulation has no faces")
        for i, face in enumerate(faces):
            if len(face) != 3 or any(int(x) == 0 for x in face):
                raise TriangulationError(f"face {i + 1} must list 3 nonzero signed edges")

        labels = sorted({abs(int(x)) for face in faces for x in face})
        E = len(labels)
        if labels != list(range(1, E + 1)):
            raise TriangulationError(f"edge labels must be 1..{E} without gaps")

        edge_index = np.array([[abs(int(x)) - 1 for x in face] for face in faces], dtype=int)
        edge_sign = np.array([[1 if int(x) > 0 else -1 for x in face] for face in faces], dtype=int)

        plus: list[Side | None] = [None] * E
        minus: list[Side | None] = [None] * E
        for f in range(F):
            for k in range(3):
                e, s = edge_index[f, k], edge_sign[f, k]
                slot = plus if s > 0 else minus
                if slot[e] is not None:
                    raise OrientabilityError(
                        f"edge {e + 1} appears twice with sign {'+' if s > 0 else '-'}"
                    )
                slot[e] = (f, k)
        for e in range(E):
            if plus[e] is None or minus[e] is None:
                raise TriangulationError(f"edge {e + 1} is not glued on both sides")
        if 2 * E != 3 * F:
            raise EulerError("every edge must bound exactly two face-sides")

        # corner identifications: the + side runs tail->head, the - side head->tail
        parent = list(range(3 * F))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        for e in range(E):
            (fp, kp), (fm, km) = plus[e], minus[e]
            union(3 * fp + tail_corner(kp), 3 * fm + head_corner(km))
            union(3 * fp + head_corner(kp), 3 * fm + tail_corner(km))

        roots = sorted({find(x) for x in range(3 * F)})
        vid = {r: i for i, r in enumerate(roots)}
        corner_vertex = np.array(
            [[vid[find(3 * f + c)] for c in range(3)] for f in range(F)], dtype=int
        )
        V = len(roots)

        # connectivity of the face adjacency graph
        seen = {0}
        queue = deque([0])
        while queue:
            f = queue.popleft()
            for k in range(3):
                e = edge_index[f, k]
                other = minus[e] if edge_sign[f, k] > 0 else plus[e]
                if other[0] not in seen:
                    seen.add(other[0])
                    queue.append(other[0])
        if len(seen) != F:
            raise EulerError("face gluing is disconnected")

        chi = V - E + F
        if chi > 2 or chi % 2:
            raise EulerError(f"Euler characteristic {chi} is not 2 - 2g")
        g = (2 - chi) // 2
        if 2 * g - 2 + V <= 0:
            raise DegenerateError(f"2g - 2 + n = {2 * g - 2 + V} must be positive")
        if E != 6 * g - 6 + 3 * V or F != 4 * g - 4 + 2 * V:
            raise EulerError(f"counts E={E}, F={F} do not match g={g}, n={V}")

        edge_ends = np.array(
            [
                [corner_vertex[plus[e][0], tail_corner(plus[e][1])],
                 corner_vertex[plus[e][0], head_corner(plus[e][1])]]
                for e in range(E)
            ],
            dtype=int,
        )

        set_(self, "num_faces", F)
        set_(self, "num_edges", E)
        set_(self, "num_vertices", V)
        set_(self, "genus", g)
        set_(self, "edge_index", edge_index)
        set_(self, "edge_sign", edge_sign)
        set_(self, "plus_side", tuple(plus))
        set_(self, "minus_side", tuple(minus))
        set_(self, "corner_vertex", corner_vertex)
        set_(self, "edge_ends", edge_ends)
        edge_index.setflags(write=False)
        edge_sign.setflags(write=False)
        corner_vertex.setflags(write=False)
        edge_ends.setflags(write=False)
        set_(self, "star_corners", self._compute_stars())
        self._check_stars()

    # -- derived structure -------------------------------------------------

    def partner(self, f: int, k: int) -> Side:
        """The face-side glued to side ``k`` of face ``f``."""
        e = self.edge_index[f, k]
        return self.minus_side[e] if self.edge_sign[f, k] > 0 else self.plus_side[e]

    def _next_corner(self, f: int, c: int) -> Corner:
        # the corner following (f, c) counterclockwise around its vertex
        f2, k2 = self.partner(f, in_side(c))
        return f2, tail_corner(k2)

    def _compute_stars(self):
        stars = []
        for v in range(self.num_vertices):
            start = min(
                (f, c) for f in range(self.num_faces) for c in range(3)
                if self.corner_vertex[f, c] == v
            )
            orbit = [start]
            cur = self._next_corner(*start)
            while cur != start:
                orbit.append(cur)
                cur = self._next_corner(*cur)
                if len(orbit) > 3 * self.num_faces:
                    raise TriangulationError("corner rotation does not close up")
            stars.append(tuple(orbit))
        return tuple(stars)

    def _check_stars(self):
        counted = sorted(c for star in self.star_corners for c in star)
        expected = [(f, c) for f in range(self.num_faces) for c in range(3)]
        if counted != expected:
            raise TriangulationError("vertex stars do not partition the corners")
        for v, star in enumerate(self.star_corners):
            if any(self.corner_vertex[f, c] != v for f, c in star):
                raise TriangulationError("vertex star inconsistent with corner orbits")

    @property
    def num_marked(self) -> int:
        return self.num_vertices

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces

    def half_edge(self, f: int, c: int) -> HalfEdge:
        """Outgoing half-edge along the side leaving corner ``(f, c)``."""
        k = out_side(c)
        return int(self.edge_index[f, k]), int(self.edge_sign[f, k])

    def faces_at(self, v: int) -> set[int]:
        return {f for f, _ in self.star_corners[v]}

    def side_vertices(self, f: int, k: int) -> tuple[int, int]:
        return (int(self.corner_vertex[f, tail_corner(k)]),
                int(self.corner_vertex[f, head_corner(k)]))

    def balance_matrix(self) -> np.ndarray:
        """(V, E) matrix counting each edge's half-edges in every vertex star."""
        B = np.zeros((self.num_vertices, self.num_edges))
        for v in range(self.num_vertices):
            for f, c in self.star_corners[v]:
                B[v, self.half_edge(f, c)[0]] += 1
        return B

    def signed_faces(self) -> list[list[int]]:
        return [[int(x) for x in face] for face in self.faces]

    def __eq__(self, other):
        if not isinstance(other, Triangulation):
            return NotImplemented
        return self.signed_faces() == other.signed_faces()

    def __hash__(self):
        return hash(tuple(map(tuple, self.signed_faces())))

    def __repr__(self):
        return (f"Triangulation(g={self.genus}, n={self.num_vertices}, "
                f"faces={self.signed_faces()})")


def build_triangulation(faces) -> Triangulation:
    """Validate a face gluing (1-based signed edge triples) and derive its combinatorics."""
    return Triangulation(tuple(tuple(int(x) for x in face) for face in faces))


def vertex_star(T: Triangulation, v: int) -> tuple[HalfEdge, ...]:
    """Counterclockwise cyclic list of outgoing half-edges at vertex ``v``.

    A loop edge at ``v`` shows up twice, once per direction.
    """
    if not 0 <= v < T.num_vertices:
        raise IndexError(f"vertex {v} out of range 0..{T.num_vertices - 1}")
    return tuple(T.half_edge(f, c) for f, c in T.star_corners[v])


# -- standard examples -------------------------------------------------------

def once_punctured_torus() -> Triangulation:
    return build_triangulation([[1, 2, 3], [-1, -2, -3]])


def thrice_punctured_sphere() -> Triangulation:
    return build_triangulation([[1, 2, 3], [-1, -3, -2]])


def self_folded_sphere() -> Triangulation:
    """Thrice-punctured sphere with two self-folded faces (vertex 0 lies in one face)."""
    return build_triangulation([[1, 2, -2], [-1, 3, -3]])


def genus_two_one_vertex() -> Triangulation:
    """Fan triangulation of the octagon a b a^-1 b^-1 c d c^-1 d^-1."""
    word = [1, 2, -1, -2, 3, 4, -3, -4]
    diag = {k: 3 + k for k in range(2, 7)}  # diagonals P0 -> Pk are edges 5..9
    faces = [[word[0], word[1], -diag[2]]]
    for k in range(2, 6):
        faces.append([diag[k], word[k], -diag[k + 1]])
    faces.append([diag[6], word[6], word[7]])
    return build_triangulation(faces)


# -- flips -------------------------------------------------------------------------

def flip(T: Triangulation, e: int) -> tuple[Triangulation, dict[int, int]]:
    """Replace edge ``e`` (0-based) by the other diagonal of its quadrilateral.

    The new diagonal keeps label ``e``; faces keep their indices.  Returns the
    new triangulation and the (identity) edge relabelling.
    """
    if not 0 <= e < T.num_edges:
        raise IndexError(f"edge {e} out of range 0..{T.num_edges - 1}")
    (f1, k1), (f2, k2) = T.plus_side[e], T.minus_side[e]
    if f1 == f2:
        raise UnflippableError(f"edge {e + 1} is the enclosed edge of a self-folded face")
    faces = T.signed_faces()
    x1, y1 = faces[f1][(k1 + 1) % 3], faces[f1][(k1 + 2) % 3]
    x2, y2 = faces[f2][(k2 + 1) % 3], faces[f2][(k2 + 2) % 3]
    faces[f1] = [y1, x2, e + 1]
    faces[f2] = [y2, x1, -(e + 1)]
    return build_triangulation(faces), {i: i for i in range(T.num_edges)}


def _flip_side_map(T: Triangulation, e: int) -> dict[Side, Side]:
    """Where each boundary side of the flipped quadrilateral lands."""
    (f1, k1), (f2, k2) = T.plus_side[e], T.minus_side[e]
    return {
        (f1, (k1 + 2) % 3): (f1, 0),  # y1
        (f2, (k2 + 1) % 3): (f1, 1),  # x2
        (f2, (k2 + 2) % 3): (f2, 0),  # y2
        (f1, (k1 + 1) % 3): (f2, 1),  # x1
    }


def canonical_form(T: Triangulation) -> tuple:
    """Relabelling-invariant code: equal codes iff orientation-preserving isomorphic."""
    best = None
    for f0 in range(T.num_faces):
        for rot in range(3):
            code = _bfs_code(T, f0, rot)
            if best is None or code < best:
                best = code
    return best


def _bfs_code(T, f0, rot):
    face_rot = {f0: rot}
    order = [f0]
    edge_label: dict[int, int] = {}
    edge_flip: dict[int, int] = {}
    code = []
    i = 0
    while i < len(order):
        f = order[i]
        i += 1
        r = face_rot[f]
        row = []
        for j in range(3):
            k = (r + j) % 3
            e, s = int(T.edge_index[f, k]), int(T.edge_sign[f, k])
            if e not in edge_label:
                edge_label[e] = len(edge_label) + 1
                edge_flip[e] = s
            row.append(edge_label[e] * s * edge_flip[e])
            f2, k2 = T.partner(f, k)
            if f2 not in face_rot:
                face_rot[f2] = k2
                order.append(f2)
        code.append(tuple(row))
    return tuple(code)


def is_isomorphic(A: Triangulation, B: Triangulation) -> bool:
    if (A.num_faces, A.num_vertices) != (B.num_faces, B.num_vertices):
        return False
    return canonical_form(A) == canonical_form(B)


# -- curves ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CurveClass:
    """Closed curve as a cyclic sequence of face entries ``(face, side)``.

    Entry ``j`` crosses the edge on that side and enters the face; the side it
    left in the previous face is the glued partner.
    """

    entries: tuple[Side, ...]
    name: str = ""

    def __len__(self):
        return len(self.entries)

    @classmethod
    def from_steps(cls, T: Triangulation, steps, name: str = "") -> CurveClass:
        """Parse 1-based ``[edge, face]`` steps (edge crossed, face entered).

        If the edge bounds the entered face on two sides, the sign of ``edge``
        picks the side carrying that signed label; otherwise the sign is ignored.
        """
        entries = []
        for edge, face in steps:
            e, f = abs(int(edge)) - 1, int(face) - 1
            if not 0 <= e < T.num_edges or not 0 <= f < T.num_faces:
                raise IndexError(f"step ({edge}, {face}) out of range")
            ks = [k for k in range(3) if T.edge_index[f, k] == e]
            if not ks:
                raise AdjacencyError(f"edge {e + 1} does not bound face {f + 1}")
            if len(ks) == 2:
                want = 1 if int(edge) > 0 else -1
                ks = [k for k in ks if T.edge_sign[f, k] == want]
            entries.append((f, ks[0]))
        return cls(tuple(entries), name)

    def steps(self, T: Triangulation) -> list[list[int]]:
        """1-based signed ``[edge, face]`` steps, the inverse of :meth:`from_steps`."""
        return [[int(T.edge_index[f, k] + 1) * int(T.edge_sign[f, k]), f + 1]
                for f, k in self.entries]

    def reversed(self, T: Triangulation) -> CurveClass:
        m = len(self.entries)
        rev = [T.partner(*self.entries[(j + 1) % m]) for j in range(m)]
        return CurveClass(tuple(reversed(rev)), self.name)

    def rotated(self, shift: int) -> CurveClass:
        m = len(self.entries)
        return CurveClass(tuple(self.entries[(j + shift) % m] for j in range(m)), self.name)

    def visits(self, T: Triangulation) -> list[tuple[int, int, int]]:
        """``(face, entry side, exit side)`` for each step."""
        m = len(self.entries)
        out = []
        for j, (f, k) in enumerate(self.entries):
            f2, k_exit = T.partner(*self.entries[(j + 1) % m])
            assert f2 == f
            out.append((f, k, k_exit))
        return out


def validate_curve(T: Triangulation, c: CurveClass) -> CurveClass:
    """Check adjacency, strip backtracks, and rotate to the minimal cyclic form."""
    entries = list(c.entries)
    if not entries:
        raise EmptyCurveError("curve has no steps")
    m = len(entries)
    for j, (f, k) in enumerate(entries):
        if not (0 <= f < T.num_faces and 0 <= k < 3):
            raise IndexError(f"entry {(f, k)} out of range")
        prev_face = entries[j - 1][0]
        if T.partner(f, k)[0] != prev_face:
            e = T.edge_index[f, k]
            raise AdjacencyError(
                f"step {j + 1}: edge {e + 1} into face {f + 1} does not leave face {prev_face + 1}"
            )

    stack: list[Side] = []
    for x in entries:
        if stack and T.partner(*x) == stack[-1]:
            stack.pop()
        else:
            stack.append(x)
    lo, hi = 0, len(stack)
    while hi - lo >= 2 and T.partner(*stack[lo]) == stack[hi - 1]:
        lo += 1
        hi -= 1
    reduced = stack[lo:hi]
    if not reduced:
        raise EmptyCurveError(f"curve {c.name!r} reduces to nothing after removing backtracks")
    m = len(reduced)
    best = min(tuple(reduced[(j + s) % m] for j in range(m)) for s in range(m))
    return CurveClass(best, c.name)


def vertex_link(T: Triangulation, v: int, name: str = "") -> CurveClass:
    """Counterclockwise loop around vertex ``v`` crossing each star half-edge once."""
    if not 0 <= v < T.num_vertices:
        raise IndexError(f"vertex {v} out of range")
    entries = tuple((f, out_side(c)) for f, c in T.star_corners[v])
    return validate_curve(T, CurveClass(entries, name or f"link{v + 1}"))


def transport_curve(T: Triangulation, e: int, c: CurveClass) -> CurveClass:
    """Rewrite a normalized curve on ``T`` as a crossing sequence on ``flip(T, e)``."""
    T2, _ = flip(T, e)
    (f1, k1), (f2, k2) = T.plus_side[e], T.minus_side[e]
    quad = {f1, f2}
    e_sides = {(f1, k1), (f2, k2)}
    side_map = _flip_side_map(T, e)
    visits = c.visits(T)
    m = len(visits)
    start = next(
        (j for j in range(m) if not (visits[j][0] in quad and (visits[j][0], visits[j][1]) in e_sides)),
        None,
    )
    if start is None:
        raise AdjacencyError("curve only crosses the flipped edge")
    visits = visits[start:] + visits[:start]

    new_visits = []
    j = 0
    while j < m:
        f, k_in, k_out = visits[j]
        if f not in quad:
            new_visits.append((f, k_in, k_out))
            j += 1
            continue
        # follow the passage through the quadrilateral
        first_in = (f, k_in)
        last = visits[j]
        j += 1
        while (last[0], last[2]) in e_sides:
            last = visits[j]
            j += 1
        gA, sA = side_map[first_in]
        gB, sB = side_map[(last[0], last[2])]
        if gA == gB:
            new_visits.append((gA, sA, sB))
        else:
            new_visits.append((gA, sA, 2))
            new_visits.append((gB, 2, sB))
    entries = tuple((f, k_in) for f, k_in, _ in new_visits)
    return validate_curve(T2, CurveClass(entries, c.name))
