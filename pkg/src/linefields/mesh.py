"""Combinatorial triangulated surfaces.

A :class:`Mesh` is stored as a face table plus an explicit halfedge gluing.
Halfedge ``3*f + i`` runs from ``faces[f, i]`` to ``faces[f, (i + 1) % 3]``;
``twin[h]`` is the halfedge glued to ``h`` (``-1`` on the boundary).  Meshes
built from a vertex list glue halfedges along equal vertex pairs, but the
gluing may also be given directly (branched covers can carry two distinct
edges over the same vertex pair).

The stored vertex order of a face fixes its frame handedness; two glued faces
whose halfedges run in opposite directions agree in orientation.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    ClosedInputError,
    DegenerateFaceError,
    DisconnectedError,
    NonManifoldError,
)

__all__ = [
    "Mesh",
    "Star",
    "OrientationResult",
    "build_mesh",
    "mesh_from_gluing",
    "euler_characteristic",
    "orientability",
    "vertex_star",
    "double_along_boundary",
]


def _frozen(a, dtype):
    a = np.array(a, dtype=dtype)
    a.setflags(write=False)
    return a


def tail(mesh, h):
    return int(mesh.faces[h // 3, h % 3])


def head(mesh, h):
    return int(mesh.faces[h // 3, (h % 3 + 1) % 3])


@dataclass(frozen=True)
class Star:
    """Faces around a vertex in walk order.

    ``flips[j]`` is 1 when face ``faces[j]`` has its stored frame reversed with
    respect to the walk orientation.  ``crossings[j]`` is the halfedge of
    ``faces[j]`` crossed to reach ``faces[j + 1]`` (wrapping for cyclic stars;
    ``-1`` after the last face of a boundary path).
    """

    vertex: int
    faces: tuple
    corners: tuple
    flips: tuple
    crossings: tuple
    cyclic: bool

    def __len__(self):
        return len(self.faces)

    def pairs(self):
        return list(zip(self.faces, self.flips))


@dataclass(frozen=True)
class OrientationResult:
    orientable: bool
    face_flips: np.ndarray = None
    witness: tuple = None
    witness_halfedges: tuple = None

    def __bool__(self):
        return self.orientable


class Mesh:
    """Immutable triangulated surface with eagerly computed incidence tables."""

    def __init__(self, vertex_count, faces, twin, positions=None):
        self.vertex_count = int(vertex_count)
        self.faces = _frozen(faces, np.int64).reshape(-1, 3)
        self.twin = _frozen(twin, np.int64)
        self.positions = None if positions is None else _frozen(positions, float)

        nh = 3 * len(self.faces)
        edge_of = np.full(nh, -1, dtype=np.int64)
        edges = []
        edge_halfedges = []
        for h in range(nh):
            if edge_of[h] >= 0:
                continue
            t = int(self.twin[h])
            edge_of[h] = len(edges)
            pair = (tail(self, h), head(self, h))
            edges.append((min(pair), max(pair)))
            if t >= 0:
                edge_of[t] = len(edges) - 1
                edge_halfedges.append((h, t))
            else:
                edge_halfedges.append((h,))
        self.edge_of = _frozen(edge_of, np.int64)
        self.edges = _frozen(np.array(edges, dtype=np.int64).reshape(-1, 2), np.int64)
        self.edge_halfedges = tuple(edge_halfedges)
        self.boundary_edge = _frozen([len(e) == 1 for e in edge_halfedges], bool)

        bv = np.zeros(self.vertex_count, dtype=bool)
        for e, hs in enumerate(edge_halfedges):
            if len(hs) == 1:
                bv[self.edges[e]] = True
        self.boundary_vertex = _frozen(bv, bool)

        corner_faces = [[] for _ in range(self.vertex_count)]
        for f, tri in enumerate(self.faces):
            for i, v in enumerate(tri):
                corner_faces[v].append((f, i))
        self._corners = tuple(tuple(c) for c in corner_faces)
        self._stars = {}

    @property
    def V(self):
        return self.vertex_count

    @property
    def E(self):
        return len(self.edges)

    @property
    def F(self):
        return len(self.faces)

    @property
    def is_closed(self):
        return not self.boundary_edge.any()

    def corners_of(self, v):
        return self._corners[v]

    def edge_faces(self, e):
        return tuple(h // 3 for h in self.edge_halfedges[e])

    def edge_table(self):
        """Map each unordered vertex pair to its incident faces.

        Only meaningful for simplicial meshes; on a mesh with repeated vertex
        pairs the faces of all edges over that pair are merged.
        """
        table = {}
        for e, (a, b) in enumerate(self.edges):
            table.setdefault((int(a), int(b)), []).extend(self.edge_faces(e))
        return table

    def is_simplicial(self):
        return len({(int(a), int(b)) for a, b in self.edges}) == self.E

    def interior_vertices(self):
        return [v for v in range(self.vertex_count) if not self.boundary_vertex[v]]

    def star(self, v):
        if v not in self._stars:
            self._stars[v] = _walk_star(self, v)
        return self._stars[v]

    def __repr__(self):
        return f"Mesh(V={self.V}, E={self.E}, F={self.F})"


def _enter_side(mesh, t, v):
    """Side (0 = outgoing, 1 = incoming) through which halfedge ``t`` touches ``v``."""
    return 0 if tail(mesh, t) == v else 1


def _corner_index(mesh, t, v):
    return t % 3 if tail(mesh, t) == v else (t % 3 + 1) % 3


def _side_halfedge(f, k, side):
    return 3 * f + (k if side == 0 else (k + 2) % 3)


def _walk(mesh, v, f, k, exit_side):
    """Walk corners around ``v`` from corner (f, k), leaving through ``exit_side``.

    Returns the visited corners with their exit sides and crossed halfedges,
    and whether the walk closed up.
    """
    faces, corners, sides, crossings = [f], [k], [exit_side], []
    start = (f, k)
    guard = 3 * mesh.F + 1
    while True:
        h = _side_halfedge(f, k, exit_side)
        t = int(mesh.twin[h])
        crossings.append(h if t >= 0 else -1)
        if t < 0:
            return faces, corners, sides, crossings, False
        g = t // 3
        kg = _corner_index(mesh, t, v)
        exit_side = 1 - _enter_side(mesh, t, v)
        if (g, kg) == start:
            return faces, corners, sides, crossings, True
        f, k = g, kg
        faces.append(f)
        corners.append(k)
        sides.append(exit_side)
        guard -= 1
        if guard < 0:
            raise NonManifoldError(f"corner walk around vertex {v} does not terminate")


def _walk_star(mesh, v):
    corners = mesh.corners_of(v)
    if not corners:
        raise NonManifoldError(f"vertex {v} is in no face")
    f0, k0 = corners[0]
    faces, ks, sides, crossings, closed = _walk(mesh, v, f0, k0, 1)
    if not closed:
        # walk back to one end of the boundary path, then restart from there
        back, bks, bsides, _, _ = _walk(mesh, v, f0, k0, 0)
        ends = [(back[-1], bks[-1], 1 - bsides[-1]), (faces[-1], ks[-1], 1 - sides[-1])]
        # prefer an end from which the walk runs along the face's own frame
        ends.sort(key=lambda e: (e[2] != 1, e[0]))
        f0, k0, side = ends[0]
        faces, ks, sides, crossings, closed = _walk(mesh, v, f0, k0, side)
    flips = tuple(0 if s == 1 else 1 for s in sides)
    return Star(v, tuple(faces), tuple(ks), flips, tuple(crossings), closed)


def mesh_from_gluing(faces, twin, vertex_count=None, positions=None, require_connected=True):
    """Build a mesh from an explicit halfedge gluing.

    ``faces`` give vertex labels that must already be consistent with the
    gluing (glued halfedges join the same pair of labels).
    """
    faces = np.asarray(faces, dtype=np.int64).reshape(-1, 3)
    twin = np.asarray(twin, dtype=np.int64)
    nh = 3 * len(faces)
    if twin.shape != (nh,):
        raise ValueError("twin must have one entry per halfedge")
    if vertex_count is None:
        vertex_count = int(faces.max()) + 1 if len(faces) else 0
    for h in range(nh):
        t = twin[h]
        if t < 0:
            continue
        if t >= nh or twin[t] != h or t // 3 == h // 3:
            raise NonManifoldError(f"halfedge {h}: invalid twin {t}")
        a = {faces[h // 3, h % 3], faces[h // 3, (h % 3 + 1) % 3]}
        b = {faces[t // 3, t % 3], faces[t // 3, (t % 3 + 1) % 3]}
        if a != b:
            raise NonManifoldError(f"halfedge {h} glued to {t} across different endpoints")
    mesh = Mesh(vertex_count, faces, twin, positions)
    _validate(mesh, require_connected)
    return mesh


def build_mesh(vertex_count, faces, positions=None, require_connected=True):
    """Validate a face list and build a :class:`Mesh`.

    >>> build_mesh(3, [(0, 1, 2)]).F
    1
    """
    vertex_count = int(vertex_count)
    faces = np.asarray(faces, dtype=np.int64).reshape(-1, 3)
    if faces.size and (faces.min() < 0 or faces.max() >= vertex_count):
        raise ValueError("face references a vertex id out of range")
    seen = {}
    for f, tri in enumerate(faces):
        if len(set(tri.tolist())) < 3:
            raise DegenerateFaceError(f"face {f} repeats a vertex: {tri.tolist()}")
        key = frozenset(tri.tolist())
        if key in seen:
            raise DegenerateFaceError(f"faces {seen[key]} and {f} share all three vertices")
        seen[key] = f

    by_pair = {}
    for f, tri in enumerate(faces):
        for i in range(3):
            a, b = int(tri[i]), int(tri[(i + 1) % 3])
            by_pair.setdefault((min(a, b), max(a, b)), []).append(3 * f + i)
    twin = np.full(3 * len(faces), -1, dtype=np.int64)
    for pair, hs in by_pair.items():
        if len(hs) > 2:
            raise NonManifoldError(f"edge {pair} lies in {len(hs)} faces")
        if len(hs) == 2:
            twin[hs[0]], twin[hs[1]] = hs[1], hs[0]

    if positions is not None:
        positions = np.asarray(positions, dtype=float)
        if positions.shape[0] != vertex_count:
            raise ValueError("positions must have one row per vertex")
    mesh = Mesh(vertex_count, faces, twin, positions)
    _validate(mesh, require_connected)
    return mesh


def _validate(mesh, require_connected):
    for v in range(mesh.vertex_count):
        corners = mesh.corners_of(v)
        if not corners:
            raise NonManifoldError(f"vertex {v} is in no face")
        star = mesh.star(v)
        if len(star) != len(corners):
            raise NonManifoldError(f"link of vertex {v} is not a single cycle or path")
    if require_connected and mesh.F:
        if len(_face_components(mesh)) > 1:
            raise DisconnectedError("mesh has more than one connected component")


def _face_components(mesh):
    comp = np.full(mesh.F, -1, dtype=np.int64)
    out = []
    for root in range(mesh.F):
        if comp[root] >= 0:
            continue
        cid = len(out)
        comp[root] = cid
        members = [root]
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for i in range(3):
                t = mesh.twin[3 * f + i]
                if t >= 0 and comp[t // 3] < 0:
                    comp[t // 3] = cid
                    members.append(int(t // 3))
                    queue.append(int(t // 3))
        out.append(sorted(members))
    return out


def connected_components(mesh):
    """Face sets of the connected components, ordered by lowest face id."""
    return _face_components(mesh)


def euler_characteristic(mesh):
    return mesh.V - mesh.E + mesh.F


def agrees(mesh, h):
    """True when the faces on either side of halfedge ``h`` agree in orientation."""
    t = int(mesh.twin[h])
    return tail(mesh, h) == head(mesh, t)


def orientability(mesh):
    """Try to orient every face consistently by breadth-first search on the dual graph.

    Returns an :class:`OrientationResult` holding per-face flip bits on
    success, otherwise a closed dual cycle (faces and crossed halfedges)
    along which the orientation comes back reversed.
    """
    flips = np.full(mesh.F, -1, dtype=np.int64)
    parent = {}
    for root in range(mesh.F):
        if flips[root] >= 0:
            continue
        flips[root] = 0
        parent[root] = (None, None)
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for i in range(3):
                h = 3 * f + i
                t = int(mesh.twin[h])
                if t < 0:
                    continue
                g = t // 3
                want = flips[f] if agrees(mesh, h) else 1 - flips[f]
                if flips[g] < 0:
                    flips[g] = want
                    parent[g] = (f, h)
                    queue.append(g)
                elif flips[g] != want:
                    faces, halfedges = _witness(mesh, parent, f, g, h)
                    return OrientationResult(False, None, faces, halfedges)
    flips.setflags(write=False)
    return OrientationResult(True, flips)


def _witness(mesh, parent, f, g, h):
    """Dual cycle lca -> ... -> f, across ``h`` to g, then g -> ... back to lca."""

    def path_up(x):
        out = [x]
        while parent[x][0] is not None:
            x = parent[x][0]
            out.append(x)
        return out

    pf, pg = path_up(f), path_up(g)
    in_g = set(pg)
    lca = next(x for x in pf if x in in_g)
    faces = pf[: pf.index(lca) + 1][::-1] + pg[: pg.index(lca)]
    halfedges = []
    for a, b in zip(faces, faces[1:] + faces[:1]):
        if a == f and b == g:
            halfedges.append(h)
        elif parent[b][0] == a:
            halfedges.append(parent[b][1])
        else:
            halfedges.append(int(mesh.twin[parent[a][1]]))
    return tuple(int(x) for x in faces), tuple(int(x) for x in halfedges)


def vertex_star(mesh, v, reverse=False):
    """Faces around ``v`` in walk order as ``(face, flip)`` pairs.

    The forward walk turns counterclockwise in the frame of its first face.
    ``reverse=True`` walks the other way from the same start, which reverses
    the sequence and complements every flip bit.
    """
    star = mesh.star(v)
    pairs = star.pairs()
    if not reverse:
        return pairs
    if star.cyclic:
        rev = [pairs[0]] + pairs[1:][::-1]
    else:
        rev = pairs[::-1]
    return [(f, 1 - b) for f, b in rev]


def double_along_boundary(mesh):
    """Glue two copies of ``mesh`` along their boundary.

    The second copy keeps each face's stored vertex order, so it is the mirror
    image of the first.  Returns the doubled mesh and a map from original face
    id to ``(face in copy 1, face in copy 2)``.
    """
    if mesh.is_closed:
        raise ClosedInputError("mesh has no boundary to double along")
    relabel = np.arange(mesh.V)
    nxt = mesh.V
    for v in range(mesh.V):
        if not mesh.boundary_vertex[v]:
            relabel[v] = nxt
            nxt += 1
    faces2 = relabel[mesh.faces]
    faces = np.vstack([mesh.faces, faces2])
    positions = None
    if mesh.positions is not None:
        extra = mesh.positions[~mesh.boundary_vertex]
        positions = np.vstack([mesh.positions, extra])
    doubled = build_mesh(nxt, faces, positions=positions)
    seam = {f: (f, f + mesh.F) for f in range(mesh.F)}
    return doubled, seam
