"""Named meshes and fields used throughout the tests, demos and CLI.

Meshes: ``icosphere``, ``torus_grid``, ``klein_grid``, ``rp2_minimal``,
``disk_fan``, ``annulus_grid``.  Fields: ``baseball``, ``two_pole``,
``constant``, ``radial_disk``, ``defect_patch``, ``rp2_radial``,
``random_line_field``, ``random_vector_field``.
"""

from collections import deque
from dataclasses import dataclass, field

import numpy as np
from scipy.sparse.csgraph import shortest_path

from . import shapes
from .connection import build_connection, corner_angles, principal
from .cover import LiftObstructedError, _frame_image, antipodal_map, lift_line_field, quotient_by_involution
from .errors import BadParamsError, BadTopologyError, HolonomyObstructionError, NoPositionsError
from .fields import LineField, VectorField, _laplacian, prescribe_defects
from .mesh import build_mesh, euler_characteristic, orientability

__all__ = [
    "CatalogKey",
    "MESHES",
    "FIELDS",
    "generate_mesh",
    "generate_field",
    "default_connection",
    "spread_vertices",
    "constant_field",
    "is_planar",
    "corpus",
]

_MESH_PARAMS = {
    "icosphere": {"level": 0},
    "torus_grid": {"a": 4, "b": 4},
    "klein_grid": {"a": 4, "b": 4},
    "rp2_minimal": {},
    "disk_fan": {"rings": 6, "sectors": 12},
    "annulus_grid": {"a": 12, "b": 3},
}

_FIELD_PARAMS = {
    "baseball": {},
    "two_pole": {},
    "constant": {},
    "radial_disk": {"kind": "line"},
    "defect_patch": {"k": 0.5, "variant": "ray"},
    "rp2_radial": {"level": 0},
    "random_line_field": {"seed": 0},
    "random_vector_field": {"seed": 0},
}

MESHES = tuple(_MESH_PARAMS)
FIELDS = tuple(_FIELD_PARAMS)


@dataclass(frozen=True)
class CatalogKey:
    name: str
    params: dict = field(default_factory=dict)

    def resolved(self, table):
        if self.name not in table:
            raise BadParamsError(f"unknown catalog entry {self.name!r}; choose from {sorted(table)}")
        defaults = table[self.name]
        unknown = set(self.params) - set(defaults)
        if unknown:
            raise BadParamsError(f"{self.name} takes no parameters {sorted(unknown)}")
        return {**defaults, **self.params}


def _int_param(p, key, lo, hi=None):
    try:
        val = int(p[key])
    except (TypeError, ValueError):
        raise BadParamsError(f"{key} must be an integer, got {p[key]!r}") from None
    if val != float(p[key]) or val < lo or (hi is not None and val > hi):
        raise BadParamsError(f"{key}={p[key]!r} outside [{lo}, {hi if hi is not None else 'inf'}]")
    return val


def generate_mesh(key, **params):
    """Build a catalog mesh from a :class:`CatalogKey` or a name plus parameters."""
    if isinstance(key, str):
        key = CatalogKey(key, params)
    p = key.resolved(_MESH_PARAMS)
    name = key.name
    if name == "icosphere":
        level = _int_param(p, "level", 0, 5)
        pos, faces = shapes.icosphere(level)
        return build_mesh(len(pos), faces, positions=pos)
    if name == "torus_grid":
        a, b = _int_param(p, "a", 3), _int_param(p, "b", 3)
        return build_mesh(*shapes.torus_grid(a, b))
    if name == "klein_grid":
        a, b = _int_param(p, "a", 3), _int_param(p, "b", 4)
        if b % 2:
            raise BadParamsError("klein_grid needs an even number of rows b")
        return build_mesh(*shapes.klein_grid(a, b))
    if name == "rp2_minimal":
        return _rp2(0)[0]
    if name == "disk_fan":
        rings, sectors = _int_param(p, "rings", 1), _int_param(p, "sectors", 4)
        pos, faces = shapes.disk_fan(rings, sectors)
        return build_mesh(len(pos), faces, positions=pos)
    if name == "annulus_grid":
        a, b = _int_param(p, "a", 4), _int_param(p, "b", 2)
        pos, faces = shapes.annulus_grid(a, b)
        return build_mesh(len(pos), faces, positions=pos)
    raise AssertionError(name)


def default_connection(mesh, metric=None):
    """Planar metric when the mesh lies in the plane, equilateral otherwise."""
    if metric is None:
        metric = "planar" if is_planar(mesh) else "equilateral"
    return build_connection(mesh, corner_angles(mesh, metric))


def is_planar(mesh):
    pos = mesh.positions
    return pos is not None and (pos.shape[1] == 2 or np.abs(pos[:, 2:]).max() < 1e-12) and np.ptp(pos[:, :2]) > 0


def generate_field(key, mesh, conn=None, **params):
    """Build a catalog field on ``mesh`` (a :class:`LineField` or :class:`VectorField`)."""
    if isinstance(key, str):
        key = CatalogKey(key, params)
    p = key.resolved(_FIELD_PARAMS)
    if conn is None:
        conn = default_connection(mesh)
    name = key.name
    if name == "baseball":
        _need_sphere(mesh, name)
        return prescribe_defects(mesh, conn, {v: 1 for v in spread_vertices(mesh, 4)})
    if name == "two_pole":
        _need_sphere(mesh, name)
        n, s = _poles(mesh)
        return prescribe_defects(mesh, conn, {n: 2, s: 2})
    if name == "constant":
        return constant_field(mesh, conn)
    if name == "radial_disk":
        if p["kind"] not in ("line", "vector"):
            raise BadParamsError("radial_disk kind must be 'line' or 'vector'")
        theta = _planar_to_frames(mesh, _barycenter_angles(mesh))
        vf = VectorField(theta)
        return vf if p["kind"] == "vector" else LineField(2.0 * theta)
    if name == "defect_patch":
        k = float(p["k"])
        if 2 * k != int(2 * k) or k == 0 or abs(k) > 4:
            raise BadParamsError("defect_patch charge k must be a non-zero half-integer with |k| <= 4")
        if p["variant"] not in ("ray", "circular"):
            raise BadParamsError("defect_patch variant must be 'ray' or 'circular'")
        shift = np.pi if p["variant"] == "circular" else 0.0
        phi_global = 2.0 * k * _barycenter_angles(mesh) + shift
        return LineField(_planar_to_frames(mesh, phi_global, factor=2))
    if name == "rp2_radial":
        qmesh, xi = _rp2(_int_param(p, "level", 0, 3))
        if qmesh.V != mesh.V or not np.array_equal(qmesh.faces, mesh.faces):
            raise BadTopologyError("rp2_radial is defined on the antipodal quotient of an icosphere")
        return xi
    if name == "random_line_field":
        rng = np.random.default_rng(_int_param(p, "seed", 0))
        return LineField(rng.uniform(0.0, 2.0 * np.pi, mesh.F))
    if name == "random_vector_field":
        rng = np.random.default_rng(_int_param(p, "seed", 0))
        return VectorField(rng.uniform(0.0, 2.0 * np.pi, mesh.F))
    raise AssertionError(name)


def _need_sphere(mesh, name):
    if not mesh.is_closed or euler_characteristic(mesh) != 2:
        raise BadTopologyError(f"{name} needs a closed mesh with chi = 2")


def _graph_distances(mesh):
    lap = _laplacian(mesh)
    adj = (lap < 0).astype(float)
    return shortest_path(adj, unweighted=True, directed=False)


def spread_vertices(mesh, count):
    """Greedy farthest-point choice of ``count`` vertices by graph distance.

    Starts from vertex 0; each further vertex maximises its distance to the
    chosen set, ties going to the lowest id.
    """
    dist = _graph_distances(mesh)
    chosen = [0]
    while len(chosen) < count:
        gap = dist[chosen].min(axis=0)
        chosen.append(int(np.flatnonzero(gap == gap.max())[0]))
    return chosen


def _poles(mesh):
    if mesh.positions is not None and mesh.positions.shape[1] == 3:
        d = np.linalg.norm(mesh.positions + mesh.positions[0], axis=1)
        if d.min() < 1e-9:
            return 0, int(d.argmin())
    return tuple(spread_vertices(mesh, 2))


def constant_field(mesh, conn, tol=1e-6):
    """Parallel line field, when the holonomy of every dual cycle allows one.

    Faces are reached by breadth-first search with ``phi = a * c + b`` for a
    free root angle ``c``; orientation-reversing cycles pin ``c`` modulo pi.
    Of the two admissible lines the one that lifts to a vector field wins.
    """
    a = np.zeros(mesh.F)
    b = np.zeros(mesh.F)
    a[0] = 1.0
    seen = np.zeros(mesh.F, dtype=bool)
    seen[0] = True
    tree = set()
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for i in range(3):
            h = 3 * f + i
            t = int(mesh.twin[h])
            if t < 0:
                continue
            g = t // 3
            if not seen[g]:
                seen[g] = True
                a[g] = conn.orient[h] * a[f]
                b[g] = conn.orient[h] * b[f] + 2.0 * conn.rho[h]
                tree.add(h)
                tree.add(t)
                queue.append(g)
    pinned = []
    for h in range(3 * mesh.F):
        t = int(mesh.twin[h])
        if t < 0 or h in tree:
            continue
        f, g = h // 3, t // 3
        coef = a[g] - conn.orient[h] * a[f]
        rest = principal(b[g] - conn.orient[h] * b[f] - 2.0 * conn.rho[h])
        if coef == 0:
            if abs(rest) > tol:
                raise HolonomyObstructionError(
                    f"transport around a dual cycle through faces {f}, {g} turns lines by {rest:.3g}"
                )
        else:
            pinned.append((coef, rest))
    candidates = [0.0]
    if pinned:
        coef, rest = pinned[0]
        c0 = -rest / coef
        candidates = [c0, c0 + np.pi]
        for coef, rest in pinned:
            if abs(principal(coef * c0 + rest)) > tol:
                raise HolonomyObstructionError("orientation-reversing cycles disagree on the invariant line")
    fields = [LineField(a * c + b) for c in candidates]
    for xi in fields:
        try:
            lift_line_field(mesh, conn, xi)
            return xi
        except LiftObstructedError:
            continue
    return fields[0]


def _barycenter_angles(mesh):
    if not is_planar(mesh):
        raise NoPositionsError("field needs planar vertex positions")
    bc = mesh.positions[mesh.faces][:, :, :2].mean(axis=1)
    return np.arctan2(bc[:, 1], bc[:, 0])


def _planar_to_frames(mesh, angles, factor=1):
    """Convert planar angles (doubled when ``factor == 2``) to face-frame angles."""
    p = mesh.positions[mesh.faces][:, :, :2]
    ref = p[:, 1] - p[:, 0]
    beta = np.arctan2(ref[:, 1], ref[:, 0])
    e2 = p[:, 2] - p[:, 0]
    hand = np.sign(ref[:, 0] * e2[:, 1] - ref[:, 1] * e2[:, 0])
    return hand * (angles - factor * beta)


def _rp2(level):
    """Antipodal quotient of ``icosphere(level)`` with the pushed two-pole field."""
    pos, faces = shapes.icosphere(level)
    sphere = build_mesh(len(pos), faces, positions=pos)
    conn = build_connection(sphere)
    vmap, fmap = antipodal_map(sphere)
    poles = {0: 2, int(vmap[0]): 2}
    xi = prescribe_defects(sphere, conn, poles)
    # the pulled-back field is a rotated copy; rotating by half the gap makes it invariant
    o, off = _frame_image(conn, 0, int(fmap[0]), vmap)
    gap = principal(xi.angles[fmap[0]] - (o * xi.angles[0] + 2.0 * off))
    image_sign = 1 - 2 * int(orientability(sphere).face_flips[fmap[0]])
    xi = prescribe_defects(sphere, conn, poles, offset=-gap / (2.0 * image_sign))
    return quotient_by_involution(sphere, vmap, fmap, xi, conn)


def corpus():
    """The fixed list of (mesh key, field key) pairs verified as a whole."""
    out = []
    for level in range(4):
        sphere = CatalogKey("icosphere", {"level": level})
        for name in ("baseball", "two_pole"):
            out.append((sphere, CatalogKey(name)))
    for name in ("torus_grid", "klein_grid"):
        out.append((CatalogKey(name), CatalogKey("constant")))
    out.append((CatalogKey("rp2_minimal"), CatalogKey("rp2_radial")))
    for mesh in ("icosphere", "torus_grid", "klein_grid", "rp2_minimal"):
        key = CatalogKey(mesh, {"level": 2} if mesh == "icosphere" else {})
        out.append((key, CatalogKey("random_line_field", {"seed": 0})))
        out.append((key, CatalogKey("random_vector_field", {"seed": 0})))
    for kind in ("line", "vector"):
        out.append((CatalogKey("disk_fan"), CatalogKey("radial_disk", {"kind": kind})))
        out.append((CatalogKey("annulus_grid"), CatalogKey("radial_disk", {"kind": kind})))
    for k in (1, 0.5, -0.5, -1):
        for variant in ("ray", "circular"):
            out.append((CatalogKey("disk_fan"), CatalogKey("defect_patch", {"k": k, "variant": variant})))
    return out
