"""Per-face vector and line fields and their vertex indices.

A vector field stores one angle per face, a line field one *doubled* angle
per face (the line through ``a`` and ``a + pi`` both become ``2a``).  Angles
live in the face frames of :mod:`linefields.connection`.

Indices are read off the star of each interior vertex.  Faces of the star are
expressed in walk coordinates (angles of frame-reversed faces negated) and
consecutive faces are compared through the transport, each jump taken as its
principal value in (-pi, pi].  For a line field the projective index is

    p(v) = (2 * defect(v) + sum of principal jumps) / (2 pi),

an integer up to rounding; the vector index uses the angle defect once.  The
normal indices measure the same turning against the corner bisectors, which
point from the vertex into each face.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.linalg import spsolve

from .connection import TWO_PI, build_connection, principal
from .errors import (
    BadSumError,
    BadTopologyError,
    BranchCutError,
    NotNormalError,
    PrescriptionOverflowError,
    RoundingError,
)
from .mesh import double_along_boundary, orientability

__all__ = [
    "VectorField",
    "LineField",
    "VertexIndex",
    "DefectReport",
    "vector_field_indices",
    "line_field_indices",
    "line_field_of_vector_field",
    "prescribe_defects",
    "mirror_field",
    "double_with_field",
    "normality_defects",
    "field_indices",
    "BRANCH_TOL",
    "ROUND_TOL",
]

BRANCH_TOL = 1e-9
ROUND_TOL = 1e-6


def _angles(values):
    a = np.mod(np.asarray(values, dtype=float).reshape(-1), TWO_PI)
    a[a >= TWO_PI] = 0.0
    if not np.isfinite(a).all():
        raise ValueError("field angles must be finite")
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class VectorField:
    angles: np.ndarray
    kind = "vector"

    def __post_init__(self):
        object.__setattr__(self, "angles", _angles(self.angles))

    def __len__(self):
        return len(self.angles)


@dataclass(frozen=True, eq=False)
class LineField:
    """Doubled angle per face; the line itself points along ``angles / 2``."""

    angles: np.ndarray
    kind = "line"

    def __post_init__(self):
        object.__setattr__(self, "angles", _angles(self.angles))

    def __len__(self):
        return len(self.angles)

    @property
    def representative(self):
        return self.angles / 2.0


def line_field_of_vector_field(v):
    return LineField(2.0 * np.asarray(v.angles))


@dataclass
class VertexIndex:
    p: int
    p_perp: int
    orientable: bool
    ind: int = None
    ind_perp: int = None

    @property
    def hopf_numerator(self):
        return self.p

    @property
    def hopf(self):
        return self.p / 2


@dataclass
class DefectReport:
    kind: str
    vertices: dict
    sum_p: int
    two_chi: int
    rounding_residual: float
    sum_ind: int = None
    chi: int = None
    extra: dict = field(default_factory=dict)

    @property
    def match(self):
        return self.sum_p == self.two_chi

    def defects(self):
        """Vertices with a non-zero index, in id order."""
        return {v: r for v, r in self.vertices.items() if r.p != 0 or r.ind}

    def odd_count(self):
        return sum(1 for r in self.vertices.values() if r.p % 2)

    def to_dict(self):
        table = []
        for v, r in sorted(self.defects().items()):
            row = {
                "vertex": int(v),
                "p": r.p,
                "p_perp": r.p_perp,
                "hopf": _hopf_str(r.p),
                "orientable": r.orientable,
            }
            if r.ind is not None:
                row["ind"] = r.ind
                row["ind_perp"] = r.ind_perp
            table.append(row)
        out = {
            "kind": self.kind,
            "defects": table,
            "sum_p": self.sum_p,
            "two_chi": self.two_chi,
            "match": self.match,
            "rounding_residual": float(f"{self.rounding_residual:.17g}"),
            "vertex_count": len(self.vertices),
        }
        if self.sum_ind is not None:
            out["sum_ind"] = self.sum_ind
            out["chi"] = self.chi
        return out


def _hopf_str(p):
    if p % 2 == 0:
        return f"{p // 2:+d}" if p else "0"
    return f"{p:+d}/2"


class StarTable:
    """Flattened star walks of all interior vertices of a mesh.

    Slot ``j`` of vertex ``v`` compares face ``face[j]`` with the next face
    ``nface[j]`` across halfedge ``cross[j]``.
    """

    def __init__(self, conn, reverse=False):
        mesh = conn.mesh
        verts, face, nface, corner, ncorner, sign, nsign, cross = ([] for _ in range(8))
        interior = mesh.interior_vertices()
        for v in interior:
            st = mesh.star(v)
            fs, ks, fl = list(st.faces), list(st.corners), list(st.flips)
            hs = list(st.crossings)
            n = len(fs)
            if reverse:
                order = [0] + list(range(n - 1, 0, -1))
                fs = [fs[i] for i in order]
                ks = [ks[i] for i in order]
                fl = [1 - fl[i] for i in order]
                # crossing from old face i back to old face i-1 is the twin of hs[i-1]
                hs = [int(mesh.twin[st.crossings[(i - 1) % n]]) for i in order]
            for j in range(n):
                nj = (j + 1) % n
                verts.append(v)
                face.append(fs[j])
                nface.append(fs[nj])
                corner.append(ks[j])
                ncorner.append(ks[nj])
                sign.append(1 - 2 * fl[j])
                nsign.append(1 - 2 * fl[nj])
                cross.append(hs[j])
        self.interior = np.array(interior, dtype=np.int64)
        self.vertex = np.array(verts, dtype=np.int64)
        self.face = np.array(face, dtype=np.int64)
        self.nface = np.array(nface, dtype=np.int64)
        self.sign = np.array(sign, dtype=float)
        self.nsign = np.array(nsign, dtype=float)
        self.cross = np.array(cross, dtype=np.int64)
        self.rho = self.nsign * conn.rho[self.cross] if len(self.cross) else np.zeros(0)
        if len(self.cross):
            o = conn.orient[self.cross]
            if not np.all(self.sign * self.nsign * o == 1):
                raise AssertionError("walk coordinates disagree with the transport")
            eta = conn.bisectors[self.face, corner]
            neta = conn.bisectors[self.nface, ncorner]
            self.eta_step = principal(self.nsign * neta - self.sign * eta - self.rho)
        else:
            self.eta_step = np.zeros(0)
        self.defect = conn.defect[self.interior]
        self.slot_of = {int(v): i for i, v in enumerate(self.interior)}
        self._pos = np.searchsorted(self.interior, self.vertex)

    def jumps(self, values, factor):
        raw = self.nsign * values[self.nface] - self.sign * values[self.face] - factor * self.rho
        jump = principal(raw)
        near = np.abs(np.abs(jump) - np.pi) < BRANCH_TOL
        if near.any():
            k = int(np.flatnonzero(near)[0])
            raise BranchCutError(
                f"jump between faces {self.face[k]} and {self.nface[k]} around vertex "
                f"{self.vertex[k]} is within {BRANCH_TOL} of the branch cut"
            )
        return jump

    def per_vertex(self, x):
        out = np.zeros(len(self.interior))
        np.add.at(out, self._pos, x)
        return out


def star_table(conn, reverse=False):
    key = "_star_table_rev" if reverse else "_star_table"
    cached = conn.__dict__.get(key)
    if cached is None:
        cached = StarTable(conn, reverse)
        object.__setattr__(conn, key, cached)
    return cached


def _round(x, what):
    r = np.rint(x)
    res = np.abs(x - r)
    if res.size and res.max() >= ROUND_TOL:
        k = int(np.argmax(res))
        raise RoundingError(f"{what} at slot {k} is {x[k]!r}, not an integer")
    return r.astype(np.int64), float(res.max()) if res.size else 0.0


def index_arrays(conn, values, factor, reverse=False):
    """Index and normal index at every interior vertex.

    ``factor`` is 1 for vector fields and 2 for doubled line angles.
    Returns ``(interior vertices, index, normal index, residual)``.
    """
    tab = star_table(conn, reverse)
    values = np.asarray(values, dtype=float)
    jump = tab.jumps(values, factor)
    turning = tab.per_vertex(jump)
    idx = (factor * tab.defect + turning) / TWO_PI
    perp = tab.per_vertex(jump - factor * tab.eta_step) / TWO_PI
    i, r1 = _round(idx, "index")
    q, r2 = _round(perp, "normal index")
    return tab.interior, i, q, max(r1, r2)


def line_field_indices(mesh, conn, xi, reverse=False):
    """Projective and normal projective index at every interior vertex."""
    if conn.mesh is not mesh:
        raise ValueError("connection was built for a different mesh")
    verts, p, pp, res = index_arrays(conn, xi.angles, 2, reverse)
    records = {
        int(v): VertexIndex(int(a), int(b), bool(a % 2 == 0)) for v, a, b in zip(verts, p, pp)
    }
    chi = mesh.V - mesh.E + mesh.F
    return DefectReport("line", records, int(p.sum()), 2 * chi, res)


def vector_field_indices(mesh, conn, v, reverse=False):
    """Vertex and normal index of a vector field, plus the indices of its line field."""
    if conn.mesh is not mesh:
        raise ValueError("connection was built for a different mesh")
    verts, ind, ind_perp, r1 = index_arrays(conn, v.angles, 1, reverse)
    _, p, pp, r2 = index_arrays(conn, 2.0 * v.angles, 2, reverse)
    records = {
        int(x): VertexIndex(int(a), int(b), bool(a % 2 == 0), int(c), int(d))
        for x, a, b, c, d in zip(verts, p, pp, ind, ind_perp)
    }
    chi = mesh.V - mesh.E + mesh.F
    return DefectReport(
        "vector", records, int(p.sum()), 2 * chi, max(r1, r2), sum_ind=int(ind.sum()), chi=chi
    )


def field_indices(mesh, conn, fld, reverse=False):
    if fld.kind == "vector":
        return vector_field_indices(mesh, conn, fld, reverse)
    return line_field_indices(mesh, conn, fld, reverse)


def _laplacian(mesh):
    a, b = mesh.edges[:, 0], mesh.edges[:, 1]
    n = mesh.V
    rows = np.concatenate([a, b, a, b])
    cols = np.concatenate([b, a, a, b])
    vals = np.concatenate([-np.ones(len(a)), -np.ones(len(a)), np.ones(len(a)), np.ones(len(a))])
    return coo_matrix((vals, (rows, cols)), shape=(n, n)).tocsr()


def prescribe_defects(mesh, conn, targets, offset=0.0):
    """Build a line field on a sphere whose projective indices equal ``targets``.

    ``targets`` maps vertex ids to integer projective indices (unlisted
    vertices get 0).  The jump across each edge is the difference of a
    potential solving a graph Laplacian system, so every star collects
    exactly ``2 pi * target - 2 * defect``.  ``offset`` rotates the whole
    field (in the orientation of face 0).
    """
    chi = mesh.V - mesh.E + mesh.F
    if chi != 2 or not mesh.is_closed:
        raise BadTopologyError(f"prescription needs a closed sphere, got chi = {chi}")
    t = np.zeros(mesh.V)
    for v, k in targets.items():
        if int(k) != k:
            raise ValueError(f"target at vertex {v} is not an integer")
        t[int(v)] = int(k)
    if int(t.sum()) != 2 * chi:
        raise BadSumError(f"targets sum to {int(t.sum())}, need 2 chi = {2 * chi}")

    orient = orientability(mesh)
    sigma = 1 - 2 * np.asarray(orient.face_flips)
    b = TWO_PI * t - 2.0 * conn.defect
    lap = _laplacian(mesh)
    y = np.zeros(mesh.V)
    y[1:] = spsolve(lap[1:, 1:].tocsc(), b[1:])

    nh = 3 * mesh.F
    hs = np.arange(nh)
    tails = mesh.faces.reshape(-1)
    heads = mesh.faces[:, [1, 2, 0]].reshape(-1)
    jump = sigma[hs // 3] * (y[heads] - y[tails])
    worst = float(np.abs(jump).max())
    if worst >= np.pi - 1e-6:
        raise PrescriptionOverflowError(
            f"edge jump {worst:.6f} reaches the branch cut; refine the mesh"
        )

    phi = np.full(mesh.F, np.nan)
    phi[0] = offset
    stack = [0]
    while stack:
        f = stack.pop()
        for i in range(3):
            h = 3 * f + i
            g = int(mesh.twin[h]) // 3
            if np.isnan(phi[g]):
                phi[g] = phi[f] + 2.0 * sigma[g] * conn.rho[h] + jump[h]
                stack.append(g)
    xi = LineField(sigma * phi)
    report = line_field_indices(mesh, conn, xi)
    got = {v: r.p for v, r in report.vertices.items() if r.p}
    want = {int(v): int(k) for v, k in targets.items() if int(k)}
    if got != want:
        raise PrescriptionOverflowError(f"prescribed {want} but realised {got}; refine the mesh")
    return xi


def normality_defects(conn, xi, tol=1e-6):
    """Boundary faces whose line is not perpendicular to their boundary edge."""
    mesh = conn.mesh
    bad = []
    for e, hs in enumerate(mesh.edge_halfedges):
        if len(hs) != 1:
            continue
        h = hs[0]
        f = h // 3
        off = principal(xi.angles[f] - 2.0 * conn.directions[h])
        if abs(abs(off) - np.pi) > tol:
            bad.append(f)
    return sorted(set(bad))


def mirror_field(conn, xi, double=None):
    """Reflect a boundary-normal line field onto the double of its mesh.

    ``double`` is the ``(mesh, seam_map)`` pair from
    :func:`double_along_boundary`, computed when omitted.
    """
    bad = normality_defects(conn, xi)
    if bad:
        raise NotNormalError(f"line field is not normal to the boundary in faces {bad}", bad)
    if double is None:
        double = double_along_boundary(conn.mesh)
    doubled, seam = double
    phi = np.empty(doubled.F)
    for f, (a, b) in seam.items():
        phi[a] = xi.angles[f]
        phi[b] = xi.angles[f]
    out = LineField(phi)

    # the mirrored field must be continuous across every seam edge
    angles = np.empty((doubled.F, 3))
    for f, (a, b) in seam.items():
        angles[a] = angles[b] = conn.angles[f]
    dconn = build_connection(doubled, angles)
    for e, hs in enumerate(conn.mesh.edge_halfedges):
        if len(hs) != 1:
            continue
        h = hs[0]
        f, i = divmod(h, 3)
        hd = 3 * seam[f][0] + i
        g = int(dconn.mesh.twin[hd]) // 3
        diff = principal(out.angles[g] - (dconn.orient[hd] * out.angles[f] + 2 * dconn.rho[hd]))
        if abs(diff) > 1e-6:
            raise NotNormalError(f"mirrored field jumps by {diff} across seam face {f}", [f])
    return out


def double_with_field(conn, xi):
    """Double the mesh along its boundary together with a normal line field.

    Returns ``(doubled mesh, seam map, doubled corner angles, mirrored field)``.
    """
    doubled, seam = double_along_boundary(conn.mesh)
    out = mirror_field(conn, xi, (doubled, seam))
    angles = np.empty((doubled.F, 3))
    for f, (a, b) in seam.items():
        angles[a] = angles[b] = conn.angles[f]
    return doubled, seam, angles, out
