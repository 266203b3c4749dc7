"""The double cover of a line field, branched at its non-orientable defects.

Each face contributes two sheets, one for each unit vector along its line.
Across an edge the sheet ``+`` of one face glues to the sheet of its
neighbour whose vector is closer under transport; that choice is the sign
cocycle.  Cover vertices are the orbits of the corner walk, so a vertex whose
star has cocycle product -1 comes back on the other sheet after one turn and
becomes a single branch point.
"""

from collections import deque
from dataclasses import dataclass

import numpy as np

from .connection import build_connection, principal
from .errors import (
    BadTopologyError,
    BranchCutError,
    FixedPointError,
    LineFieldError,
    NotInvariantError,
)
from .fields import (
    BRANCH_TOL,
    LineField,
    VectorField,
    line_field_indices,
    vector_field_indices,
)
from .mesh import Mesh, _walk, _witness, build_mesh, connected_components, mesh_from_gluing, orientability
from .verify import VerificationReport, equal_check

__all__ = [
    "SignCocycle",
    "BranchedCover",
    "LiftObstructedError",
    "sign_cocycle",
    "lift_line_field",
    "branched_double_cover",
    "cover_index_checks",
    "quotient_by_involution",
]


class LiftObstructedError(LineFieldError):
    """The line field has no global vector lift; ``cycle`` closes with sign -1."""

    code = "OBSTRUCTED"

    def __init__(self, message, cycle, halfedges):
        super().__init__(message)
        self.cycle = cycle
        self.halfedges = halfedges


@dataclass(frozen=True, eq=False)
class SignCocycle:
    mesh: Mesh
    halfedge_sign: np.ndarray  # 0 on boundary halfedges

    def sign(self, h):
        return int(self.halfedge_sign[h])

    def edge_signs(self):
        return {e: int(self.halfedge_sign[hs[0]]) for e, hs in enumerate(self.mesh.edge_halfedges) if len(hs) == 2}

    def monodromy(self, v):
        star = self.mesh.star(v)
        if not star.cyclic:
            raise ValueError(f"vertex {v} is on the boundary")
        return int(np.prod([self.halfedge_sign[h] for h in star.crossings]))

    def monodromies(self):
        return {v: self.monodromy(v) for v in self.mesh.interior_vertices()}


def sign_cocycle(mesh, conn, xi):
    """Compare the canonical vectors ``phi / 2`` of neighbouring faces."""
    theta = xi.angles / 2.0
    nh = 3 * mesh.F
    hs = np.arange(nh)
    t = np.asarray(mesh.twin)
    inner = t >= 0
    d = np.zeros(nh)
    d[inner] = principal(theta[t[inner] // 3] - (conn.orient[inner] * theta[hs[inner] // 3] + conn.rho[inner]))
    near = inner & (np.abs(np.abs(d) - np.pi / 2) < BRANCH_TOL)
    if near.any():
        h = int(np.flatnonzero(near)[0])
        raise BranchCutError(f"line difference across halfedge {h} is within {BRANCH_TOL} of pi/2")
    s = np.where(np.abs(d) <= np.pi / 2, 1, -1)
    s[~inner] = 0
    s.setflags(write=False)
    return SignCocycle(mesh, s)


def lift_line_field(mesh, conn, xi):
    """Return a vector field along ``xi`` or raise :class:`LiftObstructedError`."""
    coc = sign_cocycle(mesh, conn, xi)
    eps = np.zeros(mesh.F, dtype=np.int64)
    parent = {}
    for root in range(mesh.F):
        if eps[root]:
            continue
        eps[root] = 1
        parent[root] = (None, None)
        queue = deque([root])
        while queue:
            f = queue.popleft()
            for i in range(3):
                h = 3 * f + i
                tw = int(mesh.twin[h])
                if tw < 0:
                    continue
                g = tw // 3
                want = eps[f] * coc.halfedge_sign[h]
                if eps[g] == 0:
                    eps[g] = want
                    parent[g] = (f, h)
                    queue.append(g)
                elif eps[g] != want:
                    faces, halfedges = _witness(mesh, parent, f, g, h)
                    raise LiftObstructedError(
                        f"sign cocycle is non-trivial along dual cycle {list(faces)}", faces, halfedges
                    )
    return VectorField(xi.angles / 2.0 + np.where(eps > 0, 0.0, np.pi))


@dataclass(frozen=True, eq=False)
class BranchedCover:
    base: Mesh
    base_conn: object
    base_field: LineField
    cocycle: SignCocycle
    mesh: Mesh
    conn: object
    field: VectorField
    sheet_map: tuple  # cover face -> (base face, sheet +1/-1)
    fibers: dict  # base vertex -> tuple of cover vertices
    branch_vertices: tuple
    deck_vertices: np.ndarray
    deck_faces: np.ndarray

    @property
    def chi(self):
        return self.mesh.V - self.mesh.E + self.mesh.F

    def components(self):
        return connected_components(self.mesh)

    def sidecar(self):
        return {
            "sheet_map": [[int(f), int(s)] for f, s in self.sheet_map],
            "branch_vertices": [int(v) for v in self.branch_vertices],
            "deck": [int(v) for v in self.deck_vertices],
            "deck_faces": [int(f) for f in self.deck_faces],
            "fibers": {str(v): [int(y) for y in ys] for v, ys in self.fibers.items()},
            "chi": int(self.chi),
            "simplicial": bool(self.mesh.is_simplicial()),
        }


def branched_double_cover(mesh, conn, xi):
    """Build the two-sheeted cover of ``xi`` and the vector field it carries."""
    if not mesh.is_closed:
        raise BadTopologyError("branched cover needs a closed mesh")
    coc = sign_cocycle(mesh, conn, xi)
    F = mesh.F
    nh = 3 * F
    twin = np.empty(2 * nh, dtype=np.int64)
    for sheet in (0, 1):
        for h in range(nh):
            t = int(mesh.twin[h])
            other = sheet if coc.halfedge_sign[h] > 0 else 1 - sheet
            twin[sheet * nh + h] = other * nh + t
    base_labels = np.vstack([mesh.faces, mesh.faces])
    scratch = Mesh(mesh.V, base_labels, twin)

    label = -np.ones((2 * F, 3), dtype=np.int64)
    fibers = {}
    count = 0
    for cf in range(2 * F):
        for k in range(3):
            if label[cf, k] >= 0:
                continue
            v = int(base_labels[cf, k])
            faces, corners, _, _, closed = _walk(scratch, v, cf, k, 1)
            assert closed
            for g, kg in zip(faces, corners):
                label[g, kg] = count
            fibers.setdefault(v, []).append(count)
            count += 1

    positions = None
    if mesh.positions is not None:
        positions = np.zeros((count, mesh.positions.shape[1]))
        for v, ys in fibers.items():
            positions[ys] = mesh.positions[v]
    cover = mesh_from_gluing(label, twin, count, positions=positions, require_connected=False)

    deck_v = np.empty(count, dtype=np.int64)
    for cf in range(F):
        for k in range(3):
            a, b = label[cf, k], label[cf + F, k]
            deck_v[a], deck_v[b] = b, a
    deck_f = np.concatenate([np.arange(F, 2 * F), np.arange(F)])
    branch = tuple(sorted(v for v, ys in fibers.items() if len(ys) == 1))
    lifted = VectorField(np.concatenate([xi.angles / 2.0, xi.angles / 2.0 + np.pi]))
    cconn = build_connection(cover, np.vstack([conn.angles, conn.angles]))
    sheet_map = tuple((f, 1) for f in range(F)) + tuple((f, -1) for f in range(F))
    for a in (deck_v, deck_f):
        a.setflags(write=False)
    return BranchedCover(
        base=mesh,
        base_conn=conn,
        base_field=xi,
        cocycle=coc,
        mesh=cover,
        conn=cconn,
        field=lifted,
        sheet_map=sheet_map,
        fibers={v: tuple(ys) for v, ys in sorted(fibers.items())},
        branch_vertices=branch,
        deck_vertices=deck_v,
        deck_faces=deck_f,
    )


def lifted_jump_mismatch(cover):
    """Largest gap between a cover jump and half the matching base line jump."""
    mesh, conn, base = cover.mesh, cover.conn, cover.base
    theta = cover.field.angles
    phi = cover.base_field.angles
    F = base.F
    worst = 0.0
    for h in range(3 * mesh.F):
        t = int(mesh.twin[h])
        bh = h % (3 * F)
        bt = int(base.twin[bh])
        up = principal(theta[t // 3] - (conn.orient[h] * theta[h // 3] + conn.rho[h]))
        down = principal(phi[bt // 3] - (cover.base_conn.orient[bh] * phi[bh // 3] + 2 * cover.base_conn.rho[bh]))
        worst = max(worst, abs(up - down / 2.0))
    return worst


def cover_index_checks(cover):
    """Check the cover against the base: Riemann-Hurwitz, fibers, and the index lemmas."""
    rep = VerificationReport()
    base, coc = cover.base, cover.cocycle
    chi_base = base.V - base.E + base.F
    k = len(cover.branch_vertices)
    rep.add(equal_check("riemann_hurwitz", cover.chi, 2 * chi_base - k, "Riemann-Hurwitz for a branched double cover"))

    mono = coc.monodromies()
    bad = [v for v, m in mono.items() if len(cover.fibers[v]) != (2 if m > 0 else 1)]
    rep.add(
        equal_check(
            "fiber_sizes",
            len(mono) - len(bad),
            len(mono),
            "fiber has two points over orientable, one over non-orientable singularities",
            detail={"mismatched": bad},
        )
    )

    base_rep = line_field_indices(base, cover.base_conn, cover.base_field)
    up = vector_field_indices(cover.mesh, cover.conn, cover.field)
    rep.add(equal_check("cover_poincare_hopf", up.sum_ind, cover.chi, "classical Poincare-Hopf on the cover"))

    failures = []
    for x, r in base_rep.vertices.items():
        total = sum(up.vertices[y].ind_perp for y in cover.fibers[x])
        if total != r.p_perp:
            failures.append(x)
    rep.add(
        equal_check(
            "lemma_normal_index_fiber",
            len(base_rep.vertices) - len(failures),
            len(base_rep.vertices),
            "normal projective index equals the summed normal indices over the fiber",
            detail={"failures": failures},
        )
    )

    parity = [v for v, m in mono.items() if (m < 0) != (base_rep.vertices[v].p % 2 == 1)]
    rep.add(
        equal_check(
            "monodromy_parity",
            len(mono) - len(parity),
            len(mono),
            "monodromy -1 exactly at odd projective index",
            detail={"mismatched": parity},
        )
    )

    fixed_v = sorted(int(y) for y in np.flatnonzero(cover.deck_vertices == np.arange(cover.mesh.V)))
    fixed_want = sorted(cover.fibers[v][0] for v in cover.branch_vertices)
    free_faces = bool(np.all(cover.deck_faces != np.arange(cover.mesh.F)))
    rep.add(
        _flag_check(
            "deck_involution",
            fixed_v == fixed_want and free_faces,
            "deck involution is free on faces and fixes exactly the branch points",
        )
    )

    try:
        lift_ok = True
        lift_line_field(base, cover.base_conn, cover.base_field)
    except LiftObstructedError:
        lift_ok = False
    ncomp = len(cover.components())
    rep.add(
        _flag_check(
            "lift_iff_disconnected",
            lift_ok == (ncomp == 2),
            "a line field lifts to a vector field iff its double cover is trivial",
            detail={"liftable": lift_ok, "components": ncomp},
        )
    )
    gap = lifted_jump_mismatch(cover)
    rep.add(equal_check("lifted_field_continuity", gap, 0.0, "lifted vector field is continuous", tol=1e-6))
    rep.meta["cover"] = {"chi": cover.chi, "branch_vertices": list(cover.branch_vertices), "components": ncomp}
    return rep


def _flag_check(name, ok, source, detail=None):
    return equal_check(name, bool(ok), True, source, detail=detail or {})


def _frame_image(conn, f, g, vmap):
    """Orientation sign and offset carrying the frame of face ``f`` onto face ``g``."""
    mesh = conn.mesh
    a, b, c = (int(vmap[x]) for x in mesh.faces[f])
    tri = [int(x) for x in mesh.faces[g]]
    i = tri.index(a)
    if tri[(i + 1) % 3] == b:
        return 1, conn.directions[3 * g + i]
    # stored order runs a -> c -> b, so the halfedge b -> a sits at b's corner
    j = tri.index(b)
    return -1, conn.directions[3 * g + j] + np.pi


def quotient_by_involution(mesh, vertex_map, face_map, xi, conn=None, tol=1e-6):
    """Quotient a mesh by a free simplicial involution, pushing ``xi`` down.

    Quotient vertices and faces are numbered by their lower-id representative.
    Returns the quotient mesh and the pushed-down line field.
    """
    vmap = np.asarray(vertex_map, dtype=np.int64)
    fmap = np.asarray(face_map, dtype=np.int64)
    if np.any(vmap == np.arange(mesh.V)) or np.any(fmap == np.arange(mesh.F)):
        raise FixedPointError("involution fixes a vertex or a face")
    if np.any(vmap[vmap] != np.arange(mesh.V)) or np.any(fmap[fmap] != np.arange(mesh.F)):
        raise ValueError("map is not an involution")
    for f in range(mesh.F):
        if set(vmap[mesh.faces[f]].tolist()) != set(mesh.faces[fmap[f]].tolist()):
            raise ValueError(f"face map disagrees with vertex map on face {f}")
    if conn is None:
        conn = build_connection(mesh)

    bad = []
    for f in range(mesh.F):
        o, off = _frame_image(conn, f, int(fmap[f]), vmap)
        gap = principal(xi.angles[fmap[f]] - (o * xi.angles[f] + 2.0 * off))
        if abs(gap) > tol:
            bad.append(f)
    if bad:
        raise NotInvariantError(f"line field is not invariant on faces {bad[:10]}")

    reps = sorted({min(v, int(vmap[v])) for v in range(mesh.V)})
    new_id = {v: i for i, v in enumerate(reps)}
    vq = np.array([new_id[min(v, int(vmap[v]))] for v in range(mesh.V)])
    keep = [f for f in range(mesh.F) if f < fmap[f]]
    faces = vq[mesh.faces[keep]]
    qmesh = build_mesh(len(reps), faces)
    return qmesh, LineField(xi.angles[keep])


def antipodal_map(mesh):
    """Vertex and face involutions induced by ``x -> -x`` on the vertex positions."""
    pos = mesh.positions
    d = np.linalg.norm(pos[:, None, :] + pos[None, :, :], axis=2)
    vmap = d.argmin(axis=1)
    if not np.allclose(d[np.arange(mesh.V), vmap], 0.0, atol=1e-9):
        raise ValueError("vertex positions are not antipodally symmetric")
    lookup = {frozenset(t.tolist()): f for f, t in enumerate(mesh.faces)}
    fmap = np.array([lookup[frozenset(vmap[t].tolist())] for t in mesh.faces])
    return vmap, fmap


def is_orientable(mesh):
    return orientability(mesh).orientable
