import networkx as nx
import numpy as np
import pytest
from conftest import CLOSED, mesh_and_conn
from oracles import incidence_graph, orientable_double_cover

from linefields import (
    LineField,
    antipodal_map,
    branched_double_cover,
    cover_index_checks,
    generate_field,
    lift_line_field,
    line_field_indices,
    quotient_by_involution,
    sign_cocycle,
)
from linefields.connection import principal
from linefields.cover import LiftObstructedError, lifted_jump_mismatch
from linefields.errors import BadTopologyError, BranchCutError, FixedPointError, NotInvariantError
from linefields.mesh import euler_characteristic, orientability


def test_baseball_cover_is_torus(sphere3):
    m, conn = sphere3
    xi = generate_field("baseball", m, conn)
    cov = branched_double_cover(m, conn, xi)
    assert cov.chi == 0
    assert len(cov.components()) == 1
    assert orientability(cov.mesh).orientable
    assert cov.branch_vertices == (0, 3, 22, 26)
    assert (cov.mesh.V, cov.mesh.F) == (2 * m.V - 4, 2 * m.F)
    assert cover_index_checks(cov).passed


def test_baseball_does_not_lift(sphere3):
    m, conn = sphere3
    xi = generate_field("baseball", m, conn)
    with pytest.raises(LiftObstructedError) as err:
        lift_line_field(m, conn, xi)
    coc = sign_cocycle(m, conn, xi)
    assert np.prod([coc.sign(h) for h in err.value.halfedges]) == -1


def test_two_pole_cover_is_two_spheres(sphere3):
    m, conn = sphere3
    xi = generate_field("two_pole", m, conn)
    cov = branched_double_cover(m, conn, xi)
    assert cov.branch_vertices == ()
    assert len(cov.components()) == 2 and cov.chi == 4
    v = lift_line_field(m, conn, xi)
    assert np.allclose(np.mod(2 * v.angles, 2 * np.pi), xi.angles)


@pytest.mark.parametrize("name", ["torus_grid", "klein_grid"])
def test_constant_field_lifts(name):
    m, conn = mesh_and_conn(name)
    xi = generate_field("constant", m, conn)
    cov = branched_double_cover(m, conn, xi)
    assert len(cov.components()) == 2
    assert cov.chi == 0
    lift_line_field(m, conn, xi)


def test_rp2_cover_recovers_icosahedron():
    rp, conn = mesh_and_conn("rp2_minimal")
    xi = generate_field("rp2_radial", rp, conn)
    cov = branched_double_cover(rp, conn, xi)
    assert cov.chi == 2 and len(cov.components()) == 1
    ico, _ = mesh_and_conn("icosphere", {"level": 0})
    assert nx.is_isomorphic(incidence_graph(cov.mesh.faces), incidence_graph(ico.faces))
    assert orientable_double_cover(cov.mesh.faces)


def test_rp2_radial_single_defect():
    rp, conn = mesh_and_conn("rp2_minimal")
    rep = line_field_indices(rp, conn, generate_field("rp2_radial", rp, conn))
    assert {v: r.p for v, r in rep.defects().items()} == {0: 2}
    assert rep.sum_p == 2 == rep.two_chi


@pytest.mark.parametrize("name,params", CLOSED)
def test_cover_checks_random_fields(name, params):
    m, conn = mesh_and_conn(name, params)
    for seed in range(5):
        xi = LineField(np.random.default_rng(seed).uniform(0, 2 * np.pi, m.F))
        try:
            cov = branched_double_cover(m, conn, xi)
        except BranchCutError:
            continue
        rep = cover_index_checks(cov)
        assert rep.passed, rep.render()
        base = line_field_indices(m, conn, xi)
        k = base.odd_count()
        assert cov.chi == 2 * euler_characteristic(m) - k
        assert sorted(cov.branch_vertices) == sorted(v for v, r in base.vertices.items() if r.p % 2)


def test_deck_involution_negates_lift(sphere3):
    m, conn = sphere3
    cov = branched_double_cover(m, conn, generate_field("baseball", m, conn))
    th = cov.field.angles
    assert np.allclose(principal(th[cov.deck_faces] - th - np.pi), 0.0)
    assert np.array_equal(cov.deck_faces[cov.deck_faces], np.arange(cov.mesh.F))
    assert np.array_equal(cov.deck_vertices[cov.deck_vertices], np.arange(cov.mesh.V))
    # deck map is simplicial: it sends faces to faces
    for f in range(cov.mesh.F):
        image = set(cov.deck_vertices[cov.mesh.faces[f]].tolist())
        assert image == set(cov.mesh.faces[cov.deck_faces[f]].tolist())
    assert lifted_jump_mismatch(cov) < 1e-9


def test_sidecar_contents(sphere3):
    m, conn = sphere3
    cov = branched_double_cover(m, conn, generate_field("baseball", m, conn))
    side = cov.sidecar()
    assert side["branch_vertices"] == [0, 3, 22, 26]
    assert side["chi"] == 0
    assert len(side["sheet_map"]) == cov.mesh.F
    assert len(side["deck"]) == cov.mesh.V
    assert all(len(side["fibers"][str(v)]) == 1 for v in side["branch_vertices"])


def test_cover_needs_closed_mesh():
    m, conn = mesh_and_conn("disk_fan")
    with pytest.raises(BadTopologyError):
        branched_double_cover(m, conn, generate_field("radial_disk", m, conn))


def test_quotient_errors():
    m, conn = mesh_and_conn("icosphere", {"level": 0})
    vmap, fmap = antipodal_map(m)
    with pytest.raises(FixedPointError):
        quotient_by_involution(m, np.arange(m.V), np.arange(m.F), LineField(np.zeros(m.F)), conn)
    xi = LineField(np.random.default_rng(0).uniform(0, 2 * np.pi, m.F))
    with pytest.raises(NotInvariantError):
        quotient_by_involution(m, vmap, fmap, xi, conn)


def test_antipodal_quotient_is_rp2():
    m, conn = mesh_and_conn("icosphere", {"level": 1})
    vmap, fmap = antipodal_map(m)
    q, _ = quotient_by_involution(m, vmap, fmap, _invariant_field(m, conn, vmap, fmap), conn)
    assert euler_characteristic(q) == 1
    assert not orientability(q).orientable


def _invariant_field(m, conn, vmap, fmap):
    from linefields.cover import _frame_image

    phi = np.zeros(m.F)
    for f in range(m.F):
        g = int(fmap[f])
        if f < g:
            o, off = _frame_image(conn, f, g, vmap)
            phi[f] = 0.3
            phi[g] = o * 0.3 + 2 * off
    return LineField(phi)
