"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py`` (the lines are printed in the
terminal summary) or ``python3 tests/test_acceptance.py``.
"""

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent))

from oracles import dense_winding  # noqa: E402

from linefields import (  # noqa: E402
    CatalogKey,
    LineField,
    VectorField,
    branched_double_cover,
    build_connection,
    corpus,
    double_with_field,
    generate_field,
    generate_mesh,
    line_field_indices,
    line_field_of_vector_field,
    prescribe_defects,
    run_checks,
    vector_field_indices,
)
from linefields.catalog import default_connection  # noqa: E402
from linefields.errors import BadSumError, BranchCutError  # noqa: E402
from linefields.fields import normality_defects  # noqa: E402
from linefields.mesh import orientability  # noqa: E402

RESULTS = []

CLOSED_MESHES = [("icosphere", {"level": n}) for n in range(4)] + [
    ("torus_grid", {"a": 4, "b": 4}),
    ("klein_grid", {"a": 4, "b": 4}),
    ("rp2_minimal", {}),
]
CATALOG_FIELDS = {
    "icosphere": ["baseball", "two_pole"],
    "torus_grid": ["constant"],
    "klein_grid": ["constant"],
    "rp2_minimal": ["rp2_radial"],
}
RANDOM_SEEDS = list(range(200))
ORACLE_SEEDS = list(range(50))

_cache = {}


def setup(name, params=None):
    key = (name, tuple(sorted((params or {}).items())))
    if key not in _cache:
        mesh = generate_mesh(name, **(params or {}))
        _cache[key] = (mesh, default_connection(mesh))
    return _cache[key]


def record(number, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    RESULTS.append(line)
    print(line)
    return ok


def test_criterion_01_line_poincare_hopf():
    failures, skipped, total = [], 0, 0
    for name, params in CLOSED_MESHES:
        mesh, conn = setup(name, params)
        two_chi = 2 * (mesh.V - mesh.E + mesh.F)
        for fname in CATALOG_FIELDS[name]:
            rep = line_field_indices(mesh, conn, generate_field(fname, mesh, conn))
            total += 1
            if rep.sum_p != two_chi:
                failures.append((name, params, fname))
        mesh_skips = 0
        for seed in RANDOM_SEEDS:
            xi = generate_field("random_line_field", mesh, conn, seed=seed)
            try:
                rep = line_field_indices(mesh, conn, xi)
            except BranchCutError:
                mesh_skips += 1
                continue
            total += 1
            if rep.sum_p != two_chi:
                failures.append((name, params, seed))
        skipped += mesh_skips
        if mesh_skips >= 0.05 * len(RANDOM_SEEDS):
            failures.append((name, params, f"skip rate {mesh_skips}/{len(RANDOM_SEEDS)}"))
    ok = not failures
    record(1, ok, f"sum p = 2 chi on {total} fields over 7 closed meshes, {skipped} branch-cut skips, "
                  f"failures {failures[:5]}")
    assert ok


def test_criterion_02_baseball():
    mesh, conn = setup("icosphere", {"level": 3})
    xi = generate_field("baseball", mesh, conn)
    rep = line_field_indices(mesh, conn, xi)
    defects = {v: r.p for v, r in rep.defects().items()}
    markus = run_checks(mesh, conn, xi).to_dict()["markus"]
    ok = (
        len(defects) == 4
        and set(defects.values()) == {1}
        and rep.sum_p == 4
        and markus == {"lhs": 4, "rhs": 0, "equal": False}
    )
    record(2, ok, f"baseball defects {defects}, sum {rep.sum_p}, markus {markus}")
    assert ok


def test_criterion_03_projective_plane():
    mesh, conn = setup("rp2_minimal")
    rep = line_field_indices(mesh, conn, generate_field("rp2_radial", mesh, conn))
    defects = {v: r.p for v, r in rep.defects().items()}
    chi = mesh.V - mesh.E + mesh.F
    ok = list(defects.values()) == [2] and rep.sum_p == 2 == 2 * chi
    record(3, ok, f"rp2_radial defects {defects}, sum p {rep.sum_p}, 2 chi {2 * chi}")
    assert ok


def _center(k, variant="ray"):
    mesh, conn = setup("disk_fan", {"rings": 6, "sectors": 12})
    rep = line_field_indices(mesh, conn, generate_field("defect_patch", mesh, conn, k=k, variant=variant))
    return rep.vertices[0], {v: r.p for v, r in rep.defects().items()}


def test_criterion_04_patches():
    got = {}
    ok = True
    for k in (1, 0.5, -0.5, -1):
        for variant in ("ray", "circular"):
            center, defects = _center(k, variant)
            got[(k, variant)] = center.p
            ok &= center.p == 2 * k and defects == {0: center.p}
    record(4, ok, f"center p by (k, variant): {got}")
    assert ok


def test_criterion_05_normal_indices():
    half, _ = _center(0.5)
    neg, _ = _center(-1)
    ok = (half.p, half.p_perp) == (1, -1) and (neg.p, neg.p_perp) == (-2, -4)
    record(5, ok, f"k=1/2 (p, p_perp) = {(half.p, half.p_perp)}; k=-1 (p, p_perp) = {(neg.p, neg.p_perp)}")
    assert ok


def _corpus_reports():
    for mkey, fkey in corpus():
        mesh, conn = setup(mkey.name, mkey.params)
        fld = generate_field(fkey, mesh, conn)
        yield mkey, fkey, mesh, conn, fld


def test_criterion_06_lemmas():
    failures, vertices, fields = [], 0, 0
    for mkey, fkey, mesh, conn, fld in _corpus_reports():
        rep = vector_field_indices(mesh, conn, fld) if fld.kind == "vector" else line_field_indices(mesh, conn, fld)
        fields += 1
        for v, r in rep.vertices.items():
            vertices += 1
            if r.p_perp != r.p - 2 or (fld.kind == "vector" and r.ind_perp != r.ind - 1):
                failures.append((mkey.name, fkey.name, v))
    ok = not failures
    record(6, ok, f"p_perp = p - 2 and ind_perp = ind - 1 at {vertices} vertices of {fields} fields; "
                  f"failures = {len(failures)}")
    assert ok


COVER_CHECKS = ("riemann_hurwitz", "fiber_sizes", "cover_poincare_hopf", "lemma_normal_index_fiber")


def test_criterion_07_cover():
    failures, covers = [], 0
    for mkey, fkey, mesh, conn, fld in _corpus_reports():
        rep = run_checks(mesh, conn, fld)
        names = [n for n in rep.names() if n.split(".")[-1] in COVER_CHECKS]
        if not names:
            continue
        covers += 1
        for n in names:
            if not rep.get(n).passed:
                failures.append((mkey.name, fkey.name, n))
    mesh, conn = setup("icosphere", {"level": 3})
    cov = branched_double_cover(mesh, conn, generate_field("baseball", mesh, conn))
    base_ok = len(cov.components()) == 1 and orientability(cov.mesh).orientable and cov.chi == 0
    ok = not failures and base_ok
    record(7, ok, f"cover suite on {covers} corpus line fields, failures {failures}; baseball cover "
                  f"connected={len(cov.components()) == 1} orientable={orientability(cov.mesh).orientable} "
                  f"chi={cov.chi}")
    assert ok


def test_criterion_08_oracle():
    mesh, conn = setup("icosphere", {"level": 2})
    mismatches, compared, skipped = 0, 0, 0
    for seed in ORACLE_SEEDS:
        theta = np.random.default_rng(10_000 + seed).uniform(0, 2 * np.pi, mesh.F)
        v = VectorField(theta)
        xi = line_field_of_vector_field(v)
        try:
            vrep = vector_field_indices(mesh, conn, v)
            lrep = line_field_indices(mesh, conn, xi)
        except BranchCutError:
            skipped += 1
            continue
        for x in range(mesh.V):
            ind = dense_winding(mesh.faces, conn.angles, x, v.angles, 1, step=0.05)
            p = dense_winding(mesh.faces, conn.angles, x, xi.angles, 2, step=0.05)
            compared += 2
            mismatches += int(abs(ind - vrep.vertices[x].ind) > 1e-6) + int(abs(p - lrep.vertices[x].p) > 1e-6)
    ok = mismatches == 0 and skipped == 0
    record(8, ok, f"{compared} vertex indices of {len(ORACLE_SEEDS)} random fields vs dense-sampling oracle, "
                  f"{mismatches} mismatches, {skipped} skipped")
    assert ok


def test_criterion_09_boundary():
    mesh, conn = setup("disk_fan", {"rings": 6, "sectors": 12})
    xi = generate_field("radial_disk", mesh, conn)
    normal = normality_defects(conn, xi) == []
    pre = line_field_indices(mesh, conn, xi)
    doubled, _, angles, dxi = double_with_field(conn, xi)
    drep = line_field_indices(doubled, build_connection(doubled, angles), dxi)
    chi_d = doubled.V - doubled.E + doubled.F
    ok = normal and drep.sum_p == 4 == 2 * chi_d and pre.sum_p == 2 == pre.two_chi
    record(9, ok, f"radial_disk normal={normal}; double sum p {drep.sum_p} vs 2 chi {2 * chi_d}; "
                  f"pre-doubling sum p {pre.sum_p} vs 2 chi(D2) {pre.two_chi}")
    assert ok


def test_criterion_10_existence():
    found = {}
    for name in ("torus_grid", "klein_grid", "annulus_grid"):
        mesh, conn = setup(name)
        rep = line_field_indices(mesh, conn, generate_field("constant", mesh, conn))
        found[name] = len(rep.defects())
    sphere, sconn = setup("icosphere", {"level": 2})
    try:
        prescribe_defects(sphere, sconn, {v: 0 for v in range(sphere.V)})
        code = None
    except BadSumError as exc:
        code = exc.code
    ok = all(n == 0 for n in found.values()) and code == "BAD_SUM"
    record(10, ok, f"constant field defect counts {found}; zero targets on sphere -> {code}")
    assert ok


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
