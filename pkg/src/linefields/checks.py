"""The verification harness: every index identity run against one field."""

from .connection import build_connection
from .cover import branched_double_cover, cover_index_checks
from .errors import BranchCutError, NotNormalError, RoundingError
from .fields import double_with_field, field_indices, line_field_of_vector_field, normality_defects
from .mesh import orientability
from .verify import Check, VerificationReport, equal_check, failed_check

__all__ = ["run_checks", "mesh_summary"]

_ENGINE_ERRORS = (BranchCutError, RoundingError)


def mesh_summary(mesh):
    return {
        "V": mesh.V,
        "E": mesh.E,
        "F": mesh.F,
        "chi": mesh.V - mesh.E + mesh.F,
        "closed": mesh.is_closed,
        "orientable": orientability(mesh).orientable,
    }


def run_checks(mesh, conn, fld):
    """Run every applicable identity for ``fld`` and collect the results.

    Closed meshes are checked directly.  A mesh with boundary must carry a
    field normal to the boundary; it is then mirrored onto the double and the
    closed-surface checks run there, prefixed ``double.``.
    """
    rep = VerificationReport(meta={"field_kind": fld.kind, "mesh": mesh_summary(mesh)})
    if mesh.is_closed:
        _closed_checks(rep, mesh, conn, fld)
    else:
        _boundary_checks(rep, mesh, conn, fld)
    return rep


def _indices(rep, name, mesh, conn, fld):
    try:
        return field_indices(mesh, conn, fld)
    except _ENGINE_ERRORS as exc:
        rep.add(failed_check(name, "vertex indices from principal jumps", exc))
        return None


def _line_sums(rep, report, prefix=""):
    rep.add(
        equal_check(
            prefix + "line_poincare_hopf",
            report.sum_p,
            report.two_chi,
            "projective indices sum to twice the Euler characteristic",
        )
    )
    rep.add(
        equal_check(
            prefix + "hopf_sum", report.sum_p / 2, report.two_chi // 2, "Hopf indices sum to the Euler characteristic"
        )
    )


def _lemma_checks(rep, report, prefix="", line_sums=True, vector_sum=True):
    if line_sums:
        _line_sums(rep, report, prefix)
    bad = [v for v, r in report.vertices.items() if r.p_perp != r.p - 2]
    rep.add(
        equal_check(
            prefix + "normal_projective_index",
            len(bad),
            0,
            "normal projective index is the projective index minus two",
            detail={"failures": bad},
        )
    )
    if report.kind == "vector":
        bad = [v for v, r in report.vertices.items() if r.ind_perp != r.ind - 1]
        rep.add(
            equal_check(
                prefix + "normal_vector_index",
                len(bad),
                0,
                "normal index of a vector field is its index minus one",
                detail={"failures": bad},
            )
        )
    if report.kind == "vector" and vector_sum:
        rep.add(
            equal_check(
                prefix + "vector_poincare_hopf",
                report.sum_ind,
                report.chi,
                "vector field indices sum to the Euler characteristic",
            )
        )


def _markus(rep, report, prefix=""):
    k = report.odd_count()
    lhs, rhs = report.sum_p, report.two_chi - k
    rep.add(
        Check(
            prefix + "markus",
            lhs,
            rhs,
            0.0,
            True,
            "the Markus count, 2 chi minus the number of non-orientable singularities",
            informational=True,
            detail={"equal": lhs == rhs, "non_orientable": k},
        )
    )
    return {"lhs": lhs, "rhs": rhs, "equal": lhs == rhs}


def _cover_checks(rep, mesh, conn, xi, prefix=""):
    try:
        cover = branched_double_cover(mesh, conn, xi)
        sub = cover_index_checks(cover)
    except _ENGINE_ERRORS as exc:
        rep.add(failed_check(prefix + "cover", "branched double cover of the line field", exc))
        return None
    for c in sub.checks:
        c.name = prefix + c.name
    rep.extend(sub)
    return sub.meta.get("cover")


def _closed_checks(rep, mesh, conn, fld):
    report = _indices(rep, "indices", mesh, conn, fld)
    if report is None:
        return
    _lemma_checks(rep, report)
    rep.meta["markus"] = _markus(rep, report)
    xi = fld if fld.kind == "line" else line_field_of_vector_field(fld)
    rep.meta["cover"] = _cover_checks(rep, mesh, conn, xi)
    rep.meta.update(report.to_dict())


def _boundary_checks(rep, mesh, conn, fld):
    # the global identities need a boundary-normal field; otherwise only the
    # per-vertex lemmas apply (a local defect patch, say)
    xi = fld if fld.kind == "line" else line_field_of_vector_field(fld)
    bad = normality_defects(conn, xi)
    normal = not bad
    rep.add(
        Check(
            "boundary_normal",
            len(bad),
            0,
            0.0,
            True,
            "a boundary-normal field mirrors onto the double; global sums apply only then",
            informational=True,
            detail={"normal": normal, "faces": bad},
        )
    )
    report = _indices(rep, "indices", mesh, conn, fld)
    if report is None:
        return
    rep.meta.update(report.to_dict())
    rep.meta["boundary_normal"] = normal
    _lemma_checks(rep, report, line_sums=False, vector_sum=normal)
    if not normal:
        return
    rep.add(
        equal_check(
            "boundary_poincare_hopf",
            report.sum_p,
            report.two_chi,
            "projective indices of a boundary-normal field sum to twice the Euler characteristic",
        )
    )
    try:
        doubled, _, angles, dxi = double_with_field(conn, xi)
    except NotNormalError as exc:
        rep.add(failed_check("double", "field mirrors continuously across the seam", exc))
        return
    dconn = build_connection(doubled, angles)
    drep = _indices(rep, "double.indices", doubled, dconn, dxi)
    if drep is None:
        return
    _lemma_checks(rep, drep, prefix="double.")
    markus = _markus(rep, drep, prefix="double.")
    cover = _cover_checks(rep, doubled, dconn, dxi, prefix="double.")
    rep.meta["double"] = {
        "mesh": mesh_summary(doubled),
        "sum_p": drep.sum_p,
        "two_chi": drep.two_chi,
        "defects": drep.to_dict()["defects"],
        "markus": markus,
        "cover": cover,
    }
