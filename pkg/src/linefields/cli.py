"""Command line: ``linefields gen | genfield | analyze | verify | cover | render``.

Exit status 0 on success, 1 when a verification check fails (or an index
cannot be computed), 2 for usage errors and requests that do not fit the
input, 3 for unreadable or malformed files.
"""

import argparse
import sys

from . import catalog
from .checks import run_checks
from .connection import build_connection, corner_angles
from .cover import branched_double_cover, cover_index_checks
from .errors import (
    BranchCutError,
    DegenerateFaceError,
    DegenerateTriangleError,
    DisconnectedError,
    LineFieldError,
    NonManifoldError,
    ParseError,
    RoundingError,
)
from .fields import field_indices, line_field_of_vector_field
from .io import dump_json, field_from_json, field_to_json, read_off, write_off
from .render import render_svg

OK, CHECK_FAILED, USAGE, IO_ERROR = 0, 1, 2, 3

_INPUT_ERRORS = (ParseError, NonManifoldError, DisconnectedError, DegenerateFaceError, DegenerateTriangleError)
_COMPUTE_ERRORS = (BranchCutError, RoundingError)


class UsageError(Exception):
    pass


def _params(items):
    out = {}
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"parameter {item!r} is not of the form name=value")
        key, val = item.split("=", 1)
        for cast in (int, float):
            try:
                val = cast(val)
                break
            except ValueError:
                continue
        out[key] = val
    return out


def _read_text(path):
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path, text):
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load(args, need_field=True):
    mesh = read_off(args.mesh)
    conn = _connection(mesh, getattr(args, "metric", None))
    fld = field_from_json(_read_text(args.field), mesh) if need_field else None
    return mesh, conn, fld


def _connection(mesh, metric):
    if metric is None:
        return catalog.default_connection(mesh)
    return build_connection(mesh, corner_angles(mesh, metric))


def cmd_gen(args):
    mesh = catalog.generate_mesh(args.mesh, **_params(args.params))
    _write_text(args.out, write_off(mesh))
    return OK


def cmd_genfield(args):
    mesh, conn, _ = _load(args, need_field=False)
    fld = catalog.generate_field(args.field, mesh, conn, **_params(args.params))
    _write_text(args.out, field_to_json(fld))
    return OK


def cmd_analyze(args):
    mesh, conn, fld = _load(args)
    report = field_indices(mesh, conn, fld)
    _write_text(args.out, dump_json(report.to_dict()))
    return OK


def _print_report(rep, quiet=False):
    if not quiet:
        print(rep.render())


def cmd_verify(args):
    if args.all_catalog:
        return _verify_corpus(args)
    if not (args.mesh and args.field):
        raise UsageError("verify needs --mesh and --field, or --all-catalog")
    mesh, conn, fld = _load(args)
    rep = run_checks(mesh, conn, fld)
    _print_report(rep, args.quiet)
    if args.json:
        _write_text(args.json, dump_json(rep.to_dict()))
    return OK if rep.passed else CHECK_FAILED


def _verify_corpus(args):
    results = []
    for mkey, fkey in catalog.corpus():
        mesh = catalog.generate_mesh(mkey)
        conn = catalog.default_connection(mesh)
        rep = run_checks(mesh, conn, catalog.generate_field(fkey, mesh, conn))
        label = f"{mkey.name}{_label(mkey.params)} / {fkey.name}{_label(fkey.params)}"
        if not args.quiet:
            print(f"[{'PASS' if rep.passed else 'FAIL'}] {label}")
            for c in rep.checks:
                if not c.passed:
                    print("    " + c.line())
        results.append({"mesh": mkey.name, "mesh_params": mkey.params, "field": fkey.name,
                        "field_params": fkey.params, "report": rep.to_dict()})
    ok = all(r["report"]["pass"] for r in results)
    if args.json:
        _write_text(args.json, dump_json({"pass": ok, "entries": results}))
    return OK if ok else CHECK_FAILED


def _label(params):
    return "(" + ", ".join(f"{k}={v}" for k, v in params.items()) + ")" if params else ""


def cmd_cover(args):
    mesh, conn, fld = _load(args)
    xi = fld if fld.kind == "line" else line_field_of_vector_field(fld)
    cover = branched_double_cover(mesh, conn, xi)
    rep = cover_index_checks(cover)
    sidecar = cover.sidecar()
    if not sidecar["simplicial"]:
        # vertex triples do not determine the gluing; record it explicitly
        sidecar["twin"] = [int(t) for t in cover.mesh.twin]
    _write_text(args.out_prefix + ".off", write_off(cover.mesh))
    _write_text(args.out_prefix + ".cover.json", dump_json(sidecar))
    _write_text(args.out_prefix + ".report.json", dump_json(rep.to_dict()))
    _print_report(rep, args.quiet)
    return OK if rep.passed else CHECK_FAILED


def cmd_render(args):
    mesh, conn, fld = _load(args)
    report = None if args.no_defects else field_indices(mesh, conn, fld)
    _write_text(args.out, render_svg(mesh, fld, report))
    return OK


def build_parser():
    ap = argparse.ArgumentParser(prog="linefields", description="Line field indices on triangulated surfaces.")
    sub = ap.add_subparsers(dest="command", required=True)

    def io_args(p, field=True):
        p.add_argument("--mesh", required=True, help="OFF mesh file")
        if field:
            p.add_argument("--field", required=True, help="linefield-v1 JSON file")
        p.add_argument("--metric", choices=["equilateral", "planar"], help="corner angles (default: planar if flat)")

    p = sub.add_parser("gen", help="write a catalog mesh as OFF")
    p.add_argument("--mesh", required=True, choices=catalog.MESHES)
    p.add_argument("--params", nargs="*", metavar="NAME=VALUE")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("genfield", help="write a catalog field for a mesh")
    p.add_argument("--field", required=True, choices=catalog.FIELDS)
    io_args(p, field=False)
    p.add_argument("--params", nargs="*", metavar="NAME=VALUE")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_genfield)

    p = sub.add_parser("analyze", help="write the defect table of a field")
    io_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run every index identity; exit 1 if any fails")
    p.add_argument("--mesh")
    p.add_argument("--field")
    p.add_argument("--metric", choices=["equilateral", "planar"])
    p.add_argument("--json", help="write the report as JSON")
    p.add_argument("--all-catalog", action="store_true", help="verify the whole catalog corpus")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cover", help="write the branched double cover and its checks")
    io_args(p)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("render", help="draw a planar field as SVG")
    io_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--no-defects", action="store_true", help="omit defect glyphs")
    p.set_defaults(func=cmd_render)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        return _fail(USAGE, str(exc))
    except OSError as exc:
        return _fail(IO_ERROR, f"{exc.filename or ''}: {exc.strerror or exc}")
    except _INPUT_ERRORS as exc:
        return _fail(IO_ERROR, f"{exc.code}: {exc}")
    except _COMPUTE_ERRORS as exc:
        return _fail(CHECK_FAILED, f"{exc.code}: {exc}")
    except LineFieldError as exc:
        return _fail(USAGE, f"{exc.code}: {exc}")


def _fail(code, message):
    print(f"linefields: error: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
