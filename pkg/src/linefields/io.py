"""OFF meshes and JSON field / report files."""

import json

import numpy as np

from .errors import NonTriangularError, ParseError
from .fields import LineField, VectorField
from .mesh import build_mesh

__all__ = [
    "parse_off",
    "write_off",
    "read_off",
    "field_to_json",
    "field_from_json",
    "dump_json",
]

FIELD_FORMAT = "linefield-v1"


def _tokens(text):
    """Non-blank lines with comments stripped, as (line number, tokens)."""
    out = []
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].split()
        if line:
            out.append((n, line))
    return out


def _ints(tokens, n, what):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers in {what}, got {' '.join(tokens)!r}", n) from None


def parse_off(text, require_connected=True):
    """Read an ASCII OFF triangle mesh.

    Vertex coordinates are kept as positions unless every coordinate is
    zero, which is how :func:`write_off` marks a purely combinatorial mesh.
    """
    lines = _tokens(text)
    if not lines:
        raise ParseError("empty file", 1)
    n, head = lines[0]
    if head[0] != "OFF":
        raise ParseError(f"missing OFF header, got {head[0]!r}", n)
    rest = lines[1:]
    if len(head) > 1:
        rest = [(n, head[1:])] + rest
    if not rest:
        raise ParseError("missing counts line", n + 1)
    n, counts = rest[0]
    counts = _ints(counts, n, "counts line")
    if len(counts) != 3 or min(counts) < 0:
        raise ParseError("counts line must hold three non-negative integers", n)
    nv, nf, _ = counts
    body = rest[1:]
    if len(body) < nv + nf:
        last = body[-1][0] + 1 if body else n + 1
        raise ParseError(f"expected {nv} vertices and {nf} faces, file ends early", last)
    if len(body) > nv + nf:
        raise ParseError("unexpected data after the last face", body[nv + nf][0])

    pos = np.zeros((nv, 3))
    for i, (n, tok) in enumerate(body[:nv]):
        if len(tok) < 3:
            raise ParseError("vertex line needs three coordinates", n)
        try:
            pos[i] = [float(t) for t in tok[:3]]
        except ValueError:
            raise ParseError(f"bad coordinate in {' '.join(tok)!r}", n) from None
    if not np.isfinite(pos).all():
        raise ParseError("non-finite vertex coordinate", body[int(np.argwhere(~np.isfinite(pos))[0, 0])][0])

    faces = np.zeros((nf, 3), dtype=np.int64)
    for i, (n, tok) in enumerate(body[nv:]):
        vals = _ints(tok, n, "face line")
        if vals[0] != 3:
            raise NonTriangularError(f"face with {vals[0]} vertices; only triangles are supported", n)
        if len(vals) < 4:
            raise ParseError("face line lists fewer than three vertices", n)
        tri = vals[1:4]
        if min(tri) < 0 or max(tri) >= nv:
            raise ParseError(f"face vertex out of range 0..{nv - 1}", n)
        faces[i] = tri
    positions = pos if np.any(pos) else None
    return build_mesh(nv, faces, positions=positions, require_connected=require_connected)


def read_off(path, require_connected=True):
    with open(path, encoding="utf-8") as fh:
        return parse_off(fh.read(), require_connected=require_connected)


def write_off(mesh):
    """Serialize ``mesh`` as OFF text; coordinates use 17 significant digits."""
    lines = ["OFF", f"{mesh.V} {mesh.F} {mesh.E}"]
    pos = mesh.positions
    if pos is None:
        lines += ["0 0 0"] * mesh.V
    else:
        pos = np.asarray(pos, dtype=float)
        if pos.shape[1] == 2:
            pos = np.column_stack([pos, np.zeros(len(pos))])
        lines += [" ".join("%.17g" % x for x in row) for row in pos]
    lines += ["3 %d %d %d" % tuple(f) for f in mesh.faces]
    return "\n".join(lines) + "\n"


def field_to_json(fld):
    """The ``linefield-v1`` document for a line or vector field."""
    doc = {
        "format": FIELD_FORMAT,
        "kind": fld.kind,
        "face_count": int(len(fld.angles)),
        "angles": [float("%.17g" % a) for a in fld.angles],
    }
    return json.dumps(doc, indent=1)


def field_from_json(text, mesh=None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(doc, dict) or doc.get("format") != FIELD_FORMAT:
        raise ParseError(f"field file must declare format {FIELD_FORMAT!r}")
    kind = doc.get("kind")
    if kind not in ("line", "vector"):
        raise ParseError(f"field kind must be 'line' or 'vector', got {kind!r}")
    angles = doc.get("angles")
    if not isinstance(angles, list) or not all(isinstance(a, (int, float)) for a in angles):
        raise ParseError("angles must be a list of numbers")
    if doc.get("face_count") != len(angles):
        raise ParseError(f"face_count {doc.get('face_count')!r} does not match {len(angles)} angles")
    if mesh is not None and len(angles) != mesh.F:
        raise ParseError(f"field has {len(angles)} angles but the mesh has {mesh.F} faces")
    angles = np.asarray(angles, dtype=float)
    if not np.isfinite(angles).all():
        raise ParseError("angles must be finite")
    return LineField(angles) if kind == "line" else VectorField(angles)


def dump_json(doc):
    """Stable JSON text: sorted keys, floats at full precision."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
