"""Static SVG pictures of planar fields."""

import numpy as np

from .catalog import is_planar
from .errors import NoPositionsError
from .fields import _hopf_str

__all__ = ["render_svg", "planar_directions"]


def planar_directions(mesh, fld):
    """Planar angle of the field's line or vector in every face."""
    p = mesh.positions[mesh.faces][:, :, :2]
    ref = p[:, 1] - p[:, 0]
    e2 = p[:, 2] - p[:, 0]
    beta = np.arctan2(ref[:, 1], ref[:, 0])
    hand = np.sign(ref[:, 0] * e2[:, 1] - ref[:, 1] * e2[:, 0])
    theta = np.asarray(fld.angles) / (2.0 if fld.kind == "line" else 1.0)
    return beta + hand * theta


def _fmt(x):
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def render_svg(mesh, fld, report=None, size=480):
    """One segment per face along the field and a labelled glyph per defect.

    ``report`` is a :class:`~linefields.fields.DefectReport`; without one no
    glyphs are drawn.  The output depends only on the inputs.
    """
    if not is_planar(mesh):
        raise NoPositionsError("rendering needs planar vertex positions")
    pos = np.asarray(mesh.positions, dtype=float)[:, :2]
    lo, hi = pos.min(axis=0), pos.max(axis=0)
    span = float(max(hi - lo))
    margin = 0.08 * span
    scale = size / (span + 2 * margin)

    def xy(pt):
        return (pt[0] - lo[0] + margin) * scale, (hi[1] - pt[1] + margin) * scale

    width = (hi[0] - lo[0] + 2 * margin) * scale
    height = (hi[1] - lo[1] + 2 * margin) * scale
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(width)}" height="{_fmt(height)}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]

    edges = []
    for a, b in mesh.edges:
        (x0, y0), (x1, y1) = xy(pos[a]), xy(pos[b])
        edges.append(f"M{_fmt(x0)} {_fmt(y0)}L{_fmt(x1)} {_fmt(y1)}")
    out.append(f'<path class="mesh" d="{"".join(edges)}" stroke="#cccccc" stroke-width="0.5" fill="none"/>')

    bary = pos[mesh.faces].mean(axis=1)
    e1 = pos[mesh.faces[:, 1]] - pos[mesh.faces[:, 0]]
    e2 = pos[mesh.faces[:, 2]] - pos[mesh.faces[:, 0]]
    area = 0.5 * np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])
    half = 0.45 * np.sqrt(area) * scale
    ang = planar_directions(mesh, fld)
    out.append('<g class="field" stroke="#1f4e99" stroke-width="1.2" stroke-linecap="round">')
    for f in range(mesh.F):
        cx, cy = xy(bary[f])
        dx, dy = half[f] * np.cos(ang[f]), -half[f] * np.sin(ang[f])
        if fld.kind == "line":
            x0, y0 = cx - dx, cy - dy
        else:
            x0, y0 = cx, cy
        out.append(f'<line x1="{_fmt(x0)}" y1="{_fmt(y0)}" x2="{_fmt(cx + dx)}" y2="{_fmt(cy + dy)}"/>')
    out.append("</g>")

    if report is not None:
        r = 0.02 * size
        for v, rec in sorted(report.defects().items()):
            x, y = xy(pos[v])
            color = "#c0392b" if rec.p > 0 else "#2471a3"
            out.append(
                f'<g class="defect"><circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" fill="{color}"/>'
                f'<text x="{_fmt(x + 1.4 * r)}" y="{_fmt(y - 1.4 * r)}" font-family="sans-serif" '
                f'font-size="{_fmt(2.2 * r)}">{_hopf_str(rec.p)}</text></g>'
            )
    out.append("</svg>")
    return "\n".join(out) + "\n"
