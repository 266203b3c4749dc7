"""Local defect patches on a planar disk and their normal indices.

For a line field of winding k the projective index is 2k, and the field
rotated a quarter turn against the boundary picks up p - 2.  The patch for
k = 1/2 is drawn to an SVG file.
"""

import sys

from linefields import default_connection, generate_field, generate_mesh, line_field_indices, render_svg

mesh = generate_mesh("disk_fan", rings=6, sectors=12)
conn = default_connection(mesh)

for k in (1, 0.5, -0.5, -1):
    for variant in ("ray", "circular"):
        xi = generate_field("defect_patch", mesh, conn, k=k, variant=variant)
        c = line_field_indices(mesh, conn, xi).vertices[0]
        print(f"k={k:+.1f} {variant:9s} p={c.p:+d} p_perp={c.p_perp:+d} hopf={c.hopf}")

xi = generate_field("defect_patch", mesh, conn, k=0.5)
out = sys.argv[1] if len(sys.argv) > 1 else "half_defect.svg"
with open(out, "w") as fh:
    fh.write(render_svg(mesh, xi, line_field_indices(mesh, conn, xi)))
print("wrote", out)
