"""Designing a line field with prescribed defects on a sphere.

Integer targets summing to 4 are realized by solving one graph Laplacian
system for the edge jumps, provided the mesh is fine enough that no jump
reaches a half turn.  Targets with a different sum are rejected.
"""

from linefields import default_connection, generate_mesh, line_field_indices, prescribe_defects
from linefields.errors import BadSumError

mesh = generate_mesh("icosphere", level=3)
conn = default_connection(mesh)

targets = {0: 2, 100: -1, 200: 1, 300: 1, 400: 1}
xi = prescribe_defects(mesh, conn, targets)
got = {v: r.p for v, r in line_field_indices(mesh, conn, xi).defects().items()}
print("targets:", targets)
print("result: ", got)

try:
    prescribe_defects(mesh, conn, {})
except BadSumError as exc:
    print("empty targets rejected:", exc.code, "-", exc)
