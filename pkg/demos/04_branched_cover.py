"""The branched double cover that orients a line field.

Lifting the baseball field to its double cover branched at the four
half-turn defects gives a torus (chi = 2 * 2 - 4 = 0) carrying a vector
field whose indices sum to the cover's Euler characteristic.
"""

from linefields import (
    branched_double_cover,
    cover_index_checks,
    default_connection,
    generate_field,
    generate_mesh,
    orientability,
)

mesh = generate_mesh("icosphere", level=3)
conn = default_connection(mesh)
xi = generate_field("baseball", mesh, conn)

cover = branched_double_cover(mesh, conn, xi)
print("branch vertices:", cover.sidecar()["branch_vertices"])
print("cover chi:", cover.chi, " components:", len(cover.components()))
print("cover orientable:", orientability(cover.mesh).orientable)
print(cover_index_checks(cover).render())
