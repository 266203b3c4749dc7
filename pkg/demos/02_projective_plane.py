"""A line field on the real projective plane.

The projective plane is built as the antipodal quotient of an icosphere.
The radial field has a single defect of projective index 2, the whole of
2 chi, and no vector field could produce it since RP2 is non-orientable.
"""

from linefields import default_connection, generate_field, generate_mesh, line_field_indices, orientability

mesh = generate_mesh("rp2_minimal")
conn = default_connection(mesh)
xi = generate_field("rp2_radial", mesh, conn)
rep = line_field_indices(mesh, conn, xi)

print("orientable:", orientability(mesh).orientable)
print("chi:", mesh.V - mesh.E + mesh.F)
print("defects:", {v: r.p for v, r in rep.defects().items()})
print("sum p =", rep.sum_p)
