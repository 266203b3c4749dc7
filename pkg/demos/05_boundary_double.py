"""Fields on a surface with boundary, via the double.

A radial line field on a disk is normal to the boundary circle.  Mirroring
it onto the doubled surface (a sphere) gives a closed line field whose
indices sum to 2 chi of the double, twice the disk's own sum.
"""

from linefields import (
    build_connection,
    default_connection,
    double_with_field,
    generate_field,
    generate_mesh,
    line_field_indices,
)

mesh = generate_mesh("disk_fan", rings=6, sectors=12)
conn = default_connection(mesh)
xi = generate_field("radial_disk", mesh, conn)
print("disk: sum p =", line_field_indices(mesh, conn, xi).sum_p)

doubled, _, angles, dxi = double_with_field(conn, xi)
drep = line_field_indices(doubled, build_connection(doubled, angles), dxi)
print("double: chi =", doubled.V - doubled.E + doubled.F, " sum p =", drep.sum_p)
print("double defects:", {v: r.p for v, r in drep.defects().items()})
