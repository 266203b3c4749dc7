"""Defects of a line field on a sphere.

A baseball-seam line field on an icosphere has four half-turn defects.
Their projective indices sum to twice the Euler characteristic, while the
Markus count disagrees because each defect is non-orientable.
"""

from linefields import default_connection, generate_field, generate_mesh, line_field_indices, run_checks

mesh = generate_mesh("icosphere", level=3)
conn = default_connection(mesh)
xi = generate_field("baseball", mesh, conn)

rep = line_field_indices(mesh, conn, xi)
print(f"V={mesh.V} E={mesh.E} F={mesh.F} chi={mesh.V - mesh.E + mesh.F}")
for v, r in sorted(rep.defects().items()):
    print(f"vertex {v:4d}  p={r.p:+d}  hopf={r.hopf}  p_perp={r.p_perp:+d}")
print("sum p =", rep.sum_p, " 2 chi =", rep.two_chi)

checks = run_checks(mesh, conn, xi)
print("markus:", checks.to_dict()["markus"])
print("all checks pass:", checks.passed)
