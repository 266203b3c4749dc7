"""Run the full verification harness over the catalog corpus."""

from linefields import corpus, default_connection, generate_field, generate_mesh, run_checks

failed = 0
for mkey, fkey in corpus():
    mesh = generate_mesh(mkey)
    conn = default_connection(mesh)
    rep = run_checks(mesh, conn, generate_field(fkey, mesh, conn))
    failed += not rep.passed
    print(f"{'PASS' if rep.passed else 'FAIL'}  {mkey.name} {mkey.params}  {fkey.name} {fkey.params}  "
          f"({len(rep.checks)} checks)")
print("failures:", failed)
