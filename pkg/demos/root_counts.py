"""Random sparse systems against their BKK numbers."""

from virtpoly.bkk import bkk_number, count_torus_roots_2d, default_catalog, run_harness, sample_system, virtual_bkk
from virtpoly.geometry import box, hull

for name, pair in default_catalog().items():
    p1, p2 = sample_system(pair, seed=0)
    rc = count_torus_roots_2d(p1, p2)
    print(f"{name:24s} bkk={bkk_number(pair)} counted={rc.count} reliable={rc.certificate.reliable}")

report = run_harness()
print(f"harness: ok={report.ok}, flagged fraction {report.flagged_fraction:.2%}")

# rational functions: square/triangle in both slots gives a negative count
sq, tri = box((0, 0), (1, 1)), hull([(0, 0), (1, 0), (0, 1)])
print("virtual BKK of (sq - tri, sq - tri):", virtual_bkk([(sq, tri), (sq, tri)]))
