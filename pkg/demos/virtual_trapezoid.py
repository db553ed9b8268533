"""Walk through a virtual 4-gon built from a trapezoid.

Run with ``python3 demos/virtual_trapezoid.py``; an SVG lands next to this file.
"""

from pathlib import Path

from virtpoly.geometry import dilate, hull
from virtpoly.svg import winding_chain_svg
from virtpoly.winding import (
    SupportFunctionPL,
    gauss_type_map,
    virtual_volume_from_support,
    winding_chain,
    winding_truncation_check,
)

# %% reference trapezoid and two analogous witnesses
trap = hull([(0, 0), (2, 0), (1, 1), (0, 1)])
pos = hull([(0, 0), (6, 0), (5, 1), (0, 1)])
neg = dilate(trap, 2)
print("normals of the reference:", SupportFunctionPL.of(trap, trap).normals)

# %% the difference of support functions is not convex
h = SupportFunctionPL.of(trap, pos) - SupportFunctionPL.of(trap, neg)
print("support values:", [str(v) for v in h.values])

# %% its Gauss-type map traces a clockwise quadrilateral
cycle = gauss_type_map(h)
print("vertex images:", [tuple(map(str, p)) for p in cycle.points])
w = winding_chain(cycle)
for k, region in w.regions:
    print(f"region of area {region.area} with winding weight {k}")

# %% volume through the winding chain agrees with the algebra of witnesses
print("virtual volume:", virtual_volume_from_support(h))
print("matches pos * neg^-1 after dropping thin pieces:", winding_truncation_check(h, pos, neg))

out = Path(__file__).with_suffix(".svg")
out.write_text(winding_chain_svg(w, cycle))
print("picture written to", out)
