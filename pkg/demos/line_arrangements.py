"""Nerves of line arrangements and how their homology counts bounded regions."""

import random

from virtpoly.acceptance import random_lines
from virtpoly.nerve_homology import (
    ArrangementX,
    compatible_space,
    homology_ranks,
    integral_F,
    nerve,
    wedge_check,
)
from virtpoly.polynomial import MultiPolynomial

# four lines in general position: the nerve is the complete graph on 4 vertices
four = ArrangementX.lines([(1, 0, 0), (0, 1, 0), (1, 1, 3), (1, -2, 1)])
print("Betti numbers:", homology_ranks(nerve(four)))
print(wedge_check(four).as_dict())

# making three of them concurrent fills in a triangle and kills one loop
conc = ArrangementX.lines([(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, -2, 1)])
print("concurrent:", wedge_check(conc).as_dict())

# a batch of random arrangements, some with forced triple points
rng = random.Random(7)
tally = [wedge_check(random_lines(rng, rng.randint(3, 8), rng.choice([0, 3]))).ok for _ in range(25)]
print(f"{sum(tally)}/{len(tally)} random arrangements agree")

# integrals of x dy over the image of a nerve 3-cycle, as the lines move
print("dim of compatible translations:", len(compatible_space(four)))
fit = integral_F(four, {(0, 1): 1, (1, 2): 1, (2, 0): 1}, [MultiPolynomial(2), MultiPolynomial.variable(2, 0)])
print("fitted polynomial:", fit.polynomial, f"(degree {fit.degree}, {fit.holdout} held-out samples exact)")
