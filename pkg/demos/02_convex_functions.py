"""
Piecewise-linear functions, convexity, quasi-projectivity
=========================================================

A function on a fan is one linear functional per maximal cone, compatible
across walls.  Ray values are the divisor coefficients; convexity is an
exact test on the interior-wall functionals.
"""

from fractions import Fraction

from fanforge import corpus
from fanforge import (
    is_convex,
    is_strictly_convex,
    is_quasi_projective,
    pl_basis,
    pl_from_ray_values,
)

fan = corpus.split_pyramid_fan()

# all-ones ray values: convex, but flat across the top wall
phi = pl_from_ray_values(fan, [1, 1, 1, 1, 1])
print("phi convex:", is_convex(phi), " strictly:", is_strictly_convex(phi))

# perturbing the apex value makes it strictly convex
psi = pl_from_ray_values(fan, [1, 2, 1, 2, 1])
print("psi convex:", is_convex(psi), " strictly:", is_strictly_convex(psi))

# quasi-projectivity = existence of a strictly convex function, decided by
# an exact LP; the witness comes back as a function
ok, witness = is_quasi_projective(fan)
print("quasi-projective:", ok, " witness ray values:", witness.ray_values())

# the classic smooth complete non-projective fan has no witness
fulton = corpus.fulton_fan()
print("fulton quasi-projective:", is_quasi_projective(fulton)[0])

# the function space splits as global linear functionals plus a quotient
# part pinned to vanish on the first maximal cone
basis = pl_basis(fulton)
print("dim PL =", basis.dim_pl, " dim Pic =", basis.dim_pic)
