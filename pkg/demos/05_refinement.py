"""
Generic-weight simplicial refinement
====================================

Scaling each cone's slice points by weights in (0,1] and projecting the
facets of the lifted hull subdivides the cone; generic weights give a
triangulation.  Rays held at weight 1 end up spanning a cone of the result,
and a strictly convex function on the input yields a refinement that stays
quasi-projective.
"""

from fanforge import corpus
from fanforge import (
    fan_to_json,
    is_quasi_projective,
    qp_refinement,
    simplicial_refinement,
    supported_refinement,
)
from fanforge.fan import fans_equal
from fanforge.refine import covers_coarse_exactly

coarse = corpus.square_pyramid_fan()

# keeping the diagonal rays rho2, rho4 at weight 1 splits the square cone
# along them: the result is the split-pyramid fan, whatever the seed
r = simplicial_refinement(coarse, support=(2, 4), seed=123)
print("refined cones:", sorted(c.ray_indices for c in r.fine.max_cones))
print("reproduces the split pyramid:", fans_equal(r.fine, corpus.split_pyramid_fan()))
print("weights:", {i: str(w) for i, w in enumerate(r.weights.w)})

# the other diagonal gives the other triangulation
r2 = simplicial_refinement(coarse, support=(1, 3), seed=123)
print("other split:", sorted(c.ray_indices for c in r2.fine.max_cones))

# a primitive collection stays primitive on its supported refinement
rs = supported_refinement(coarse, (0, 2, 4), seed=5)
print("supported refinement fine fan:", rs.fine)

# exact bookkeeping: per coarse cone, fine slice volumes add up exactly
print("volume cover check:", covers_coarse_exactly(r))

# the quasi-projective variant slices along a strictly convex witness and
# returns a function strictly convex relative to the coarse fan
ok, witness = is_quasi_projective(coarse)
rq, phi = qp_refinement(coarse, (), witness, seed=7)
print("fine fan quasi-projective:", is_quasi_projective(rq.fine)[0])
print("fine fan as JSON:", fan_to_json(rq.fine))
