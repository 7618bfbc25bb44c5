"""
Primitive collections and their relations
=========================================

A primitive collection is a ray set contained in no single cone while every
proper subset is.  Its ray sum lands in a unique minimal cone and rewrites
positively over an independent subset; the resulting inequality cuts out
the convex functions.
"""

from fanforge import corpus
from fanforge import (
    enumerate_primitive_collections,
    batyrev_primitive_collections,
    primitive_relation,
)

fan = corpus.square_pyramid_fan()
print("collections:", enumerate_primitive_collections(fan))

# the span-based variant used for smooth fans comes up empty here, which is
# exactly why the containment-based definition is the right one for
# non-simplicial fans
print("span-based variant:", batyrev_primitive_collections(fan))

for p in enumerate_primitive_collections(fan):
    pr = primitive_relation(fan, p)
    lhs = " + ".join(f"r{i}" for i in p)
    rhs = " + ".join(f"{pr.b[i]}*r{i}" for i in pr.support) or "0"
    print(f"{lhs} = {rhs}   (minimal cone {pr.sigma_min.ray_indices})")

# on the 2D fan with r rays in convex position the collections are exactly
# the non-adjacent pairs: r(r-3)/2 of them
for r in (4, 6, 10):
    poly = corpus.polygon_fan(r)
    print(r, "rays ->", len(enumerate_primitive_collections(poly)), "collections")

# the non-projective example has seven, one of size three
print("fulton:", enumerate_primitive_collections(corpus.fulton_fan()))
