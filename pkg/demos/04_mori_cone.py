"""
Wall relations, curve classes, the Mori cone
============================================

Every interior wall carries a rational relation among the surrounding rays,
unique up to positive scale.  Its class in the dual of the Picard quotient
generates the Mori cone; the minimal generators are the extremal rays, and
on simplicial quasi-projective fans each extremal class is the class of a
primitive collection.
"""

from fanforge import corpus
from fanforge import (
    curve_class,
    extremal_walls,
    mori_cone,
    pl_basis,
    primitive_relation,
    enumerate_primitive_collections,
    wall_relation,
)

fan = corpus.split_pyramid_fan()
basis = pl_basis(fan)

for wall in fan.interior_walls:
    rel = wall_relation(fan, wall)
    cls = curve_class(fan, rel, basis)
    print("wall", wall.ray_indices, " relation", dict(sorted(rel.items())), " class", cls)

mc = mori_cone(fan, basis)
print("mori cone pointed:", mc.is_pointed)
print("extremal walls:", [w.ray_indices for w in extremal_walls(fan, basis)])

# the extremal directions match the primitive-relation classes exactly
for p in enumerate_primitive_collections(fan):
    cls = curve_class(fan, primitive_relation(fan, p).relation, basis)
    print("collection", p, "class", cls)

# without quasi-projectivity the Mori cone can contain a line
fulton = corpus.fulton_fan()
print("fulton mori pointed:", mori_cone(fulton, pl_basis(fulton)).is_pointed)
