"""Polyhedral cone primitives over exact rationals.

Cones come in two representations: HCone (intersection of halfspaces
<h,x> >= 0 and hyperplanes <e,x> = 0) and VCone (nonnegative hull of
generators).  Conversion both ways is the double description method with
lexicographic insertion order and the algebraic rank adjacency test, which
is the simplest correct choice at the intended sizes (ambient dimension is
guarded at 12).  Membership and inclusion questions are exact LPs.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .linalg import (
    Vec,
    is_zero_vec,
    kernel_basis,
    primitivize,
    rank,
    vdot,
    vec,
    vsub,
    vscale,
)

log = logging.getLogger(__name__)

MAX_DIM = 12


class DimensionTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class HCone:
    """{x : <h,x> >= 0 for h in inequalities, <e,x> = 0 for e in equalities}."""

    inequalities: tuple[Vec, ...]
    equalities: tuple[Vec, ...]
    ambient_dim: int

    @staticmethod
    def make(inequalities, equalities=(), ambient_dim=None) -> "HCone":
        ineqs = [vec(h) for h in inequalities]
        eqs = [vec(e) for e in equalities]
        if ambient_dim is None:
            ambient_dim = len((ineqs + eqs)[0])
        kept_i = tuple(h for h in ineqs if not is_zero_vec(h))
        kept_e = tuple(e for e in eqs if not is_zero_vec(e))
        return HCone(kept_i, kept_e, ambient_dim)

    def contains_point(self, x) -> bool:
        x = vec(x)
        return all(vdot(h, x) >= 0 for h in self.inequalities) and all(
            vdot(e, x) == 0 for e in self.equalities
        )


@dataclass(frozen=True)
class VCone:
    """Nonnegative rational combinations of the generators."""

    generators: tuple[Vec, ...]
    ambient_dim: int

    @staticmethod
    def make(generators, ambient_dim=None) -> "VCone":
        gens = [vec(g) for g in generators]
        if ambient_dim is None:
            if not gens:
                raise ValueError("ambient_dim required for a generator-free cone")
            ambient_dim = len(gens[0])
        kept = []
        for g in gens:
            if is_zero_vec(g):
                log.info("dropping zero generator from cone input")
            else:
                kept.append(g)
        return VCone(tuple(kept), ambient_dim)


def _check_dim(n: int):
    if n > MAX_DIM:
        raise DimensionTooLarge(f"ambient dimension {n} exceeds the {MAX_DIM} guard")


def double_description(
    equalities, inequalities, dim: int
) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Extreme rays and lineality of {x : E x = 0, A x >= 0}.

    Returns (lines, rays), both primitive integer vectors: the cone equals
    span(lines) + cone(rays) and the rays are extreme modulo the lineality.
    Inequalities are inserted in lexicographic order; adjacency of rays is
    decided by the rank of the constraints tight at both.
    """
    _check_dim(dim)
    eq_rows = [vec(e) for e in equalities if not is_zero_vec(e)]
    if eq_rows:
        lines = [primitivize(l) for l in kernel_basis(eq_rows, dim)]
    else:
        lines = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    rays: list[tuple[int, ...]] = []
    rows = sorted(
        {primitivize(h) for h in (vec(h) for h in inequalities) if not is_zero_vec(h)}
    )
    processed: list[tuple[int, ...]] = []
    full_rank = rank(eq_rows) if eq_rows else 0
    basis_rows = list(eq_rows)

    for a in rows:
        vals_lines = [vdot(a, l) for l in lines]
        hit = next((i for i, v in enumerate(vals_lines) if v != 0), None)
        if hit is not None:
            # a line leaves the lineality: pivot it into a ray
            pivot = lines[hit] if vals_lines[hit] > 0 else tuple(-x for x in lines[hit])
            pv = abs(vals_lines[hit])
            lines = [
                primitivize(vsub(l, vscale(Fraction(vdot(a, l), pv), pivot)))
                for i, l in enumerate(lines)
                if i != hit
            ]
            rays = [
                primitivize(vsub(r, vscale(Fraction(vdot(a, r), pv), pivot)))
                for r in rays
            ] + [pivot]
        else:
            plus = [r for r in rays if vdot(a, r) > 0]
            zero = [r for r in rays if vdot(a, r) == 0]
            minus = [r for r in rays if vdot(a, r) < 0]
            new_rays = plus + zero
            if minus and plus:
                for rp, rm in itertools.product(plus, minus):
                    common = eq_rows + [
                        p for p in processed if vdot(p, rp) == 0 and vdot(p, rm) == 0
                    ]
                    if rank(common) == full_rank - 2:
                        combo = vsub(
                            vscale(vdot(a, rp), rm), vscale(vdot(a, rm), rp)
                        )
                        new_rays.append(primitivize(combo))
            seen = set()
            rays = []
            for r in new_rays:
                if r not in seen:
                    seen.add(r)
                    rays.append(r)
        processed.append(a)
        basis_rows.append(vec(a))
        full_rank = rank(basis_rows)
    return lines, rays


def h_to_v(c: HCone) -> VCone:
    """Exact generator description; lines are emitted as +-generator pairs."""
    lines, rays = double_description(c.equalities, c.inequalities, c.ambient_dim)
    gens = [vec(r) for r in rays]
    for l in lines:
        gens.append(vec(l))
        gens.append(vec(-x for x in l))
    gens.sort()
    return VCone(tuple(gens), c.ambient_dim)


def v_to_h(c: VCone) -> HCone:
    """Exact facet description via the dual cone's double description."""
    _check_dim(c.ambient_dim)
    lines, rays = double_description((), c.generators, c.ambient_dim)
    return HCone(
        tuple(sorted(vec(r) for r in rays)),
        tuple(sorted(vec(l) for l in lines)),
        c.ambient_dim,
    )


def cone_contains(c: VCone, x) -> tuple[bool, Vec | None]:
    """Exact membership x in cone(generators), with the nonnegative
    combination as certificate when the answer is yes."""
    x = vec(x)
    if is_zero_vec(x):
        return True, (Fraction(0),) * len(c.generators)
    if not c.generators:
        return False, None
    coeffs = lp.solve_nonneg(c.generators, x)
    if coeffs is None:
        return False, None
    return True, coeffs


def cone_dim(c: HCone | VCone) -> int:
    if isinstance(c, HCone):
        c = h_to_v(c)
    return rank(c.generators)


def lineality_dim(c: HCone | VCone) -> int:
    """Dimension of the largest subspace contained in the cone."""
    if isinstance(c, VCone):
        c = v_to_h(c)
    return c.ambient_dim - rank(list(c.inequalities) + list(c.equalities))


def is_pointed(c: HCone | VCone) -> bool:
    return lineality_dim(c) == 0


def cone_includes(outer: HCone | VCone, inner: HCone | VCone) -> bool:
    """Exact test that inner is a subset of outer."""
    if outer.ambient_dim != inner.ambient_dim:
        raise ValueError("ambient dimensions differ")
    gens = (inner if isinstance(inner, VCone) else h_to_v(inner)).generators
    if isinstance(outer, HCone):
        return all(outer.contains_point(g) for g in gens)
    return all(cone_contains(outer, g)[0] for g in gens)


def cones_equal(a: HCone | VCone, b: HCone | VCone) -> bool:
    return cone_includes(a, b) and cone_includes(b, a)


def dual_cone(c: HCone | VCone) -> VCone | HCone:
    """The dual {y : <y,x> >= 0 for all x in c}, in the dual representation."""
    if isinstance(c, VCone):
        return HCone.make(c.generators, (), c.ambient_dim)
    gens = list(c.inequalities)
    for e in c.equalities:
        gens.append(e)
        gens.append(vec(-x for x in e))
    return VCone.make(gens, c.ambient_dim)


def intersect_hcones(a: HCone, b: HCone) -> HCone:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimensions differ")
    return HCone(
        a.inequalities + b.inequalities, a.equalities + b.equalities, a.ambient_dim
    )


def solve_nonneg_in_span(target, gens) -> tuple[dict[int, Fraction], list[int]] | None:
    """Write target = sum b_i gens[i] with b_i > 0 on a linearly independent
    support, or None when target is outside cone(gens).

    The LP returns a basic feasible solution, whose positive support is
    automatically independent; the support indices are returned alongside.
    """
    gens = [vec(g) for g in gens]
    target = vec(target)
    if is_zero_vec(target):
        return {}, []
    if not gens:
        return None
    coeffs = lp.solve_nonneg(gens, target)
    if coeffs is None:
        return None
    support = [i for i, b in enumerate(coeffs) if b != 0]
    assert rank([gens[i] for i in support]) == len(support)
    return {i: coeffs[i] for i in support}, support


def strict_feasible(strict, weak, eqs, dim: int) -> Vec | None:
    """Witness x with <s,x> > 0, <w,x> >= 0, <e,x> = 0, else None."""
    witness, _ = lp.strict_feasible(strict, weak, eqs, dim)
    return witness


def hcone_covered_by(big: HCone, parts: list[HCone]) -> tuple[bool, list[HCone]]:
    """Exact test that big is contained in the union of parts.

    Sweeps the common refinement: big is cut along every bounding hyperplane
    of every part, and a full-dimensional leftover region witnesses a point
    of big interior to no part.  Returns (covered, uncovered_regions).
    """
    n = big.ambient_dim
    regions = [big]
    for part in parts:
        cuts = list(part.inequalities)
        for e in part.equalities:
            cuts.append(e)
            cuts.append(vec(-x for x in e))
        new_regions = []
        for reg in regions:
            prefix: list[Vec] = []
            for u in cuts:
                piece = HCone(
                    reg.inequalities + tuple(prefix) + (vec(-x for x in u),),
                    reg.equalities,
                    n,
                )
                if cone_dim(piece) == n:
                    new_regions.append(piece)
                prefix.append(u)
        regions = new_regions
    return not regions, regions


def pulling_triangulation(gens) -> list[tuple[int, ...]]:
    """Triangulate a pointed cone on its own generators.

    Recursively pulls at the first listed generator: the cone is the join of
    that generator with the facets not containing it.  Returns index tuples
    into gens, each a linearly independent set spanning a full-dimensional
    subcone; together they cover the cone with disjoint interiors.
    """
    gens = [vec(g) for g in gens]

    def recurse(indices: tuple[int, ...]) -> list[tuple[int, ...]]:
        sub = [gens[i] for i in indices]
        r = rank(sub)
        if len(indices) == r:
            return [tuple(sorted(indices))]
        hrep = v_to_h(VCone.make(sub))
        apex = indices[0]
        out = []
        for u in hrep.inequalities:
            tight = tuple(i for i in indices if vdot(u, gens[i]) == 0)
            if apex in tight or not tight:
                continue
            for simplex in recurse(tight):
                out.append(tuple(sorted((apex,) + simplex)))
        return out

    return recurse(tuple(range(len(gens))))
