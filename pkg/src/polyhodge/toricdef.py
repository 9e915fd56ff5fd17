"""Graded deformation spaces T^1, T^2 of the Gorenstein cone over a lattice polytope.

Degrees R live in M = Z^{n+1} and pair with the cone generators (a, 1).
For R <= 1 on the polytope, T^k(-R) is D^k of the face where R = 1.
Otherwise T^k(-R) is computed from the homological system V^R on the cone
fan, whose fiber at a face is cut out by the generators it contains:

    V^R_a = M          if <a, R> >= 2
            a^perp     if <a, R> == 1
            0          if <a, R> <= 0

and V^R_tau is the intersection over the generators of tau.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from . import exactla
from .complexes import assemble, cohomology_dims, cone_fan, vr
from .dinv import d_profile
from .polytope import Face, Polytope, empty_polytope

__all__ = [
    "NonIntegralVertices",
    "DegreeNotBounded",
    "DegreeUnsupported",
    "PreconditionViolated",
    "GorensteinCone",
    "gorenstein_cone",
    "smooth_in_codim2",
    "conifold_codim3",
    "restrict_to_face",
    "t_graded",
    "vr_homology",
    "vr_complex_exactness",
    "t2_local_contribution_conifold_check",
    "random_unbounded_degree",
    "sweep",
]


class NonIntegralVertices(ValueError):
    pass


class DegreeNotBounded(ValueError):
    pass


class DegreeUnsupported(ValueError):
    pass


class PreconditionViolated(ValueError):
    pass


@dataclass
class GorensteinCone:
    lattice_polytope: Polytope
    generators: list[tuple[int, ...]]  # (a, 1) per vertex, in vertex order
    rstar: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.rstar)

    def values(self, R: Sequence[int]) -> list[int]:
        """<a, R> for every generator."""
        if len(R) != self.rank:
            raise ValueError(f"degree must have {self.rank} entries")
        return [sum(x * r for x, r in zip(g, R)) for g in self.generators]

    def is_bounded(self, R: Sequence[int]) -> bool:
        return all(v <= 1 for v in self.values(R))

    def fan(self):
        key = "cone_fan"
        cache = self.lattice_polytope._cache
        if key not in cache:
            cache[key] = cone_fan(self.lattice_polytope)
        return cache[key]


def gorenstein_cone(p: Polytope) -> GorensteinCone:
    gens = []
    for v in p.vertices:
        if any(Fraction(x).denominator != 1 for x in v):
            raise NonIntegralVertices(f"vertex ({', '.join(map(str, v))}) is not a lattice point")
        gens.append(tuple(int(x) for x in v) + (1,))
    rstar = tuple([0] * p.dim) + (1,)
    return GorensteinCone(p, gens, rstar)


def _extends_to_basis(rows: Sequence[Sequence[int]]) -> bool:
    """True iff the integer rows are part of a Z-basis (all elementary divisors 1)."""
    d = exactla.smith_diagonal(rows)
    return len(d) == len(rows) and all(x == 1 for x in d)


def smooth_in_codim2(c: GorensteinCone) -> bool:
    p = c.lattice_polytope
    return all(
        _extends_to_basis([c.generators[i] for i in e.vertices]) for e in p.edges
    )


def _is_unimodular_triangle(gens) -> bool:
    return _extends_to_basis(gens)


def _is_unit_square(p: Polytope, f: Face, gens) -> bool:
    cyc = p.cyclic_order(f)
    v = [p.vertices[i] for i in cyc]
    if any(a + c != b + d for a, b, c, d in zip(v[0], v[1], v[2], v[3])):
        return False
    # edge vectors from v0 must span the face lattice: (a0,1),(a1,1),(a3,1) part of a basis
    return _extends_to_basis([gens[cyc[0]], gens[cyc[1]], gens[cyc[3]]])


def conifold_codim3(c: GorensteinCone) -> bool:
    """Every 2-face is a unimodular triangle or a unit square (and edges are unimodular)."""
    p = c.lattice_polytope
    if not smooth_in_codim2(c):
        return False
    for f in p.faces_of_dim(2):
        gens = c.generators
        if len(f.vertices) == 3:
            if not _is_unimodular_triangle([gens[i] for i in f.vertices]):
                return False
        elif len(f.vertices) == 4:
            if not _is_unit_square(p, f, gens):
                return False
        else:
            return False
    return True


def restrict_to_face(c: GorensteinCone, R: Sequence[int]) -> Polytope:
    """The face of the polytope where R = 1 (requires R <= 1 on every vertex)."""
    vals = c.values(R)
    if any(v >= 2 for v in vals):
        raise DegreeNotBounded(f"degree {tuple(R)} takes value >= 2 on a vertex")
    p = c.lattice_polytope
    verts = tuple(i for i, v in enumerate(vals) if v == 1)
    if not verts:
        return empty_polytope()
    if not p.is_face(verts):
        raise AssertionError("R = 1 locus is not a face; R is not <= 1 on the polytope")
    return p.face_polytope(verts)


def vr_homology(c: GorensteinCone, R: Sequence[int]) -> list[int]:
    """Homology dimensions H_0, ..., H_{n+1} of the V^R complex on the cone fan."""
    return cohomology_dims(assemble(c.fan(), vr(R)))


def t_graded(c: GorensteinCone, k: int, R: Sequence[int]) -> int:
    """dim T^k(-R) for k in {1, 2}."""
    if k not in (1, 2):
        raise ValueError("only k = 1, 2 are supported")
    if c.is_bounded(R):
        return d_profile(restrict_to_face(c, R))[k]
    if not smooth_in_codim2(c):
        raise DegreeUnsupported("the V^R route needs smoothness in codimension two")
    if k == 2 and not conifold_codim3(c):
        raise DegreeUnsupported("T^2 via V^R needs a conifold in codimension three")
    return vr_homology(c, R)[k]


def vr_complex_exactness(c: GorensteinCone, R: Sequence[int]) -> bool:
    if c.is_bounded(R):
        raise PreconditionViolated(f"degree {tuple(R)} is <= 1 on the polytope")
    return not any(vr_homology(c, R))


def _vr_fiber_dim(gens, R) -> int:
    vals = [sum(x * r for x, r in zip(g, R)) for g in gens]
    if any(v <= 0 for v in vals):
        return 0
    ones = [list(g) for g, v in zip(gens, vals) if v == 1]
    return len(gens[0]) - exactla.rank(ones) if ones else len(gens[0])


def t2_local_contribution_conifold_check(c: GorensteinCone, R: Sequence[int]) -> bool:
    """Local T^2 contributions of unit-square 3-cones vanish, case by case.

    For every square 2-face with all generator values positive, classify the
    values: all ones (fiber tau^perp), ones on one edge (fiber is the perp
    of those two generators), a single one (fiber a^perp), or none (all of M).
    In each case the intersection of the generator spans coincides with the
    span of the intersection, so the local contribution is zero; the check
    confirms that the V^R fiber has the dimension that case predicts.
    """
    if not conifold_codim3(c):
        raise PreconditionViolated("cone is not a conifold in codimension three")
    p = c.lattice_polytope
    N = c.rank
    vals = c.values(R)
    for f in p.faces_of_dim(2):
        if len(f.vertices) != 4:
            continue
        cyc = p.cyclic_order(f)
        fv = [vals[i] for i in cyc]
        gens = [c.generators[i] for i in cyc]
        dim = _vr_fiber_dim(gens, R)
        if any(v <= 0 for v in fv):
            expected = 0
        else:
            ones = [k for k, v in enumerate(fv) if v == 1]
            if len(ones) == 4:
                expected = N - 3
            elif len(ones) == 2 and (ones[1] - ones[0]) in (1, 3):
                expected = N - 2
            elif len(ones) == 1:
                expected = N - 1
            elif not ones:
                expected = N
            else:
                # R is affine on the square, so its values cannot be 1 exactly on
                # a diagonal or on three corners while staying >= 1 elsewhere
                raise AssertionError(f"impossible value pattern {fv} on a unit square")
        if dim != expected:
            return False
    return True


def random_unbounded_degree(c: GorensteinCone, rng: random.Random, lo: int = -3, hi: int = 3) -> tuple[int, ...]:
    """A random degree with entries in [lo, hi] taking a value >= 2 somewhere."""
    while True:
        R = tuple(rng.randint(lo, hi) for _ in range(c.rank))
        if not c.is_bounded(R):
            return R


def degree_box(rank: int, lo: int, hi: int) -> Iterable[tuple[int, ...]]:
    return product(range(lo, hi + 1), repeat=rank)


def sweep(c: GorensteinCone, lo: int, hi: int) -> dict[tuple[int, ...], tuple[object, object]]:
    """T^1 and T^2 dimensions over the degree box [lo, hi]^(n+1).

    Entries are "unsupported" where the V^R route does not apply.
    """
    out = {}
    for R in degree_box(c.rank, lo, hi):
        row = []
        for k in (1, 2):
            try:
                row.append(t_graded(c, k, R))
            except DegreeUnsupported:
                row.append("unsupported")
        out[R] = tuple(row)
    return out
