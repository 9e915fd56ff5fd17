"""Oriented fans and the cochain complexes of (co)homological systems on them.

A fan here is a finite list of cones closed under faces, together with the
cover relation and an incidence sign for each cover pair.  Each cone carries
a reduced echelon basis of its linear span; that basis fixes its orientation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exactla
from .exactla import RatMatrix
from .polytope import Polytope, _primitive_int

__all__ = [
    "Cone",
    "OrientedFan",
    "SystemSpec",
    "SystemComplex",
    "UnsupportedSpec",
    "NotAComplex",
    "SPAN",
    "QUOTIENT",
    "CONSTANT",
    "PERP",
    "exterior",
    "vr",
    "cone_fan",
    "normal_fan",
    "boundary_fan",
    "subfan",
    "assemble",
    "cohomology_dims",
    "hodge_number",
]


class UnsupportedSpec(ValueError):
    pass


class NotAComplex(ArithmeticError):
    pass


@dataclass
class Cone:
    key: tuple  # label, e.g. the vertex tuple of the face it comes from
    generators: tuple[tuple[int, ...], ...]
    dim: int
    basis: list[list[Fraction]] = field(repr=False)
    pivots: list[int] = field(repr=False)

    @classmethod
    def spanned_by(cls, key, generators, ambient: int) -> "Cone":
        gens = tuple(tuple(g) for g in generators)
        basis, piv = exactla.rref(gens) if gens else ([], [])
        return cls(key, gens, len(piv), basis, piv)

    def coords(self, v: Sequence) -> list[Fraction]:
        """Coordinates of a vector of span(cone) in the echelon basis."""
        return [Fraction(v[c]) for c in self.pivots]


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class OrientedFan:
    """Cones, their cover relation, and incidence signs eps(tau, sigma)."""

    def __init__(self, ambient_dim: int, cones: list[Cone], covers: list[list[int]]):
        self.ambient_dim = ambient_dim
        self.cones = cones
        self.covers = covers  # covers[s] = indices of the facets of cone s
        self.index = {c.key: i for i, c in enumerate(cones)}
        self.signs: dict[tuple[int, int], int] = {}
        for s, facets in enumerate(covers):
            for t in facets:
                self.signs[t, s] = self._incidence(cones[t], cones[s])

    @staticmethod
    def _incidence(tau: Cone, sigma: Cone) -> int:
        # any generator of sigma outside span(tau) points into sigma
        rows = [list(b) for b in tau.basis]
        for g in sigma.generators:
            if exactla.rank(rows + [list(g)]) > len(rows):
                rows.append(list(g))
                break
        else:
            raise ValueError("cone is not a proper face")
        m = [[Fraction(r[c]) for c in sigma.pivots] for r in rows]
        s = _sign(exactla.det(m))
        if s == 0:
            raise ValueError("degenerate incidence")
        return s

    def eps(self, t: int, s: int) -> int:
        return self.signs.get((t, s), 0)

    def cones_of_dim(self, k: int) -> list[int]:
        return [i for i, c in enumerate(self.cones) if c.dim == k]

    def counts(self) -> tuple[int, ...]:
        return tuple(len(self.cones_of_dim(k)) for k in range(self.ambient_dim + 1))

    def check_signs(self) -> bool:
        """Sum over intermediate cones of eps * eps vanishes for every two-step pair."""
        for s, facets in enumerate(self.covers):
            acc: dict[int, int] = {}
            for t in facets:
                for r in self.covers[t]:
                    acc[r] = acc.get(r, 0) + self.signs[r, t] * self.signs[t, s]
            if any(acc.values()):
                return False
        return True

    def __repr__(self):
        return f"OrientedFan(ambient_dim={self.ambient_dim}, counts={self.counts()})"


def _fan_from_cones(ambient: int, cones: list[Cone]) -> OrientedFan:
    # sort by (dim, key) for determinism
    order = sorted(range(len(cones)), key=lambda i: (cones[i].dim, cones[i].key))
    cones = [cones[i] for i in order]
    gensets = [set(c.generators) for c in cones]
    covers = []
    for i, c in enumerate(cones):
        covers.append(
            [j for j, d in enumerate(cones) if d.dim == c.dim - 1 and gensets[j] <= gensets[i]]
        )
    return OrientedFan(ambient, cones, covers)


def cone_fan(p: Polytope) -> OrientedFan:
    """Cones over the faces of p, generated by (x, 1); the empty face gives the zero cone."""
    n = p.dim
    gens = [_primitive_int(tuple(v) + (Fraction(1),)) for v in p.vertices]
    cones = [
        Cone.spanned_by(f.vertices, [gens[i] for i in f.vertices], n + 1) for f in p.faces
    ]
    return _fan_from_cones(n + 1, cones)


def _facet_normals(p: Polytope) -> dict[tuple[int, ...], tuple[int, ...]]:
    """Primitive integral inner normals, keyed by facet vertex tuple."""
    out = {}
    for f in p.facets:
        c0, *h = p.facet_inequalities[f.vertices]
        out[f.vertices] = _primitive_int(h)
    return out


def normal_fan(p: Polytope) -> OrientedFan:
    """Inner normal fan: face F gives the cone spanned by normals of facets containing F."""
    normals = _facet_normals(p)
    cones = []
    for f in p.faces:
        if f.dim < 0:
            continue
        s = f.vertex_set
        gens = [normals[g.vertices] for g in p.facets if s <= g.vertex_set]
        cones.append(Cone.spanned_by(f.vertices, gens, p.dim))
    return _fan_from_cones(p.dim, cones)


def subfan(fan: OrientedFan, keep) -> OrientedFan:
    """Sub-fan on the cones whose index satisfies ``keep`` (must be closed under faces)."""
    idx = [i for i in range(len(fan.cones)) if keep(i)]
    pos = {old: new for new, old in enumerate(idx)}
    covers = [[pos[t] for t in fan.covers[i]] for i in idx]
    for i, cov in zip(idx, covers):
        if len(cov) != len(fan.covers[i]):
            raise ValueError("subfan is not closed under faces")
    sub = OrientedFan.__new__(OrientedFan)
    sub.ambient_dim = fan.ambient_dim
    sub.cones = [fan.cones[i] for i in idx]
    sub.covers = covers
    sub.index = {c.key: i for i, c in enumerate(sub.cones)}
    sub.signs = {(pos[t], pos[s]): v for (t, s), v in fan.signs.items() if t in pos and s in pos}
    return sub


def boundary_fan(fan: OrientedFan) -> OrientedFan:
    """Drop the cones of full ambient dimension."""
    return subfan(fan, lambda i: fan.cones[i].dim < fan.ambient_dim)


# --- system specifications ---------------------------------------------------


@dataclass(frozen=True)
class SystemSpec:
    kind: str
    q: int | None = None
    degree: tuple[int, ...] | None = None

    @property
    def homological(self) -> bool:
        return self.kind in ("perp", "vr")


SPAN = SystemSpec("span")
QUOTIENT = SystemSpec("quotient")
CONSTANT = SystemSpec("constant")
PERP = SystemSpec("perp")


def exterior(q: int) -> SystemSpec:
    return SystemSpec("exterior", q=q)


def vr(degree: Sequence[int]) -> SystemSpec:
    return SystemSpec("vr", degree=tuple(int(x) for x in degree))


@dataclass
class SystemComplex:
    """Cochain complex 0 -> C^0 -> ... -> C^D -> 0.

    ``differentials[k]`` is the matrix of d_k: C^k -> C^{k+1}.  Homological
    systems are stored through their duals, so the matrices are transposed
    boundary maps and the cohomology dimensions equal the homology ones.
    ``blocks[k]`` lists (cone index, offset, size) for the summands of C^k.
    """

    dims: list[int]
    differentials: list[RatMatrix]
    blocks: list[list[tuple[int, int, int]]]
    homological: bool = False

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * d for k, d in enumerate(self.dims))

    def is_complex(self) -> bool:
        for k in range(len(self.differentials) - 1):
            if not (self.differentials[k + 1] @ self.differentials[k]).is_zero():
                return False
        return True


def _quotient_basis(cone: Cone, D: int) -> list[int]:
    """Indices j of the unit vectors e_j spanning a complement of span(cone)."""
    piv = set(cone.pivots)
    return [j for j in range(D) if j not in piv]


def _quotient_map(tau: Cone, sigma: Cone, D: int) -> list[list[Fraction]]:
    """Matrix (rows: sigma complement, cols: tau complement) of V/span tau -> V/span sigma."""
    src = _quotient_basis(tau, D)
    dst = _quotient_basis(sigma, D)
    dpos = {j: i for i, j in enumerate(dst)}
    prow = {c: r for r, c in zip(sigma.basis, sigma.pivots)}
    m = [[Fraction(0)] * len(src) for _ in dst]
    for col, j in enumerate(src):
        if j in dpos:
            m[dpos[j]][col] = Fraction(1)
        else:
            r = prow[j]
            for i in dst:
                if r[i]:
                    m[dpos[i]][col] = -r[i]
    return m


def _minor_map(m: list[list[Fraction]], q: int, nsrc: int, ndst: int):
    rows_sets = list(combinations(range(ndst), q))
    cols_sets = list(combinations(range(nsrc), q))
    out = [[Fraction(0)] * len(cols_sets) for _ in rows_sets]
    for a, rs in enumerate(rows_sets):
        for b, cs in enumerate(cols_sets):
            out[a][b] = exactla.det([[m[r][c] for c in cs] for r in rs]) if q else Fraction(1)
    return out


def _perp_basis(gens: Sequence[Sequence[int]], D: int) -> tuple[list[list[Fraction]], list[int]]:
    if not gens:
        return [[Fraction(int(i == j)) for j in range(D)] for i in range(D)], list(range(D))
    ker = exactla.kernel_basis([list(g) for g in gens])
    if not ker:
        return [], []
    return exactla.rref(ker)


def _vr_basis(cone: Cone, degree: Sequence[int], D: int):
    vals = [sum(a * r for a, r in zip(g, degree)) for g in cone.generators]
    if any(v <= 0 for v in vals):
        return [], []
    ones = [g for g, v in zip(cone.generators, vals) if v == 1]
    return _perp_basis(ones, D)


def _fiber_dim_and_map(fan: OrientedFan, spec: SystemSpec):
    """Return (fiber_dim(i), map(t, s)) for the cohomological (dual) system."""
    D = fan.ambient_dim
    cones = fan.cones
    kind = spec.kind
    if kind == "constant":
        return (lambda i: 1), (lambda t, s: [[Fraction(1)]])
    if kind == "span":
        def smap(t, s):
            # columns: basis vectors of span tau, written in sigma's basis
            cols = [cones[s].coords(b) for b in cones[t].basis]
            return [[cols[c][r] for c in range(len(cols))] for r in range(cones[s].dim)]
        return (lambda i: cones[i].dim), smap
    if kind == "quotient":
        return (lambda i: D - cones[i].dim), (lambda t, s: _quotient_map(cones[t], cones[s], D))
    if kind == "exterior":
        q = spec.q
        if q is None or not 0 <= q <= D:
            raise UnsupportedSpec(f"exterior power q={q} out of range 0..{D}")
        from math import comb

        def emap(t, s):
            m = _quotient_map(cones[t], cones[s], D)
            return _minor_map(m, q, D - cones[t].dim, D - cones[s].dim)
        return (lambda i: comb(D - cones[i].dim, q)), emap
    if kind in ("perp", "vr"):
        if kind == "vr":
            if spec.degree is None or len(spec.degree) != D:
                raise UnsupportedSpec("vr needs a degree of ambient length")
            bases = [_vr_basis(c, spec.degree, D) for c in cones]
        else:
            bases = [_perp_basis(c.generators, D) for c in cones]

        def hmap(t, s):
            # inclusion W_s -> W_t, then transpose for the dual system
            bt, pt = bases[t]
            bs, _ = bases[s]
            incl = [[w[c] for w in bs] for c in pt]  # rows: W_t coords, cols: W_s basis
            return [[incl[r][c] for r in range(len(bt))] for c in range(len(bs))]
        return (lambda i: len(bases[i][0])), hmap
    raise UnsupportedSpec(f"unknown system kind {kind!r}")


def assemble(fan: OrientedFan, spec: SystemSpec) -> SystemComplex:
    D = fan.ambient_dim
    fdim, fmap = _fiber_dim_and_map(fan, spec)
    blocks: list[list[tuple[int, int, int]]] = []
    offset_of: dict[int, int] = {}
    dims = []
    for k in range(D + 1):
        off = 0
        blk = []
        for i in fan.cones_of_dim(k):
            size = fdim(i)
            blk.append((i, off, size))
            offset_of[i] = off
            off += size
        blocks.append(blk)
        dims.append(off)
    diffs = []
    for k in range(D):
        d = RatMatrix(dims[k + 1], dims[k])
        for s, soff, ssize in blocks[k + 1]:
            if not ssize:
                continue
            for t in fan.covers[s]:
                tsize = fdim(t)
                if not tsize:
                    continue
                e = fan.signs[t, s]
                toff = offset_of[t]
                m = fmap(t, s)
                for r in range(ssize):
                    for c in range(tsize):
                        if m[r][c]:
                            d.add(soff + r, toff + c, e * m[r][c])
        diffs.append(d)
    return SystemComplex(dims, diffs, blocks, spec.homological)


def cohomology_dims(c: SystemComplex) -> list[int]:
    if not c.is_complex():
        raise NotAComplex("d o d != 0; orientation signs are inconsistent")
    ranks = [exactla.rank(d) for d in c.differentials]
    out = []
    for k, n in enumerate(c.dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k >= 1 else 0
        out.append(n - r_out - r_in)
    return out


def hodge_number(fan: OrientedFan, p: int, q: int) -> int:
    """dim H^{D-p}(fan, Lambda^q V/span)."""
    D = fan.ambient_dim
    if not (0 <= p <= D and 0 <= q <= D):
        raise UnsupportedSpec(f"(p, q) = ({p}, {q}) out of range for D = {D}")
    return cohomology_dims(assemble(fan, exterior(q)))[D - p]
