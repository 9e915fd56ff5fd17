"""Polytopes over Q: exact convex hull, face lattice, polarity, constructors.

Faces are stored as sorted tuples of vertex indices.  The hull is computed
with the double description method on the homogenized point cone, in integer
arithmetic, so the output is exact and depends only on the input order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Iterable, Sequence

from . import exactla

__all__ = [
    "EmptyInput",
    "DimensionMismatch",
    "Face",
    "FacePoset",
    "Polytope",
    "from_vertices",
    "empty_polytope",
    "polar_dual",
    "vertex_figure",
    "pyramid",
    "double_pyramid",
    "prism",
    "is_pyramid_3face",
    "parse_rational",
    "affine_image",
]


class EmptyInput(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


Vector = tuple[Fraction, ...]


def parse_rational(x) -> Fraction:
    """Integers, Fractions, "p/q" strings and decimal strings, converted exactly."""
    if isinstance(x, bool):
        raise ValueError(f"not a rational literal: {x!r}")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational literal: {x!r}") from exc
    raise ValueError(f"not a rational literal: {x!r}")


@dataclass(frozen=True, order=True)
class Face:
    dim: int
    vertices: tuple[int, ...]

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, v):
        return v in self.vertices

    def __repr__(self):
        return f"Face(dim={self.dim}, {list(self.vertices)})"


class FacePoset:
    """A graded poset of faces given by vertex labels, ordered by inclusion.

    Used for vertex figures, where only the combinatorics matters.  Cells have
    dimensions from -1 (the empty face) upward.
    """

    def __init__(self, faces: Iterable[tuple[frozenset, int]]):
        items = sorted({(d, tuple(sorted(s))) for s, d in faces})
        self.faces: list[Face] = [Face(d, s) for d, s in items]
        self.index = {f.vertex_set: i for i, f in enumerate(self.faces)}
        self._covers: list[list[int]] | None = None

    @property
    def dim(self) -> int:
        return max(f.dim for f in self.faces)

    def faces_of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    def facets_of(self, i: int) -> list[int]:
        """Indices of the faces covered by face i."""
        if self._covers is None:
            self._covers = _cover_relation(self.faces)
        return self._covers[i]

    def f_vector(self) -> tuple[int, ...]:
        lo = min(f.dim for f in self.faces)
        return tuple(len(self.faces_of_dim(k)) for k in range(lo, self.dim + 1))

    def incidence(self) -> dict[tuple[int, int], int]:
        """Incidence numbers [sigma : tau] in {+1, -1} for every cover tau < sigma.

        Built dimension by dimension: vertices get [v : empty] = 1; for a
        higher cell the signs on its facets are propagated through the
        diamonds (each codim-2 face lies in exactly two facets) so that the
        boundary of the boundary vanishes.
        """
        inc: dict[tuple[int, int], int] = {}
        for i in sorted(range(len(self.faces)), key=lambda i: self.faces[i].dim):
            f = self.faces[i]
            if f.dim < 0:
                continue
            facets = self.facets_of(i)
            if f.dim == 0:
                for t in facets:
                    inc[i, t] = 1
                continue
            coeff = {facets[0]: 1}
            queue = [facets[0]]
            ridge_owner: dict[int, list[int]] = {}
            for t in facets:
                for r in self.facets_of(t):
                    ridge_owner.setdefault(r, []).append(t)
            while queue:
                t = queue.pop()
                for r in self.facets_of(t):
                    owners = ridge_owner[r]
                    if len(owners) != 2:
                        raise ValueError("face poset is not a polytope lattice (diamond property fails)")
                    other = owners[0] if owners[1] == t else owners[1]
                    want = -coeff[t] * inc[t, r] * inc[other, r]
                    if other in coeff:
                        if coeff[other] != want:
                            raise ValueError("inconsistent orientation in face poset")
                    else:
                        coeff[other] = want
                        queue.append(other)
            if len(coeff) != len(facets):
                raise ValueError("facet graph of a face is disconnected")
            for t, c in coeff.items():
                inc[i, t] = c
        return inc


def _cover_relation(faces: Sequence[Face]) -> list[list[int]]:
    masks = []
    for f in faces:
        m = 0
        for v in f.vertices:
            m |= 1 << v
        masks.append(m)
    by_dim: dict[int, list[int]] = {}
    for i, f in enumerate(faces):
        by_dim.setdefault(f.dim, []).append(i)
    covers = []
    for i, f in enumerate(faces):
        mi = masks[i]
        covers.append(
            [j for j in by_dim.get(f.dim - 1, []) if masks[j] & mi == masks[j]]
        )
    return covers


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _primitive_int(vec: Sequence) -> tuple[int, ...]:
    den = 1
    for x in vec:
        den = _lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return tuple(ints)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _double_description(points: list[tuple[int, ...]]) -> list[tuple[tuple[int, ...], int]]:
    """Extreme rays of {h : <h, w> >= 0 for all rows w}, with their tight sets.

    ``points`` are integer rows spanning the whole space.  Returns
    (ray, bitmask of tight rows) pairs.
    """
    dim = len(points[0])
    # initial simplex: first maximal independent subset, in input order
    chosen: list[int] = []
    for i, w in enumerate(points):
        if exactla.rank([points[j] for j in chosen] + [w]) > len(chosen):
            chosen.append(i)
            if len(chosen) == dim:
                break
    if len(chosen) < dim:
        raise DimensionMismatch("points do not span the space")
    # ray j: w_{chosen k} . r_j = delta_jk, i.e. columns of the inverse
    rays: list[tuple[tuple[int, ...], int]] = []
    for j in range(dim):
        rhs_rows = [list(points[i]) + [1 if k == j else 0] for k, i in enumerate(chosen)]
        rows, piv = exactla.rref(rhs_rows)
        sol = [Fraction(0)] * dim
        for row, c in zip(rows, piv):
            sol[c] = row[dim]
        r = _primitive_int(sol)
        tight = 0
        for k, i in enumerate(chosen):
            if k != j:
                tight |= 1 << i
        rays.append((r, tight))
    done = set(chosen)
    for i, w in enumerate(points):
        if i in done:
            continue
        pos, neg, zero = [], [], []
        for r, t in rays:
            s = _dot(w, r)
            if s > 0:
                pos.append((r, t, s))
            elif s < 0:
                neg.append((r, t, s))
            else:
                zero.append((r, t | (1 << i)))
        new = [(r, t) for r, t, _ in pos] + zero
        tights = [t for _, t in rays]
        for rp, tp, sp in pos:
            for rn, tn, sn in neg:
                common = tp & tn
                if bin(common).count("1") < dim - 2:
                    continue
                # adjacent iff no third ray is tight on all of `common`
                if any(t & common == common and t != tp and t != tn for t in tights):
                    continue
                comb = [sp * b - sn * a for a, b in zip(rp, rn)]
                new.append((_primitive_int(comb), common | (1 << i)))
        rays = new
        done.add(i)
    return rays


class Polytope:
    """A full-dimensional convex polytope with exact rational vertices.

    Build instances with :func:`from_vertices` (or the constructors in this
    module); the initializer expects already-irredundant data.
    """

    def __init__(
        self,
        vertices: Sequence[Vector],
        facets: Sequence[tuple[tuple[int, ...], tuple[Fraction, ...]]],
        name: str | None = None,
        dim: int | None = None,
    ):
        self.vertices: tuple[Vector, ...] = tuple(tuple(v) for v in vertices)
        self.ambient_dim = dim if dim is not None else (len(self.vertices[0]) if self.vertices else -1)
        self.name = name
        # facet vertex tuple -> inequality (c, h) meaning c + <h, x> >= 0
        self.facet_inequalities: dict[tuple[int, ...], tuple[Fraction, ...]] = {
            tuple(sorted(f)): tuple(ineq) for f, ineq in facets
        }
        self.faces: tuple[Face, ...] = self._enumerate_faces()
        self.face_index = {f.vertex_set: i for i, f in enumerate(self.faces)}
        self._cache: dict = {}

    @property
    def dim(self) -> int:
        return self.ambient_dim

    def _enumerate_faces(self) -> tuple[Face, ...]:
        nv = len(self.vertices)
        if nv == 0:
            return (Face(-1, ()),)
        full = frozenset(range(nv))
        facet_sets = [frozenset(f) for f in self.facet_inequalities]
        found = {full}
        queue = [full]
        while queue:
            g = queue.pop()
            for f in facet_sets:
                h = g & f
                if h != g and h not in found:
                    found.add(h)
                    queue.append(h)
        found.add(frozenset())
        ordered = sorted(found, key=len)
        masks = {}
        dims: dict[frozenset, int] = {}
        for s in ordered:
            m = 0
            for v in s:
                m |= 1 << v
            masks[s] = m
        for s in ordered:
            if not s:
                dims[s] = -1
                continue
            ms = masks[s]
            best = -1
            for t, d in dims.items():
                if len(t) < len(s) and masks[t] & ms == masks[t] and d >= best:
                    best = d
            dims[s] = best + 1
        return tuple(sorted(Face(dims[s], tuple(sorted(s))) for s in found))

    # --- combinatorics --------------------------------------------------

    def faces_of_dim(self, k: int) -> list[Face]:
        return [f for f in self.faces if f.dim == k]

    @property
    def facets(self) -> list[Face]:
        return self.faces_of_dim(self.dim - 1)

    @property
    def edges(self) -> list[Face]:
        return self.faces_of_dim(1)

    def f_vector(self) -> tuple[int, ...]:
        """(f_{-1}, f_0, ..., f_n)."""
        return tuple(len(self.faces_of_dim(k)) for k in range(-1, self.dim + 1))

    def face(self, vertices: Iterable[int]) -> Face:
        return self.faces[self.face_index[frozenset(vertices)]]

    def is_face(self, vertices: Iterable[int]) -> bool:
        return frozenset(vertices) in self.face_index

    def facets_of(self, i: int) -> list[int]:
        """Indices of the faces covered by face i."""
        covers = self._cache.get("covers")
        if covers is None:
            covers = self._cache["covers"] = _cover_relation(self.faces)
        return covers[i]

    def poset(self) -> FacePoset:
        return FacePoset((f.vertex_set, f.dim) for f in self.faces)

    def subfaces(self, face: Face, k: int | None = None) -> list[Face]:
        s = face.vertex_set
        return [g for g in self.faces if g.vertex_set <= s and (k is None or g.dim == k)]

    def superfaces(self, face: Face, k: int | None = None) -> list[Face]:
        s = face.vertex_set
        return [g for g in self.faces if s <= g.vertex_set and (k is None or g.dim == k)]

    def is_simple(self) -> bool:
        n = self.dim
        return all(
            sum(1 for f in self.facets if v in f.vertices) == n for v in range(len(self.vertices))
        )

    def is_simplicial(self) -> bool:
        return all(len(f.vertices) == self.dim for f in self.facets)

    def barycenter(self) -> Vector:
        nv = len(self.vertices)
        return tuple(sum(v[i] for v in self.vertices) / nv for i in range(self.dim))

    def face_polytope(self, face: Face | Iterable[int]) -> "Polytope":
        """The face as a polytope in its own affine hull (cached)."""
        verts = face.vertices if isinstance(face, Face) else tuple(sorted(face))
        key = ("face", verts)
        if key not in self._cache:
            if not verts:
                self._cache[key] = empty_polytope()
            else:
                self._cache[key] = from_vertices([self.vertices[i] for i in verts])
        return self._cache[key]

    def cyclic_order(self, face: Face) -> list[int]:
        """Vertices of a 2-face in boundary order, starting from the smallest index."""
        if face.dim != 2:
            raise DimensionMismatch("cyclic order needs a 2-face")
        adj: dict[int, list[int]] = {v: [] for v in face.vertices}
        s = face.vertex_set
        for e in self.edges:
            if e.vertex_set <= s:
                a, b = e.vertices
                adj[a].append(b)
                adj[b].append(a)
        start = face.vertices[0]
        order = [start]
        prev, cur = None, start
        nxt = min(adj[start])
        while True:
            prev, cur = cur, nxt
            if cur == start:
                break
            order.append(cur)
            a, b = adj[cur]
            nxt = b if a == prev else a
        return order

    # --- serialization --------------------------------------------------

    def to_json(self) -> str:
        def lit(x: Fraction):
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return json.dumps({"name": self.name, "vertices": [[lit(x) for x in v] for v in self.vertices]})

    @staticmethod
    def from_json(text: str) -> "Polytope":
        data = json.loads(text)
        if not isinstance(data, dict) or "vertices" not in data:
            raise ValueError("polytope JSON needs a 'vertices' list")
        pts = [[parse_rational(x) for x in v] for v in data["vertices"]]
        return from_vertices(pts, name=data.get("name"))

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"Polytope({label}dim={self.dim}, f={self.f_vector()[1:]})"


def empty_polytope(name: str | None = "empty") -> Polytope:
    return Polytope([], [], name=name, dim=-1)


def _affine_reduce(points: list[Vector]) -> list[Vector]:
    """Re-express points in coordinates of their affine hull.

    The base point is the lexicographically smallest point; the hull's
    direction space gets the reduced echelon basis of the difference
    vectors, whose coordinates are the entries at the pivot columns.
    """
    base = min(points)
    diffs = [tuple(x - y for x, y in zip(p, base)) for p in points]
    _, piv = exactla.rref(diffs)
    if len(piv) == len(base):
        return points
    return [tuple(d[c] for c in piv) for d in diffs]


def from_vertices(points: Iterable[Sequence], name: str | None = None) -> Polytope:
    """Convex hull of a finite set of rational points."""
    pts = [tuple(parse_rational(x) for x in p) for p in points]
    if not pts:
        raise EmptyInput("from_vertices needs at least one point")
    width = len(pts[0])
    if any(len(p) != width for p in pts):
        raise DimensionMismatch("points have different lengths")
    uniq = list(dict.fromkeys(pts))
    uniq = _affine_reduce(uniq)
    d = len(uniq[0])
    if d == 0 or len(uniq) == 1:
        return Polytope([()], [], name=name, dim=0)
    hom = [_primitive_int((Fraction(1),) + p) for p in uniq]
    rays = _double_description(hom)
    facet_sets = []
    for r, tight in rays:
        idx = frozenset(i for i in range(len(uniq)) if tight >> i & 1)
        facet_sets.append((idx, r))
    # a point is a vertex iff the facets through it meet only in that point
    keep = []
    for i in range(len(uniq)):
        inter = frozenset(range(len(uniq)))
        for s, _ in facet_sets:
            if i in s:
                inter &= s
        if inter == {i}:
            keep.append(i)
    renum = {old: new for new, old in enumerate(keep)}
    facets = []
    for s, r in facet_sets:
        verts = tuple(sorted(renum[i] for i in s if i in renum))
        facets.append((verts, tuple(Fraction(x) for x in r)))
    return Polytope([uniq[i] for i in keep], facets, name=name, dim=d)


def affine_image(p: Polytope, matrix: Sequence[Sequence], shift: Sequence) -> Polytope:
    """Image of p under x -> matrix @ x + shift (vertex order preserved)."""
    pts = []
    for v in p.vertices:
        pts.append(tuple(sum(Fraction(a) * x for a, x in zip(row, v)) + Fraction(s) for row, s in zip(matrix, shift)))
    return from_vertices(pts, name=p.name)


def polar_dual(p: Polytope) -> Polytope:
    """Polar of p after moving its barycenter to the origin.

    Vertex i of the result corresponds to the i-th facet of p (in the
    sorted face order).
    """
    if p.dim < 1:
        raise DimensionMismatch("polar dual needs dim >= 1")
    c = p.barycenter()
    verts = []
    for f in p.facets:
        c0, *h = p.facet_inequalities[f.vertices]
        # c0 + <h, x> >= 0 on p, i.e. <-h, x - c> <= c0 + <h, c>
        beta = c0 + sum(a * b for a, b in zip(h, c))
        verts.append(tuple(-a / beta for a in h))
    name = f"dual({p.name})" if p.name else None
    return from_vertices(verts, name=name)


def vertex_figure(p: Polytope, v: int) -> FacePoset:
    """Face poset of the vertex figure at v: faces through v, dimension minus one."""
    if not 0 <= v < len(p.vertices):
        raise IndexError(f"no vertex {v}")
    return FacePoset((f.vertex_set, f.dim - 1) for f in p.faces if v in f.vertices)


def _lift(p: Polytope, height) -> list[Vector]:
    c = p.barycenter()
    return [tuple(x - y for x, y in zip(v, c)) + (Fraction(height),) for v in p.vertices]


def pyramid(p: Polytope, name: str | None = None) -> Polytope:
    """Pyramid over p with apex above the barycenter at height 1."""
    if p.dim < 0:
        raise DimensionMismatch("pyramid over the empty polytope")
    pts = _lift(p, 0) + [tuple([Fraction(0)] * p.dim) + (Fraction(1),)]
    return from_vertices(pts, name=name or (f"pyramid({p.name})" if p.name else None))


def double_pyramid(p: Polytope, name: str | None = None) -> Polytope:
    """Double pyramid: p centred at its barycenter, apexes at +-e_{n+1}."""
    if p.dim < 1:
        raise DimensionMismatch("double pyramid needs dim >= 1")
    zero = tuple([Fraction(0)] * p.dim)
    pts = _lift(p, 0) + [zero + (Fraction(1),), zero + (Fraction(-1),)]
    return from_vertices(pts, name=name or (f"dpyr({p.name})" if p.name else None))


def prism(p: Polytope, name: str | None = None) -> Polytope:
    """p x [0, 1]."""
    if p.dim < 0:
        raise DimensionMismatch("prism over the empty polytope")
    pts = [tuple(v) + (Fraction(h),) for h in (0, 1) for v in p.vertices]
    return from_vertices(pts, name=name or (f"prism({p.name})" if p.name else None))


def is_pyramid_3face(face: Face, p: Polytope) -> bool:
    if face.dim != 3:
        raise DimensionMismatch(f"expected a 3-face, got dim {face.dim}")
    verts = face.vertex_set
    return any(len(verts - g.vertex_set) == 1 for g in p.subfaces(face, 2))
