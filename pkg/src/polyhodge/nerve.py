"""The nerve of the covering of the ell-skeleton by ell-faces, and its E2 page.

E2^{p,q} = H^p(nerve, T^q) with T^q: tuple -> D^q(intersection of its faces).
Only q in {0, 1} is supported.  D^0 is one-dimensional on points and zero
otherwise; D^1(G) is realized as Minkowski dilation vectors of G modulo the
all-ones vector, so restriction to a smaller face is a concrete matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import exactla
from .dinv import d_profile, minkowski_system
from .polytope import FacePoset, Polytope, vertex_figure

__all__ = [
    "DimensionOutOfRange",
    "Nerve",
    "build_nerve",
    "e2_entry",
    "e2_page",
    "skeleton_reduced_cohomology",
    "lemma_check",
    "d2_rank_bound_check",
]


class DimensionOutOfRange(ValueError):
    pass


@dataclass
class Nerve:
    """Strict tuples of ell-faces with nonempty common intersection.

    ``simplices[p]`` maps each (p+1)-tuple of cover indices to the vertex set
    of the intersection.  The count can grow like 2^(faces through a vertex);
    ``max_len`` in :func:`build_nerve` caps the tuple length.
    """

    polytope: Polytope
    ell: int
    cover_faces: list[int]  # indices into polytope.faces
    simplices: dict[int, dict[tuple[int, ...], frozenset]] = field(repr=False)

    def intersection_face(self, tup: tuple[int, ...]):
        return self.polytope.face(self.simplices[len(tup) - 1][tup])

    def intersection_dim(self, tup: tuple[int, ...]) -> int:
        return self.intersection_face(tup).dim

    def count(self, p: int) -> int:
        return len(self.simplices.get(p, {}))


def build_nerve(p: Polytope, ell: int, max_len: int | None = None) -> Nerve:
    if not 2 <= ell <= p.dim - 1:
        raise DimensionOutOfRange(f"ell must be in 2..{p.dim - 1}, got {ell}")
    cover = [i for i, f in enumerate(p.faces) if f.dim == ell]
    sets = [p.faces[i].vertex_set for i in cover]
    simplices: dict[int, dict[tuple[int, ...], frozenset]] = {}

    def extend(tup, inter):
        simplices.setdefault(len(tup) - 1, {})[tup] = inter
        if max_len is not None and len(tup) >= max_len:
            return
        for j in range(tup[-1] + 1, len(cover)):
            nxt = inter & sets[j]
            if nxt:
                extend(tup + (j,), nxt)

    for i in range(len(cover)):
        extend((i,), sets[i])
    return Nerve(p, ell, cover, simplices)


def _d1_data(p: Polytope, face, cache: dict):
    """Data realizing D^1(face) = Minkowski space / <all-ones>, or None if it is zero.

    Kernel vectors have coordinates given by their entries at the free
    columns; the all-ones vector has all coordinates 1, so the differences
    c_i - c_0 (i >= 1) are coordinates on the quotient.
    """
    key = face.vertices
    if key not in cache:
        if face.dim < 2:
            cache[key] = None
        else:
            edges, m = minkowski_system(p, face)
            ker, free = exactla.kernel_basis(m, with_free=True)
            pos = {e.vertices: i for i, e in enumerate(edges)}
            cache[key] = (pos, ker, free) if len(ker) > 1 else None
    return cache[key]


def _d1_dim(data) -> int:
    return 0 if data is None else len(data[1]) - 1


def _d1_restrict(src, dst) -> list[list[Fraction]]:
    """Matrix of D^1(G) -> D^1(G'): restrict dilation vectors to the edges of G'."""
    spos, sker, _ = src
    dpos, dker, dfree = dst
    dedges = sorted(dpos, key=dpos.get)
    cols = []
    for lift in sker[1:]:
        vals = [lift[spos[e]] for e in dedges]
        coords = [vals[c] for c in dfree]
        cols.append([x - coords[0] for x in coords[1:]])
    return [[col[r] for col in cols] for r in range(len(dker) - 1)]


def _column_complex(nv: Nerve, q: int):
    p = nv.polytope
    cache: dict = {}

    def fiber(tup):
        inter = nv.simplices[len(tup) - 1][tup]
        f = p.face(inter)
        if q == 0:
            return 1 if f.dim == 0 else 0
        return _d1_dim(_d1_data(p, f, cache))

    top = max(nv.simplices) if nv.simplices else -1
    blocks = {}
    dims = []
    for k in range(top + 1):
        off = 0
        blk = {}
        for tup in nv.simplices[k]:
            size = fiber(tup)
            if size:
                blk[tup] = (off, size)
                off += size
        blocks[k] = blk
        dims.append(off)
    diffs = []
    for k in range(top):
        d = exactla.RatMatrix(dims[k + 1], dims[k])
        for tup, (roff, rsize) in blocks[k + 1].items():
            for j in range(len(tup)):
                face_tup = tup[:j] + tup[j + 1 :]
                if face_tup not in blocks[k]:
                    continue
                coff, csize = blocks[k][face_tup]
                sign = -1 if j % 2 else 1
                if q == 0:
                    d.add(roff, coff, sign)
                    continue
                src = _d1_data(p, nv.intersection_face(face_tup), cache)
                dst = _d1_data(p, nv.intersection_face(tup), cache)
                m = _d1_restrict(src, dst)
                for r in range(rsize):
                    for c in range(csize):
                        if m[r][c]:
                            d.add(roff + r, coff + c, sign * m[r][c])
        diffs.append(d)
    return dims, diffs


def e2_page(nv: Nerve, q: int) -> list[int]:
    """(E2^{0,q}, E2^{1,q}, ...) for q in {0, 1}."""
    if q not in (0, 1):
        raise ValueError("only q in {0, 1} is supported")
    dims, diffs = _column_complex(nv, q)
    for k in range(len(diffs) - 1):
        if not (diffs[k + 1] @ diffs[k]).is_zero():
            raise ArithmeticError("nerve differential does not square to zero")
    ranks = [exactla.rank(d) for d in diffs]
    out = []
    for k, n in enumerate(dims):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k >= 1 else 0
        out.append(n - r_out - r_in)
    return out


def e2_entry(nv: Nerve, p: int, q: int) -> int:
    page = e2_page(nv, q)
    return page[p] if 0 <= p < len(page) else 0


def skeleton_reduced_cohomology(figure: FacePoset, k: int, degree: int | None = None) -> int:
    """dim of reduced H^degree of the k-skeleton of the figure (degree defaults to k)."""
    degree = k if degree is None else degree
    inc = figure.incidence()
    cells = {j: [i for i, f in enumerate(figure.faces) if f.dim == j] for j in range(-1, k + 1)}
    pos = {j: {c: n for n, c in enumerate(cells[j])} for j in cells}

    def coboundary(j):  # C^j -> C^{j+1}
        m = exactla.RatMatrix(len(cells[j + 1]), len(cells[j]))
        for s in cells[j + 1]:
            for t in figure.facets_of(s):
                m[pos[j + 1][s], pos[j][t]] = inc[s, t]
        return m

    if degree < -1 or degree > k:
        return 0
    n = len(cells[degree])
    r_out = exactla.rank(coboundary(degree)) if degree < k else 0
    r_in = exactla.rank(coboundary(degree - 1)) if degree > -1 else 0
    return n - r_out - r_in


def lemma_check(p: Polytope, ell: int) -> dict:
    """E2^{j,0} = 0 for j != ell, and E2^{ell,0} = sum over vertices of the skeleton term."""
    nv = build_nerve(p, ell)
    page = e2_page(nv, 0)
    vsum = sum(
        skeleton_reduced_cohomology(vertex_figure(p, a), ell - 1) for a in range(len(p.vertices))
    )
    e_ell = page[ell] if ell < len(page) else 0
    off = {j: x for j, x in enumerate(page) if j != ell and x}
    return {
        "page": page,
        "vertex_sum": vsum,
        "bottom_row_vanishes": not off,
        "matches": e_ell == vsum,
        "pass": not off and e_ell == vsum,
    }


def d2_rank_bound_check(p: Polytope) -> bool:
    """dim D^2 <= E2^{1,1} (ell = 3), and dim D^2 equals the flag kernel when it applies."""
    from .d2sys import HypothesisViolated, build_flag_system, check_hypothesis

    threes = p.faces_of_dim(3)
    if any(d_profile(p.face_polytope(f))[2] for f in threes):
        raise HypothesisViolated("some 3-face has nonzero D^2")
    d2 = d_profile(p)[2]
    nv = build_nerve(p, 3)
    e11 = e2_entry(nv, 1, 1)
    ok = d2 <= e11
    if p.dim >= 4 and not check_hypothesis(p):
        ok = ok and build_flag_system(p, check=False).kernel_dim() == d2
    return ok
