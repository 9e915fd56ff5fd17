"""The invariants D^k of a polytope, computed several ways, and their identities."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import exactla
from .complexes import QUOTIENT, assemble, cohomology_dims, cone_fan, hodge_number, normal_fan
from .polytope import DimensionMismatch, Face, Polytope, double_pyramid, polar_dual

__all__ = [
    "DProfile",
    "MinkowskiSpace",
    "d_profile",
    "d_profile_dual_route",
    "minkowski_space",
    "minkowski_system",
    "closed_form_checks",
    "alternating_sum_check",
    "normal_fan_sequence_check",
    "double_pyramid_recursion_check",
    "simple_d1_formula",
    "Check",
]


@dataclass(frozen=True)
class DProfile:
    dims: tuple[int, ...]
    method: str = "direct"

    def __getitem__(self, k: int) -> int:
        # D^k vanishes outside 0..n
        return self.dims[k] if 0 <= k < len(self.dims) else 0

    def __eq__(self, other):
        if isinstance(other, DProfile):
            return self.dims == other.dims
        return tuple(other) == self.dims

    def __hash__(self):
        return hash(self.dims)

    def __iter__(self):
        return iter(self.dims)

    def __len__(self):
        return len(self.dims)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    lhs: object = None
    rhs: object = None
    informational: bool = False  # reported, but not part of the overall verdict

    def as_dict(self) -> dict:
        out = {"name": self.name, "pass": self.passed, "lhs": self.lhs, "rhs": self.rhs}
        if self.informational:
            out["informational"] = True
        return out


def d_profile(p: Polytope) -> DProfile:
    """(dim D^0, ..., dim D^n) from the quotient system on the cone fan.

    Cached on the polytope.
    """
    cached = p._cache.get("d_profile")
    if cached is not None:
        return cached
    if p.dim < 0:
        prof = DProfile((), "direct")
    else:
        h = cohomology_dims(assemble(cone_fan(p), QUOTIENT))
        prof = DProfile(tuple(h[: p.dim + 1]), "direct")
    p._cache["d_profile"] = prof
    return prof


def d_profile_dual_route(p: Polytope) -> DProfile:
    """dims[k] = dim D^{n-k} of the polar dual."""
    n = p.dim
    if n < 1:
        return DProfile(d_profile(p).dims, "polar-dual")
    dual = d_profile(polar_dual(p))
    return DProfile(tuple(dual[n - k] for k in range(n + 1)), "polar-dual")


@dataclass
class MinkowskiSpace:
    """Edge dilation vectors (t_d) closing up around every 2-face."""

    edge_index: list[Face]
    basis: list[list[Fraction]] = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, t) -> bool:
        return exactla.rank(self.basis + [list(t)]) == len(self.basis)


def minkowski_system(p: Polytope, within: Face | None = None) -> tuple[list[Face], exactla.RatMatrix]:
    """Closing conditions: for each 2-face f, sum of +-t_d * d over its boundary edges is 0.

    Edges are traversed in the cyclic order of the 2-face; each edge vector
    enters with the sign of the traversal direction.  One row per 2-face and
    coordinate.  With ``within`` only the edges and 2-faces of that face are
    used, in the coordinates of p.
    """
    edges = p.edges
    if within is not None:
        edges = [e for e in edges if e.vertex_set <= within.vertex_set]
    eidx = {e.vertices: i for i, e in enumerate(edges)}
    n = p.dim
    rows: list[dict[int, Fraction]] = []
    for f in p.faces_of_dim(2):
        if within is not None and not f.vertex_set <= within.vertex_set:
            continue
        cyc = p.cyclic_order(f)
        per_coord: list[dict[int, Fraction]] = [{} for _ in range(n)]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            # edge vector in its stored orientation (low index to high index)
            lo, hi = min(a, b), max(a, b)
            s = 1 if (a, b) == (lo, hi) else -1
            col = eidx[(lo, hi)]
            vlo, vhi = p.vertices[lo], p.vertices[hi]
            for c in range(n):
                x = (vhi[c] - vlo[c]) * s
                if x:
                    per_coord[c][col] = per_coord[c].get(col, 0) + x
        rows.extend(r for r in per_coord if r)
    m = exactla.RatMatrix(len(rows), len(edges))
    for i, r in enumerate(rows):
        for j, x in r.items():
            m[i, j] = x
    return edges, m


def minkowski_space(p: Polytope) -> MinkowskiSpace:
    if p.dim < 2:
        raise DimensionMismatch("minkowski_space needs dim >= 2")
    edges, m = minkowski_system(p)
    return MinkowskiSpace(edges, exactla.kernel_basis(m))


def simple_d1_formula(p: Polytope, include_empty: bool = True) -> int:
    """sum_j (-1)^{j+1} j f_j, starting at j = -1 or at j = 0."""
    f = p.f_vector()  # f[0] is f_{-1}
    start = -1 if include_empty else 0
    return sum((-1) ** (j + 1) * j * f[j + 1] for j in range(start, p.dim + 1))


def alternating_sum_check(p: Polytope) -> Check:
    """sum_k (-1)^{k+1} dim D^k = sum_k (-1)^{k+1} (n+1-k) f_{k-1}."""
    n = p.dim
    d = d_profile(p)
    f = p.f_vector()
    lhs = sum((-1) ** (k + 1) * d[k] for k in range(n + 1))
    rhs = sum((-1) ** (k + 1) * (n + 1 - k) * f[k] for k in range(n + 2))
    return Check("alternating_sum", lhs == rhs, lhs, rhs)


def closed_form_checks(p: Polytope) -> list[Check]:
    """Evaluate every closed formula that applies to p against the direct profile.

    Mismatches are reported, never raised.
    """
    n = p.dim
    d = d_profile(p)
    f = p.f_vector()
    f0 = f[1]
    out = [alternating_sum_check(p)]
    if n >= 1:
        out.append(Check("D0_Dn_vanish", d[0] == 0 and d[n] == 0, (d[0], d[n]), (0, 0)))
    if n == 2:
        out.append(Check("n2_D1", d[1] == f0 - 3, d[1], f0 - 3))
    if n == 3:
        out.append(Check("n3_D2_minus_D1", d[2] - d[1] == f[3] - f0, d[2] - d[1], f[3] - f0))
        if p.is_simplicial():
            out.append(Check("simplicial3_D2", d[2] == f0 - 4, d[2], f0 - 4))
    if n >= 2 and p.is_simple():
        high = tuple(d[k] for k in range(2, n + 1))
        out.append(Check("simple_high_vanish", not any(high), high, (0,) * len(high)))
        with_empty = simple_d1_formula(p, True)
        without = simple_d1_formula(p, False)
        out.append(Check("simple_D1", d[1] == with_empty, d[1], with_empty))
        # the variant that drops the j = -1 term is off by one; kept for comparison
        out.append(Check("simple_D1_without_f_minus1", d[1] == without, d[1], without, True))
    # all ell-faces simplices implies D^k = 0 for k < ell
    ell = _simplex_skeleton_level(p)
    if ell >= 2:
        low = tuple(d[k] for k in range(ell))
        out.append(Check(f"simplex_{ell}_faces_low_vanish", not any(low), low, (0,) * ell))
    return out


def _simplex_skeleton_level(p: Polytope) -> int:
    """Largest ell < n such that every ell-face is a simplex (0 if none)."""
    best = 0
    for ell in range(2, p.dim):
        if all(len(f.vertices) == ell + 1 for f in p.faces_of_dim(ell)):
            best = ell
        else:
            break
    return best


def normal_fan_sequence_check(p: Polytope) -> Check:
    """H^{1,1}(normal fan) = dim D^1 + 1 and H^{k,1} = dim D^k for 2 <= k <= n."""
    n = p.dim
    fan = normal_fan(p)
    d = d_profile(p)
    lhs = tuple(hodge_number(fan, k, 1) for k in range(1, n + 1))
    rhs = (d[1] + 1,) + tuple(d[k] for k in range(2, n + 1))
    return Check("normal_fan_sequence", lhs == rhs, lhs, rhs)


def double_pyramid_recursion_check(p: Polytope) -> Check:
    """D^k(dpyr p) = D^{k-1}(p) for k != n, and D^n(dpyr p) = D^{n-1}(p) + 1."""
    n = p.dim
    if n < 1:
        raise DimensionMismatch("double pyramid recursion needs dim >= 1")
    lhs = d_profile(double_pyramid(p)).dims
    base = d_profile(p)
    rhs = tuple(base[k - 1] + (1 if k == n else 0) for k in range(n + 2))
    return Check("double_pyramid_recursion", lhs == rhs, lhs, rhs)
