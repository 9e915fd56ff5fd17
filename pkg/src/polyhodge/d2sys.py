"""D^2 as the kernel of an explicit flag system, plus the cleaning certificate.

Variables are s(a, Pi, eps) for flags vertex a < 2-face eps < 3-face Pi.
Three families of equations:

family1: for each vertex a and 4-face F containing it, summing over the
    2-faces eps with a in eps <= F:  s(a, Pi+, eps) - s(a, Pi-, eps) = 0,
    where Pi+ and Pi- are the two 3-faces between eps and F;
family2: for each flag eps < Pi:  sum over a in eps of s(a, Pi, eps) * (a, 1) = 0;
family3: for each 2-face eps and a in eps:  s(a, Pi(eps), eps) = 0 for a
    fixed reference 3-face Pi(eps).

The kernel has dimension dim D^2 whenever every 3-face has D^1 = D^2 = 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from . import exactla
from .complexes import cone_fan
from .dinv import d_profile
from .polytope import Face, Polytope, is_pyramid_3face

__all__ = [
    "HypothesisViolated",
    "NotApplicable",
    "FlagSystem",
    "CleanState",
    "VanishesByTheorem",
    "check_hypothesis",
    "build_flag_system",
    "d2_via_flags",
    "sign_element",
    "sign_element_check",
    "clean",
    "certify_vanishing",
]


class HypothesisViolated(ValueError):
    pass


@dataclass(frozen=True)
class NotApplicable:
    """Verdict (and exception payload) when a route or theorem does not apply."""

    reason: str

    def __str__(self):
        return f"not applicable: {self.reason}"


class NotApplicableError(ValueError):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.verdict = NotApplicable(reason)


@dataclass(frozen=True)
class VanishesByTheorem:
    def __str__(self):
        return "D^2 vanishes by the pyramid cleaning theorem"


Flag = tuple[int, int, int]  # (vertex, 2-face index, 3-face index) into p.faces


@dataclass
class FlagSystem:
    variables: list[Flag]
    reference_choice: dict[int, int]
    between_pairs: dict[tuple[int, int], tuple[int, int]]
    equations: exactla.RatMatrix = field(repr=False)
    family_rows: dict[str, int] = field(default_factory=dict)

    @property
    def var_index(self) -> dict[Flag, int]:
        return {v: i for i, v in enumerate(self.variables)}

    def kernel(self) -> list[list[Fraction]]:
        return exactla.kernel_basis(self.equations)

    def kernel_dim(self) -> int:
        return len(self.variables) - exactla.rank(self.equations)

    def satisfies(self, vec) -> bool:
        return all(x == 0 for x in self.equations @ list(vec))


def check_hypothesis(p: Polytope) -> list[Face]:
    """3-faces with nonzero D^1 or D^2 (empty list means the hypothesis holds)."""
    bad = []
    for f in p.faces_of_dim(3):
        d = d_profile(p.face_polytope(f))
        if d[1] or d[2]:
            bad.append(f)
    return bad


def build_flag_system(p: Polytope, check: bool = True, pair_order=None) -> FlagSystem:
    """Assemble the three equation families.

    ``pair_order(eps, F, (P, Q))`` may override the (plus, minus) ordering of
    the two 3-faces between eps and F; by default it comes from the signs
    eps(cone eps, cone P) * eps(cone P, cone F) of the cone fan.
    """
    if p.dim < 4:
        raise NotApplicableError(f"flag system needs dim >= 4, got {p.dim}")
    if check:
        bad = check_hypothesis(p)
        if bad:
            raise HypothesisViolated(
                f"3-faces with nonzero D^1 or D^2: {[list(f.vertices) for f in bad]}"
            )
    faces = p.faces
    two = [i for i, f in enumerate(faces) if f.dim == 2]
    three = [i for i, f in enumerate(faces) if f.dim == 3]
    four = [i for i, f in enumerate(faces) if f.dim == 4]
    sets = [f.vertex_set for f in faces]
    above3 = {e: [P for P in three if sets[e] <= sets[P]] for e in two}

    variables: list[Flag] = []
    for e in two:
        for P in above3[e]:
            for a in faces[e].vertices:
                variables.append((a, e, P))
    vidx = {v: i for i, v in enumerate(variables)}

    # orientation of the pair of 3-faces between eps and F, from the cone fan signs
    fan = cone_fan(p)
    cidx = {c.key: i for i, c in enumerate(fan.cones)}

    def chain_sign(e, P, F):
        ce, cP, cF = cidx[faces[e].vertices], cidx[faces[P].vertices], cidx[faces[F].vertices]
        return fan.signs[ce, cP] * fan.signs[cP, cF]

    between: dict[tuple[int, int], tuple[int, int]] = {}
    for e in two:
        for F in four:
            if not sets[e] <= sets[F]:
                continue
            mid = [P for P in above3[e] if sets[P] <= sets[F]]
            if len(mid) != 2:
                raise ValueError("diamond property fails between a 2-face and a 4-face")
            if pair_order is not None:
                between[e, F] = tuple(pair_order(e, F, tuple(mid)))
            else:
                s0 = chain_sign(e, mid[0], F)
                between[e, F] = (mid[0], mid[1]) if s0 > 0 else (mid[1], mid[0])

    reference = {e: min(above3[e], key=lambda P: faces[P].vertices) for e in two}

    rows: list[dict[int, Fraction]] = []
    counts = {"family1": 0, "family2": 0, "family3": 0}
    for a in range(len(p.vertices)):
        for F in four:
            if a not in sets[F]:
                continue
            row: dict[int, Fraction] = {}
            for e in two:
                if a in sets[e] and sets[e] <= sets[F]:
                    plus, minus = between[e, F]
                    for P, c in ((plus, 1), (minus, -1)):
                        j = vidx[a, e, P]
                        row[j] = row.get(j, 0) + c
            row = {j: Fraction(c) for j, c in row.items() if c}
            if row:
                rows.append(row)
            counts["family1"] += 1
    n = p.dim
    for e in two:
        for P in above3[e]:
            for c in range(n + 1):
                row = {}
                for a in faces[e].vertices:
                    x = p.vertices[a][c] if c < n else Fraction(1)
                    if x:
                        row[vidx[a, e, P]] = Fraction(x)
                if row:
                    rows.append(row)
                counts["family2"] += 1
    for e in two:
        for a in faces[e].vertices:
            rows.append({vidx[a, e, reference[e]]: Fraction(1)})
            counts["family3"] += 1
    m = exactla.RatMatrix(len(rows), len(variables))
    for i, r in enumerate(rows):
        for j, x in r.items():
            m[i, j] = x
    return FlagSystem(variables, reference, between, m, counts)


def d2_via_flags(p: Polytope) -> int:
    """Kernel dimension of the flag system; for dim <= 3 falls back to the direct profile."""
    if p.dim < 4:
        return d_profile(p)[2]
    return build_flag_system(p).kernel_dim()


def sign_element(p: Polytope, system: FlagSystem | None = None, max_quads: int = 20):
    """Alternating +-1 on the vertices of each quadrilateral, on its non-reference 3-faces.

    Tries every global sign per quadrilateral (up to ``max_quads`` of them)
    and returns the first assignment lying in the kernel, or None.
    """
    system = system or build_flag_system(p)
    faces = p.faces
    quads = [i for i, f in enumerate(faces) if f.dim == 2 and len(f.vertices) == 4]
    if not quads:
        return [Fraction(0)] * len(system.variables)
    if len(quads) > max_quads:
        raise ValueError(f"too many quadrilaterals for brute force ({len(quads)})")
    vidx = system.var_index
    base = {}
    for q in quads:
        cyc = p.cyclic_order(faces[q])
        alt = {a: (-1) ** k for k, a in enumerate(cyc)}
        base[q] = alt
    for signs in product((1, -1), repeat=len(quads) - 1):
        vec = [Fraction(0)] * len(system.variables)
        for q, g in zip(quads, (1,) + signs):
            for (a, e, P), j in vidx.items():
                if e == q and P != system.reference_choice[q]:
                    vec[j] = Fraction(g * base[q][a])
        if system.satisfies(vec):
            return vec
    return None


def sign_element_check(p: Polytope) -> bool:
    """True iff some globally signed alternating assignment solves the flag system."""
    system = build_flag_system(p)
    vec = sign_element(p, system)
    return vec is not None


# --- cleaning ------------------------------------------------------------------


@dataclass
class CleanState:
    clean_vertices: frozenset[int]
    clean_2faces: frozenset[tuple[int, ...]]
    history: list[tuple[str, object]]
    all_vertices: int = 0
    all_2faces: int = 0

    @property
    def complete(self) -> bool:
        return len(self.clean_vertices) == self.all_vertices and len(self.clean_2faces) == self.all_2faces


def clean(p: Polytope, rng: random.Random | None = None) -> CleanState:
    """Least fixpoint of the two cleaning rules.

    - an m-gon is clean once at least m - 3 of its vertices are;
    - a vertex is clean once it lies in at most n - 3 unclean 2-faces.

    With ``rng`` the worklist is processed in a random order; the result
    does not depend on it because both rules are monotone.
    """
    n = p.dim
    if n < 3:
        raise ValueError("cleaning needs dim >= 3")
    twofaces = [f.vertices for f in p.faces_of_dim(2)]
    nv = len(p.vertices)
    faces_at = {v: [f for f in twofaces if v in f] for v in range(nv)}
    cv: set[int] = set()
    cf: set[tuple[int, ...]] = set()
    history: list[tuple[str, object]] = []
    work: list[tuple[str, object]] = [("face", f) for f in twofaces] + [("vertex", v) for v in range(nv)]
    if rng is not None:
        rng.shuffle(work)
    pending = set(work)
    while work:
        item = work.pop(rng.randrange(len(work))) if rng is not None else work.pop(0)
        pending.discard(item)
        kind, x = item
        if kind == "face":
            if x in cf:
                continue
            if sum(1 for a in x if a in cv) >= len(x) - 3:
                cf.add(x)
                history.append(item)
                for a in x:
                    if a not in cv and ("vertex", a) not in pending:
                        work.append(("vertex", a))
                        pending.add(("vertex", a))
        else:
            if x in cv:
                continue
            if sum(1 for f in faces_at[x] if f not in cf) <= n - 3:
                cv.add(x)
                history.append(item)
                for f in faces_at[x]:
                    if f not in cf and ("face", f) not in pending:
                        work.append(("face", f))
                        pending.add(("face", f))
    return CleanState(frozenset(cv), frozenset(cf), history, nv, len(twofaces))


def certify_vanishing(p: Polytope):
    """VanishesByTheorem if all 3-faces are pyramids and cleaning finishes, else NotApplicable."""
    if p.dim < 3:
        return NotApplicable(f"dimension {p.dim} < 3")
    bad = [f for f in p.faces_of_dim(3) if not is_pyramid_3face(f, p)]
    if bad:
        return NotApplicable(f"{len(bad)} three-dimensional faces are not pyramids")
    st = clean(p)
    if not st.complete:
        return NotApplicable(
            f"cleaning stalls: {st.all_vertices - len(st.clean_vertices)} vertices and "
            f"{st.all_2faces - len(st.clean_2faces)} two-dimensional faces stay unclean"
        )
    return VanishesByTheorem()
