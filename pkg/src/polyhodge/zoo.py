"""Named test polytopes with exact rational coordinates."""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import permutations, product

from .polytope import Polytope, double_pyramid, from_vertices, prism

__all__ = [
    "simplex",
    "cube",
    "crosspoly",
    "mgon",
    "pyramid_mgon",
    "bipyramid_mgon",
    "icosahedron",
    "cuboctahedron",
    "dp_cuboctahedron",
    "prism_triangle",
    "cyclic",
    "unit_square_lattice",
    "unit_cube_lattice",
    "get",
    "names",
    "ZooError",
]


class ZooError(KeyError):
    pass


def simplex(n: int) -> Polytope:
    """conv(0, e_1, ..., e_n)."""
    pts = [[0] * n] + [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    return from_vertices(pts, name=f"simplex{n}")


def cube(n: int) -> Polytope:
    return from_vertices(product((-1, 1), repeat=n), name=f"cube{n}")


def crosspoly(n: int) -> Polytope:
    pts = []
    for j in range(n):
        for s in (1, -1):
            pts.append([s if i == j else 0 for i in range(n)])
    return from_vertices(pts, name=f"crosspoly{n}")


def mgon(m: int) -> Polytope:
    """Convex m-gon with vertices (i, i^2) on a parabola."""
    if m < 3:
        raise ValueError("an m-gon needs m >= 3")
    return from_vertices([(i, i * i) for i in range(m)], name=f"{m}gon")


def pyramid_mgon(m: int) -> Polytope:
    base = mgon(m)
    c = base.barycenter()
    pts = [(x - c[0], y - c[1], 0) for x, y in base.vertices] + [(0, 0, 1)]
    return from_vertices(pts, name=f"pyramid_{m}gon")


def bipyramid_mgon(m: int) -> Polytope:
    return double_pyramid(mgon(m), name=f"bipyramid_{m}gon")


def icosahedron() -> Polytope:
    """Cyclic permutations of (0, +-1, +-t) with t = 8/5, a rational stand-in for the golden ratio.

    Any t in (1, 2) gives the combinatorial icosahedron; 8/5 is close to the
    regular shape and keeps denominators small.
    """
    t = Fraction(8, 5)
    pts = []
    for a, b in product((1, -1), repeat=2):
        base = (0, a, b * t)
        for k in range(3):
            pts.append(base[k:] + base[:k])
    return from_vertices(pts, name="icosahedron")


def cuboctahedron() -> Polytope:
    pts = set()
    for a, b in product((1, -1), repeat=2):
        for perm in permutations((a, b, 0)):
            pts.add(perm)
    return from_vertices(sorted(pts), name="cuboctahedron")


def dp_cuboctahedron() -> Polytope:
    return double_pyramid(cuboctahedron(), name="dp_cuboctahedron")


def prism_triangle() -> Polytope:
    return prism(simplex(2), name="prism_triangle")


def cyclic(d: int, n: int) -> Polytope:
    """Cyclic polytope: n points on the moment curve t -> (t, t^2, ..., t^d)."""
    if n <= d:
        raise ValueError("cyclic(d, n) needs n > d")
    return from_vertices([[t**k for k in range(1, d + 1)] for t in range(n)], name=f"cyclic{d}_{n}")


def unit_square_lattice() -> Polytope:
    return from_vertices(product((0, 1), repeat=2), name="unit_square_lattice")


def unit_cube_lattice() -> Polytope:
    return from_vertices(product((0, 1), repeat=3), name="unit_cube_lattice")


_FIXED = {
    "icosahedron": icosahedron,
    "cuboctahedron": cuboctahedron,
    "dp_cuboctahedron": dp_cuboctahedron,
    "prism_triangle": prism_triangle,
    "unit_square_lattice": unit_square_lattice,
    "unit_cube_lattice": unit_cube_lattice,
    "square": lambda: cube(2),
    "octahedron": lambda: crosspoly(3),
    "pentagon": lambda: mgon(5),
    "triangle": lambda: simplex(2),
}

_PARAM = {
    "simplex": simplex,
    "cube": cube,
    "crosspoly": crosspoly,
    "mgon": mgon,
    "pyramid_mgon": pyramid_mgon,
    "bipyramid_mgon": bipyramid_mgon,
    "cyclic": cyclic,
}

_CALL = re.compile(r"^([a-z_]+)\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)$")


def names() -> list[str]:
    """A representative list of zoo names (parametric families shown at small sizes)."""
    fixed = sorted(_FIXED)
    fam = [f"simplex{n}" for n in (2, 3, 4)] + [f"cube{n}" for n in (2, 3, 4)]
    fam += [f"crosspoly{n}" for n in (2, 3, 4)]
    fam += [f"{m}gon" for m in range(3, 9)]
    fam += [f"pyramid_{m}gon" for m in range(3, 9)] + [f"bipyramid_{m}gon" for m in range(3, 9)]
    fam += ["cyclic4_8"]
    return fixed + fam


def get(name: str) -> Polytope:
    """Look up a polytope by name, e.g. "cube3", "7gon", "pyramid_5gon", "cyclic4_8", "bipyramid_mgon(5)"."""
    key = name.strip().lower()
    if key in _FIXED:
        return _FIXED[key]()
    call = _CALL.match(key)
    try:
        if call and call.group(1) in _PARAM:
            return _PARAM[call.group(1)](*(int(x) for x in call.group(2).split(",")))
        if key.startswith("pyramid_") and key.endswith("gon"):
            return pyramid_mgon(int(key[len("pyramid_") : -3]))
        if key.startswith("bipyramid_") and key.endswith("gon"):
            return bipyramid_mgon(int(key[len("bipyramid_") : -3]))
        if key.startswith("cyclic"):
            d, n = key[len("cyclic") :].split("_")
            return cyclic(int(d), int(n))
        if key.endswith("gon"):
            return mgon(int(key[:-3]))
        for prefix in ("simplex", "cube", "crosspoly"):
            if key.startswith(prefix):
                return _PARAM[prefix](int(key[len(prefix) :]))
    except ValueError as exc:
        raise ZooError(f"bad zoo name {name!r}: {exc}") from None
    raise ZooError(f"unknown zoo name {name!r}")
