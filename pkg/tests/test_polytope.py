import random
from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_affine
from polyhodge import zoo
from polyhodge.polytope import (
    DimensionMismatch,
    EmptyInput,
    Polytope,
    affine_image,
    double_pyramid,
    empty_polytope,
    from_vertices,
    is_pyramid_3face,
    parse_rational,
    polar_dual,
    prism,
    pyramid,
    vertex_figure,
)

ZOO_SAMPLE = ["square", "pentagon", "cube3", "octahedron", "icosahedron", "cuboctahedron",
              "prism_triangle", "simplex4", "cyclic4_8", "pyramid_5gon", "bipyramid_6gon"]


def euler_holds(f):
    # f = (f_{-1}, ..., f_n); the alternating sum vanishes for every polytope
    return sum((-1) ** i * x for i, x in enumerate(f)) == 0


def test_parse_rational():
    assert parse_rational(3) == 3
    assert parse_rational("2/6") == Fraction(1, 3)
    assert parse_rational("0.125") == Fraction(1, 8)
    for bad in ("x", "1/0", 0.5, True, None):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_square():
    p = from_vertices([(0, 0), (1, 0), (0, 1), (1, 1)])
    assert p.f_vector() == (1, 4, 4, 1)


def test_cuboctahedron_hull():
    pts = {tuple(q) for v in product((1, -1), repeat=2) for q in permutations((v[0], v[1], 0))}
    p = from_vertices(sorted(pts))
    assert p.f_vector()[1:4] == (12, 24, 14)


def test_point_and_empty():
    p = from_vertices([(3, 4)])
    assert p.dim == 0
    assert p.f_vector() == (1, 1)
    with pytest.raises(EmptyInput):
        from_vertices([])
    assert empty_polytope().dim == -1


def test_interior_and_duplicate_points_dropped():
    p = from_vertices([(0, 0), (2, 0), (0, 2), (2, 2), (1, 1), (1, 0), (0, 0)])
    assert len(p.vertices) == 4


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        from_vertices([(0, 0), (1, 0, 0)])


def test_affine_reduction():
    p = from_vertices([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
    assert p.dim == 2
    assert p.f_vector() == (1, 4, 4, 1)


def test_polar_dual_examples():
    assert polar_dual(zoo.get("cube3")).f_vector() == (1, 6, 12, 8, 1)
    assert polar_dual(zoo.get("simplex3")).f_vector() == (1, 4, 6, 4, 1)
    f = polar_dual(zoo.get("cuboctahedron")).f_vector()
    assert (f[1], f[3]) == (14, 12)


@pytest.mark.parametrize("name", ["square", "cube3", "cuboctahedron", "icosahedron", "cyclic4_8"])
def test_dual_of_dual_isomorphic(name):
    p = zoo.get(name)
    d = polar_dual(p)
    dd = polar_dual(d)
    # vertex v of p <-> facet of d made of the facets of p through v <-> vertex of dd
    facet_pos = {f.vertices: i for i, f in enumerate(p.facets)}
    through = {v: frozenset(facet_pos[f.vertices] for f in p.facets if v in f.vertices)
               for v in range(len(p.vertices))}
    dfacet = {f.vertex_set: j for j, f in enumerate(d.facets)}
    phi = {v: dfacet[s] for v, s in through.items()}
    mapped = {frozenset(phi[v] for v in f.vertices) for f in p.faces}
    assert mapped == {f.vertex_set for f in dd.faces}


def test_vertex_figures():
    assert vertex_figure(zoo.get("cube3"), 0).f_vector() == (1, 3, 3, 1)
    assert vertex_figure(zoo.get("octahedron"), 0).f_vector() == (1, 4, 4, 1)
    cubo = zoo.get("cuboctahedron")
    fig = vertex_figure(cubo, 0)
    assert fig.f_vector() == (1, 4, 4, 1)
    sizes = sorted(len(f.vertices) for f in cubo.faces_of_dim(2) if 0 in f.vertices)
    assert sizes == [3, 3, 4, 4]


def test_double_pyramid_constructions(cubo):
    assert double_pyramid(zoo.get("square")).f_vector()[1] == 6
    dp = double_pyramid(cubo)
    sizes = sorted(len(f.vertices) for f in dp.faces_of_dim(3))
    assert sizes == [4] * 16 + [5] * 12
    assert all(is_pyramid_3face(f, dp) for f in dp.faces_of_dim(3))


def test_double_pyramid_face_structure(cubo):
    # faces of dpyr(p): faces G of p, and G joined with each apex
    dp = double_pyramid(cubo)
    expected = [0] * 5
    fp = cubo.f_vector()
    for k in range(4):
        expected[k] += fp[k + 1] if k < 3 else 0
        expected[k] += 2 * fp[k]
    assert list(dp.f_vector()[1:5]) == expected[:4]


def test_pyramid_and_prism():
    p = pyramid(zoo.get("square"))
    assert p.f_vector() == (1, 5, 8, 5, 1)
    assert prism(zoo.get("triangle")).f_vector() == (1, 6, 9, 5, 1)
    assert prism(zoo.get("cube3")).f_vector() == zoo.get("cube4").f_vector()


def test_is_pyramid_3face():
    tet = zoo.get("simplex3")
    assert is_pyramid_3face(tet.faces[-1], tet)
    sp = zoo.get("pyramid_4gon")
    assert is_pyramid_3face(sp.faces[-1], sp)
    pr = zoo.get("prism_triangle")
    assert not is_pyramid_3face(pr.faces[-1], pr)
    with pytest.raises(DimensionMismatch):
        is_pyramid_3face(tet.faces_of_dim(2)[0], tet)


def test_incidence_diamond(cubo):
    poset = cubo.poset()
    inc = poset.incidence()
    for i, f in enumerate(poset.faces):
        for j in poset.facets_of(i):
            for k in poset.facets_of(j):
                total = sum(inc[i, m] * inc[m, k] for m in poset.facets_of(i) if k in poset.facets_of(m))
                assert total == 0


def test_cyclic_order_is_a_cycle(cubo):
    edges = {e.vertices for e in cubo.edges}
    for f in cubo.faces_of_dim(2):
        cyc = cubo.cyclic_order(f)
        assert sorted(cyc) == list(f.vertices)
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            assert (min(a, b), max(a, b)) in edges


@pytest.mark.parametrize("name", ZOO_SAMPLE)
def test_euler_relation(name):
    assert euler_holds(zoo.get(name).f_vector())


@pytest.mark.parametrize("name", ZOO_SAMPLE)
def test_json_round_trip(name):
    p = zoo.get(name)
    q = Polytope.from_json(p.to_json())
    assert q.vertices == p.vertices
    assert q.faces == p.faces
    assert q.name == p.name


def test_json_errors():
    with pytest.raises(ValueError):
        Polytope.from_json('{"name": "x"}')
    with pytest.raises(ValueError):
        Polytope.from_json('{"vertices": [[0, "a"]]}')


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=9))
def test_random_hulls_satisfy_euler(pts):
    p = from_vertices(pts)
    assert euler_holds(p.f_vector())
    if p.dim < 3:
        return
    # every input point satisfies every facet inequality
    for c0, *h in p.facet_inequalities.values():
        for x in pts:
            assert c0 + sum(a * b for a, b in zip(h, x)) >= 0


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_affine_images_keep_face_lattice(seed):
    rng = random.Random(seed)
    p = zoo.get(rng.choice(["cube3", "cuboctahedron", "pyramid_5gon"]))
    m, t = random_affine(rng, p.dim)
    q = affine_image(p, m, t)
    assert q.f_vector() == p.f_vector()
