import pytest

from polyhodge import exactla, zoo
from polyhodge.complexes import (
    CONSTANT,
    PERP,
    QUOTIENT,
    SPAN,
    NotAComplex,
    SystemComplex,
    SystemSpec,
    UnsupportedSpec,
    assemble,
    boundary_fan,
    cohomology_dims,
    cone_fan,
    exterior,
    hodge_number,
    normal_fan,
    vr,
)
from polyhodge.polytope import empty_polytope, from_vertices

FANS = ["square", "pentagon", "cube3", "octahedron", "cuboctahedron", "prism_triangle", "simplex4"]


def test_cone_fan_examples():
    pt = cone_fan(from_vertices([(5,)]))
    assert pt.ambient_dim == 1
    assert pt.counts() == (1, 1)
    assert cone_fan(zoo.get("square")).counts() == (1, 4, 4, 1)
    assert cone_fan(empty_polytope()).counts() == (1,)


def test_normal_fan_examples():
    assert normal_fan(zoo.get("square")).counts() == (1, 4, 4)
    for n in (2, 3, 4):
        assert normal_fan(zoo.get(f"simplex{n}")).counts()[n] == n + 1
    assert normal_fan(zoo.get("cuboctahedron")).counts()[1] == 14


def test_assemble_dims():
    sq = cone_fan(zoo.get("square"))
    assert assemble(sq, QUOTIENT).dims == [3, 8, 4, 0]
    assert assemble(sq, CONSTANT).dims == list(sq.counts())
    pt = cone_fan(from_vertices([(5,)]))
    assert assemble(pt, SPAN).dims == [0, 1]


def test_unsupported_spec():
    with pytest.raises(UnsupportedSpec):
        assemble(cone_fan(zoo.get("square")), SystemSpec("bogus"))


def test_cohomology_examples():
    assert cohomology_dims(assemble(cone_fan(zoo.get("square")), QUOTIENT)) == [0, 1, 0, 0]
    ico = cohomology_dims(assemble(cone_fan(zoo.get("icosahedron")), QUOTIENT))
    assert ico[2] == 8


def test_identity_complex_is_exact():
    c = SystemComplex([1, 1], [exactla.RatMatrix.identity(1)], [[], []])
    assert cohomology_dims(c) == [0, 0]


def test_not_a_complex():
    one = exactla.RatMatrix.identity(1)
    c = SystemComplex([1, 1, 1], [one, one], [[], [], []])
    with pytest.raises(NotAComplex):
        cohomology_dims(c)


@pytest.mark.parametrize("name", FANS)
def test_signs_square_to_zero(name):
    p = zoo.get(name)
    assert cone_fan(p).check_signs()
    assert normal_fan(p).check_signs()


@pytest.mark.parametrize("name", FANS)
def test_every_system_is_a_complex(name):
    p = zoo.get(name)
    fan = cone_fan(p)
    specs = [SPAN, QUOTIENT, CONSTANT, PERP] + [exterior(q) for q in range(fan.ambient_dim + 1)]
    specs.append(vr([1] * fan.ambient_dim))
    for spec in specs:
        c = assemble(fan, spec)
        assert c.is_complex(), spec
        h = cohomology_dims(c)
        # Euler characteristic of a complex equals that of its cohomology
        assert sum((-1) ** k * x for k, x in enumerate(h)) == c.euler_characteristic()


@pytest.mark.parametrize("name", FANS[:-1])
def test_constant_on_cone_fan_is_acyclic(name):
    # the constant system is the augmented cellular cochain complex of a ball
    h = cohomology_dims(assemble(cone_fan(zoo.get(name)), CONSTANT))
    assert sum(h) == 0


@pytest.mark.parametrize("name", ["cube3", "octahedron", "cuboctahedron", "icosahedron", "prism_triangle"])
def test_complete_fan_hodge_vanishing(name):
    p = zoo.get(name)
    fan = normal_fan(p)
    D = fan.ambient_dim
    table = [[hodge_number(fan, a, b) for b in range(D + 1)] for a in range(D + 1)]
    assert all(table[a][b] == 0 for a in range(D + 1) for b in range(D + 1) if a < b)
    assert table[0][0] == table[D][D] == 1
    if p.is_simple():
        # simplicial complete fans have a diagonal Hodge table
        assert all(table[a][b] == 0 for a in range(D + 1) for b in range(D + 1) if a != b)


def test_hodge_number_range():
    with pytest.raises(UnsupportedSpec):
        hodge_number(normal_fan(zoo.get("square")), 3, 0)


def test_boundary_fan_drops_the_top_cone():
    fan = cone_fan(zoo.get("cube3"))
    b = boundary_fan(fan)
    assert b.counts() == fan.counts()[:-1] + (0,)
