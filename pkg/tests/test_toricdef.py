import random

import pytest

from polyhodge import toricdef, zoo
from polyhodge.polytope import from_vertices


@pytest.fixture(scope="module")
def conifold():
    return toricdef.gorenstein_cone(zoo.get("unit_square_lattice"))


@pytest.fixture(scope="module")
def cube_cone():
    return toricdef.gorenstein_cone(zoo.get("unit_cube_lattice"))


def test_gorenstein_cone(conifold, cube_cone):
    assert conifold.rank == 3 and cube_cone.rank == 4
    assert sorted(conifold.generators) == [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]
    assert conifold.values(conifold.rstar) == [1, 1, 1, 1]
    with pytest.raises(toricdef.NonIntegralVertices):
        toricdef.gorenstein_cone(from_vertices([("1/2", 0), (1, 0), (0, 1), (1, 1)]))


def test_smoothness(conifold, cube_cone):
    assert toricdef.smooth_in_codim2(conifold)
    assert toricdef.smooth_in_codim2(cube_cone)
    thin = toricdef.gorenstein_cone(from_vertices([(0, 0), (2, 0), (0, 1)]))
    assert not toricdef.smooth_in_codim2(thin)
    assert not toricdef.conifold_codim3(thin)


def test_conifold_codim3(conifold, cube_cone):
    assert toricdef.conifold_codim3(conifold)
    assert toricdef.conifold_codim3(cube_cone)
    assert toricdef.conifold_codim3(toricdef.gorenstein_cone(zoo.get("simplex3")))
    big = toricdef.gorenstein_cone(from_vertices([(0, 0), (2, 0), (0, 2), (2, 2)]))
    assert not toricdef.conifold_codim3(big)


def test_restrict_to_face(conifold):
    assert toricdef.restrict_to_face(conifold, (0, 0, 1)).f_vector() == (1, 4, 4, 1)
    left = toricdef.restrict_to_face(conifold, (-1, 0, 1))
    assert left.dim == 1
    assert toricdef.restrict_to_face(conifold, (0, 0, 0)).dim == -1
    with pytest.raises(toricdef.DegreeNotBounded):
        toricdef.restrict_to_face(conifold, (0, 0, 2))


def test_t_at_rstar(conifold, cube_cone):
    assert toricdef.t_graded(conifold, 1, conifold.rstar) == 1
    assert toricdef.t_graded(conifold, 2, conifold.rstar) == 0
    assert toricdef.t_graded(cube_cone, 1, cube_cone.rstar) == 2
    assert toricdef.t_graded(cube_cone, 2, cube_cone.rstar) == 0
    with pytest.raises(ValueError):
        toricdef.t_graded(conifold, 3, conifold.rstar)


def test_unbounded_degrees_vanish(conifold):
    for R in [(0, 0, 2), (1, 0, 1), (3, -1, 0)]:
        assert toricdef.t_graded(conifold, 1, R) == 0
        assert toricdef.t_graded(conifold, 2, R) == 0


def test_unsupported_degree():
    thin = toricdef.gorenstein_cone(from_vertices([(0, 0), (2, 0), (0, 1)]))
    with pytest.raises(toricdef.DegreeUnsupported):
        toricdef.t_graded(thin, 1, (0, 0, 2))
    assert toricdef.t_graded(thin, 1, thin.rstar) == 0


@pytest.mark.parametrize("which", ["conifold", "cube_cone"])
def test_two_routes_agree(which, request):
    c = request.getfixturevalue(which)
    for R in toricdef.degree_box(c.rank, -1, 1):
        if not c.is_bounded(R):
            continue
        face_route = toricdef.t_graded(c, 1, R)
        assert face_route == toricdef.vr_homology(c, R)[1]


def test_vr_exactness(conifold, cube_cone):
    assert toricdef.vr_complex_exactness(conifold, (0, 0, 2))
    assert toricdef.vr_complex_exactness(cube_cone, (1, 0, 0, 1))
    with pytest.raises(toricdef.PreconditionViolated):
        toricdef.vr_complex_exactness(conifold, conifold.rstar)
    rng = random.Random(2)
    for _ in range(25):
        assert toricdef.vr_complex_exactness(conifold, toricdef.random_unbounded_degree(conifold, rng))


def test_local_contribution_cases(conifold, cube_cone):
    for R in [(0, 0, 1), (0, 1, 1), (0, 0, 2), (1, 1, 1), (0, 0, -1)]:
        assert toricdef.t2_local_contribution_conifold_check(conifold, R)
    for R in toricdef.degree_box(4, -1, 2):
        assert toricdef.t2_local_contribution_conifold_check(cube_cone, R)
    thin = toricdef.gorenstein_cone(from_vertices([(0, 0), (2, 0), (0, 1)]))
    with pytest.raises(toricdef.PreconditionViolated):
        toricdef.t2_local_contribution_conifold_check(thin, thin.rstar)


def test_sweep(conifold):
    res = toricdef.sweep(conifold, 0, 1)
    assert len(res) == 8
    assert res[(0, 0, 1)] == (1, 0)
    assert all(v == (0, 0) for R, v in res.items() if R != (0, 0, 1))
