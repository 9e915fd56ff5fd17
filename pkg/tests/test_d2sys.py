import random

import pytest

from polyhodge import d2sys, dinv, zoo
from polyhodge.d2sys import HypothesisViolated, NotApplicable, NotApplicableError, VanishesByTheorem
from polyhodge.polytope import double_pyramid, is_pyramid_3face, pyramid


@pytest.fixture(scope="module")
def dp_pyr4():
    # dpyr of a square pyramid: one square 2-face, D^2 = 0
    return double_pyramid(zoo.get("pyramid_4gon"))


def test_flag_system_on_dp_cuboctahedron(dp_cubo):
    assert d2sys.check_hypothesis(dp_cubo) == []
    system = d2sys.build_flag_system(dp_cubo)
    assert system.kernel_dim() == 1 == dinv.d_profile(dp_cubo)[2]
    assert set(system.family_rows) == {"family1", "family2", "family3"}
    # five equations of family 2 per flag (n + 1 coordinates)
    assert system.family_rows["family2"] == 5 * len({(e, P) for _, e, P in system.variables})


def test_flag_system_simplex_and_free_shapes():
    assert d2sys.d2_via_flags(zoo.get("simplex4")) == 0
    for name in ("crosspoly4", "cyclic4_8"):
        p = zoo.get(name)
        assert d2sys.d2_via_flags(p) == dinv.d_profile(p)[2]
    o = double_pyramid(zoo.get("octahedron"))
    assert d2sys.d2_via_flags(o) == dinv.d_profile(o)[2]


def test_low_dimension():
    with pytest.raises(NotApplicableError) as info:
        d2sys.build_flag_system(zoo.get("octahedron"))
    assert isinstance(info.value.verdict, NotApplicable)
    assert d2sys.d2_via_flags(zoo.get("octahedron")) == 2


def test_hypothesis_violated():
    with pytest.raises(HypothesisViolated):
        d2sys.build_flag_system(pyramid(zoo.get("cube4")))
    with pytest.raises(HypothesisViolated):
        d2sys.build_flag_system(pyramid(zoo.get("cuboctahedron")))


def test_kernel_vectors_satisfy_system(dp_cubo):
    system = d2sys.build_flag_system(dp_cubo)
    (vec,) = system.kernel()
    assert system.satisfies(vec)
    assert not system.satisfies([1] * len(system.variables))


def test_between_pair_orientation_alternatives(dp_cubo):
    # any fixed choice of (plus, minus) gives the same kernel dimension in dim 4
    rng = random.Random(5)
    flipped = d2sys.build_flag_system(dp_cubo, pair_order=lambda e, F, pair: pair[::-1])
    shuffled = d2sys.build_flag_system(dp_cubo, pair_order=lambda e, F, pair: rng.sample(pair, 2))
    assert flipped.kernel_dim() == shuffled.kernel_dim() == 1


def test_sign_element(dp_cubo, dp_pyr4):
    assert d2sys.sign_element_check(dp_cubo)
    assert d2sys.sign_element_check(zoo.get("simplex4"))
    # a lone square cannot carry an alternating kernel element when D^2 = 0
    assert dinv.d_profile(dp_pyr4)[2] == 0
    assert not d2sys.sign_element_check(dp_pyr4)


def test_cleaning_dp_cuboctahedron(dp_cubo):
    st = d2sys.clean(dp_cubo)
    squares = {f.vertices for f in dp_cubo.faces_of_dim(2) if len(f.vertices) == 4}
    assert len(squares) == 6
    assert st.clean_2faces == {f.vertices for f in dp_cubo.faces_of_dim(2)} - squares
    # only the two apexes, which lie in triangles only, get clean
    square_vertices = set().union(*squares)
    assert not st.clean_vertices & square_vertices
    assert st.clean_vertices == {12, 13}
    assert not st.complete
    verdict = d2sys.certify_vanishing(dp_cubo)
    assert isinstance(verdict, NotApplicable)
    assert "stalls" in verdict.reason


def test_cleaning_simplex():
    st = d2sys.clean(zoo.get("simplex4"))
    assert st.complete
    assert isinstance(d2sys.certify_vanishing(zoo.get("simplex4")), VanishesByTheorem)


def test_certificate_with_vertex_condition(dp_pyr4):
    # every vertex lies in at most n - 3 = 1 non-triangular 2-face
    assert all(is_pyramid_3face(f, dp_pyr4) for f in dp_pyr4.faces_of_dim(3))
    assert isinstance(d2sys.certify_vanishing(dp_pyr4), VanishesByTheorem)
    assert dinv.d_profile(dp_pyr4)[2] == 0


def test_certificate_requires_pyramids():
    v = d2sys.certify_vanishing(zoo.get("cube4"))
    assert isinstance(v, NotApplicable) and "pyramids" in v.reason
    assert isinstance(d2sys.certify_vanishing(zoo.get("square")), NotApplicable)


@pytest.mark.parametrize("name", ["dp_cuboctahedron", "cyclic4_8", "cube4", "crosspoly4"])
def test_cleaning_is_confluent(name):
    p = zoo.get(name)
    ref = d2sys.clean(p)
    for seed in range(15):
        st = d2sys.clean(p, random.Random(seed))
        assert (st.clean_vertices, st.clean_2faces) == (ref.clean_vertices, ref.clean_2faces)
