from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from polyhodge import exactla
from polyhodge.exactla import RatMatrix


def small_matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    )


def test_rank_examples():
    assert exactla.rank(RatMatrix.identity(3)) == 3
    assert exactla.rank(RatMatrix(2, 5)) == 0
    assert exactla.rank(RatMatrix.from_dense([[1, 2, 3], [2, 4, 6]])) == 1


def test_kernel_examples():
    assert exactla.kernel_basis(RatMatrix.identity(2)) == []
    (v,) = exactla.kernel_basis(RatMatrix.from_dense([[1, 1]]))
    assert v[0] == -v[1] != 0


def test_kernel_with_free_columns():
    m = RatMatrix.from_dense([[1, 2, 0, 1], [0, 0, 1, 3]])
    basis, free = exactla.kernel_basis(m, with_free=True)
    assert free == [1, 3]
    for v, j in zip(basis, free):
        assert [v[c] for c in free] == [1 if c == j else 0 for c in free]


def test_smith_examples():
    assert exactla.smith_diagonal([[1, 0], [0, 1]]) == [1, 1]
    assert exactla.smith_diagonal([[2, 0], [0, 3]]) == [1, 6]
    assert exactla.smith_diagonal([[1, 0, 1], [0, 1, 1]]) == [1, 1]
    assert exactla.smith_diagonal([[2, 0], [0, 4]]) == [2, 4]


def test_det_and_rref():
    assert exactla.det([[1, 2], [3, 4]]) == -2
    assert exactla.det([[Fraction(1, 2), 0], [0, 4]]) == 2
    rows, piv = exactla.rref(RatMatrix.from_dense([[2, 4, 2], [1, 2, 3]]))
    assert piv == [0, 2]
    assert rows == [[1, 2, 0], [0, 0, 1]]


def test_matmul_and_transpose():
    a = RatMatrix.from_dense([[1, 2], [0, 1]])
    b = RatMatrix.from_dense([[1, -2], [0, 1]])
    assert (a @ b) == RatMatrix.identity(2)
    assert a.transpose().to_dense() == [[1, 0], [2, 1]]
    assert a @ [1, 1] == [3, 1]


@settings(max_examples=80, deadline=None)
@given(small_matrices())
def test_rank_of_transpose(rows):
    m = RatMatrix.from_dense(rows)
    assert exactla.rank(m) == exactla.rank(m.transpose())


@settings(max_examples=80, deadline=None)
@given(small_matrices())
def test_rank_nullity(rows):
    m = RatMatrix.from_dense(rows)
    ker = exactla.kernel_basis(m)
    assert len(ker) + exactla.rank(m) == m.shape[1]
    for v in ker:
        assert all(x == 0 for x in m @ v)


@settings(max_examples=60, deadline=None)
@given(small_matrices(), st.randoms(use_true_random=False))
def test_rank_permutation_invariant(rows, rng):
    m = RatMatrix.from_dense(rows)
    r, c = m.shape
    rp, cp = list(range(r)), list(range(c))
    rng.shuffle(rp)
    rng.shuffle(cp)
    assert exactla.rank(m.permuted(rp, cp)) == exactla.rank(m)


@settings(max_examples=60, deadline=None)
@given(small_matrices(4, 4))
def test_smith_divisibility(rows):
    d = exactla.smith_diagonal(rows)
    assert len(d) == min(len(rows), len(rows[0]))
    assert sum(1 for x in d if x) == exactla.rank(RatMatrix.from_dense(rows))
    assert all(x >= 0 for x in d)
    # zeros trail, and every divisor divides the next (anything divides 0)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1) if d[i])
    assert all(not d[i + 1] for i in range(len(d) - 1) if not d[i])


@settings(max_examples=60, deadline=None)
@given(small_matrices(4, 4))
def test_smith_product_matches_square_det(rows):
    if len(rows) != len(rows[0]):
        return
    dt = exactla.det(rows)
    d = exactla.smith_diagonal(rows)
    prod = 1
    for x in d:
        prod *= x
    assert prod == abs(dt)
