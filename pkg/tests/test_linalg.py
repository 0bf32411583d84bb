from fractions import Fraction

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from confrep.linalg import Coordinatizer, RatMatrix, Reducer, determinant, nullspace, rank


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)
        )
    )


@given(matrices())
def test_rank_and_nullspace_against_sympy(rows):
    cols = len(rows[0])
    assert rank(rows, cols) == sympy.Matrix(rows).rank()
    basis = nullspace(rows, cols)
    assert len(basis) == cols - rank(rows, cols)
    for v in basis:
        assert all(sum(Fraction(a) * b for a, b in zip(r, v)) == 0 for r in rows)


@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_determinant_against_sympy(rows):
    assert determinant(rows) == sympy.Matrix(rows).det()


@settings(max_examples=50)
@given(matrices(4, 6), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_reducer_is_a_projection_onto_free_coordinates(rows, v):
    dim = len(rows[0])
    v = v[:dim]
    red = Reducer(rows, dim)
    assert len(red.free) == dim - rank(rows, dim)
    coords = red.coordinates(v)
    # v minus its free-coordinate representative lies in the row space
    rep = [Fraction(0)] * dim
    for i, c in zip(red.free, coords):
        rep[i] = c
    diff = [Fraction(a) - b for a, b in zip(v, rep)]
    assert rank(rows + [diff], dim) == rank(rows, dim)
    assert all(c == 0 for c in red.coordinates(rows[0]))


def test_coordinatizer():
    c = Coordinatizer([[1, 1, 0], [0, 1, 1]], 3)
    assert c.coordinates([2, 5, 3]) == [2, 3]
    try:
        c.coordinates([1, 0, 0])
    except ValueError:
        pass
    else:
        raise AssertionError("vector outside the span was accepted")


def test_matrix_product_and_identity():
    a = RatMatrix.from_rows([[1, 2], [3, 4]])
    assert a @ RatMatrix.identity(2) == a
    assert (a @ a).tolist() == [[7, 10], [15, 22]]
    assert a.transpose().tolist() == [[1, 3], [2, 4]]
    assert a.trace() == 5
