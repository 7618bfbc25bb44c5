from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fanforge.linalg import (
    det,
    format_rational,
    kernel_basis,
    lex_min_independent_subset,
    parse_rational,
    primitivize,
    rank,
    rref,
    solve_linear,
    vdot,
    vec,
)

PYRAMID_TOP = [(1, 1, 1), (1, -1, 1), (-1, -1, 1), (-1, 1, 1)]


def test_rank_identity():
    assert rank([(1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 3


def test_rank_pyramid_top_rows():
    # hand elimination: r2-r1, r3-r1, r4-r1 span two directions plus r1
    assert rank(PYRAMID_TOP) == 3


def test_rank_zero_matrix():
    assert rank([(0, 0), (0, 0)]) == 0


def test_rank_rational_entries():
    assert rank([(Fraction(1, 2), Fraction(1, 3)), (Fraction(3, 2), Fraction(1, 1))]) == 1
    assert rank([(Fraction(1, 2), Fraction(1, 3)), (Fraction(3, 2), Fraction(2, 1))]) == 2


def test_det_known():
    assert det([(1, 2), (3, 4)]) == -2
    assert det([(2, 0, 0), (0, 3, 0), (0, 0, 4)]) == 24
    assert det([(1, 1), (2, 2)]) == 0


def test_kernel_basis_simple():
    ker = kernel_basis([(1, 1, 0)], 3)
    assert len(ker) == 2
    for k in ker:
        assert vdot((1, 1, 0), k) == 0


def test_solve_linear():
    x = solve_linear([(2, 0), (0, 4)], (1, 1))
    assert x == (Fraction(1, 2), Fraction(1, 4))
    assert solve_linear([(1, 0), (1, 0)], (0, 1)) is None


def test_primitivize():
    assert primitivize((2, 4, -6)) == (1, 2, -3)
    assert primitivize((Fraction(1, 2), Fraction(1, 3))) == (3, 2)
    with pytest.raises(ValueError):
        primitivize((0, 0))


def test_lex_min_independent_subset():
    vecs = [(1, 0), (2, 0), (0, 1)]
    assert lex_min_independent_subset(vecs, 2) == [0, 2]
    assert lex_min_independent_subset([(1, 0), (2, 0)], 2) is None


def test_format_parse_rational():
    assert format_rational(Fraction(3, 2)) == "3/2"
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(-1) == "-1"
    assert parse_rational("3/2") == Fraction(3, 2)
    assert parse_rational("7") == 7


small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def matrices(draw, max_dim=4):
    rows = draw(st.integers(1, max_dim))
    cols = draw(st.integers(1, max_dim))
    return [
        tuple(draw(small_ints) for _ in range(cols)) for _ in range(rows)
    ]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_kernel_vectors_annihilate(mat):
    ker = kernel_basis(mat, len(mat[0]))
    for k in ker:
        assert all(vdot(row, k) == 0 for row in mat)
    red, pivots = rref(mat)
    assert len(ker) + len(pivots) == len(mat[0])


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_rref(mat):
    red, pivots = rref(mat)
    assert rank(mat) == len(pivots)


@settings(max_examples=40, deadline=None)
@given(matrices(max_dim=3))
def test_rank_invariant_under_row_scaling(mat):
    scaled = [tuple(3 * x for x in row) for row in mat]
    assert rank(scaled) == rank(mat)
