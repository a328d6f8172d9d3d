import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from extcontent.errors import DomainError, ModeMismatchError, ParseError
from extcontent.matrix import (
    GramMatrix,
    Matrix,
    Mode,
    det_cofactor,
    determinant,
    exact_rank,
    format_matrix,
    gram,
    identity,
    leading_principal_minors,
    mat_mul,
    minor_det,
    minor_dets,
    parse_matrix,
    parse_scalar,
    row_minor,
    transpose,
)
from extcontent.subsets import SubsetIndex, k_subsets
from extcontent.verify import random_exact_matrix, random_float_matrix

from conftest import exact, flt, leibniz_det


def square_int_matrices(max_n=6, lo=-9, hi=9):
    return st.integers(0, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def test_scalar_invariants():
    with pytest.raises(DomainError):
        Matrix(1, 1, (float("nan"),), Mode.FLOAT)
    with pytest.raises(DomainError):
        Matrix.from_rows([[float("inf")]], Mode.FLOAT)
    m = exact([[Fraction(2, 4)]])
    assert m[0, 0].numerator == 1 and m[0, 0].denominator == 2
    assert exact([[Fraction(1, -3)]])[0, 0].denominator == 3


def test_modes_never_mix():
    a = exact([[1, 2], [3, 4]])
    b = flt([[1, 2], [3, 4]])
    with pytest.raises(ModeMismatchError):
        mat_mul(a, b)
    with pytest.raises(ModeMismatchError):
        Matrix.from_rows([[Fraction(1, 3), 0.5]])
    with pytest.raises(ModeMismatchError):
        Matrix.from_rows([[0.5]], Mode.EXACT)
    with pytest.raises(ModeMismatchError):
        Matrix(1, 1, (0.5,), Mode.EXACT)


def test_transpose_examples():
    assert transpose(exact([[5]])) == exact([[5]])
    assert transpose(exact([[1, 2], [3, 4], [5, 6]])) == exact([[1, 3, 5], [2, 4, 6]])
    assert transpose(Matrix(0, 3, (), Mode.EXACT)).shape == (3, 0)


def test_transpose_involution(rng):
    a = random_exact_matrix(rng, 6, 4)
    assert transpose(transpose(a)) == a


def test_mat_mul_examples(rng):
    a = random_exact_matrix(rng, 3, 4)
    assert mat_mul(a, identity(4)) == a
    assert mat_mul(exact([[1, 2], [3, 4]]), exact([[0, 1], [1, 0]])) == exact([[2, 1], [4, 3]])
    b, c = random_exact_matrix(rng, 4, 2), random_exact_matrix(rng, 2, 5)
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))
    with pytest.raises(DomainError):
        mat_mul(a, a)


def test_determinant_examples():
    assert determinant(Matrix(0, 0, (), Mode.EXACT)) == 1
    assert determinant(Matrix(0, 0, (), Mode.FLOAT)) == 1.0
    assert determinant(exact([[1, 2], [3, 4]])) == -2
    assert determinant(flt([[1, 2], [3, 4]])) == pytest.approx(-2.0, rel=1e-15)
    with pytest.raises(DomainError):
        determinant(exact([[1, 2]]))


def test_determinant_rational_entries():
    a = exact([[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 5)]])
    assert determinant(a) == Fraction(1, 10) - Fraction(1, 12)


def test_bareiss_vs_leibniz_random(rng):
    for _ in range(200):
        n = rng.randint(1, 6)
        a = random_exact_matrix(rng, n, n)
        assert determinant(a) == leibniz_det(a.to_lists())
        assert det_cofactor(a) == leibniz_det(a.to_lists())


def test_gram_examples():
    assert gram(exact([[1, 0], [0, 1], [0, 0]])) == identity(2)
    g = gram(Matrix.from_columns([[1, 2, 3], [4, 5, 6]], Mode.EXACT))
    assert isinstance(g, GramMatrix)
    assert g.to_lists() == [[14, 32], [32, 77]]


def test_gram_float_symmetric(rng):
    g = gram(random_float_matrix(rng, 7, 3))
    for i in range(3):
        for j in range(3):
            assert g[i, j] == g[j, i]


def test_minor_examples_symbolic_positions():
    # rows [[a,d],[b,e],[c,f]] with distinct primes to identify terms
    a, b, c, d, e, f = 2, 3, 5, 7, 11, 13
    m = exact([[a, d], [b, e], [c, f]])
    assert minor_det(m, (1, 2), (1, 2)) == a * e - b * d
    assert minor_det(m, (1, 3), (1, 2)) == a * f - c * d
    assert minor_det(m, (2, 3), (1, 2)) == b * f - c * e


def test_minor_examples():
    unit = exact([[1, 0], [0, 1], [0, 0]])
    assert [minor_det(unit, s, (1, 2)) for s in k_subsets(3, 2)] == [1, 0, 0]
    a = Matrix.from_columns([[1, 2, 3], [4, 5, 6]], Mode.EXACT)
    assert [minor_det(a, s, (1, 2)) for s in k_subsets(3, 2)] == [-3, -6, -3]
    grid = minor_dets(a, k_subsets(3, 2), k_subsets(2, 2))
    assert [line[0] for line in grid] == [-3, -6, -3]


def test_row_minor_keeps_order():
    a = exact([[1, 2], [3, 4], [5, 6]])
    assert row_minor(a, SubsetIndex(3, (1, 3))) == exact([[1, 2], [5, 6]])


def test_minor_errors():
    a = exact([[1, 2], [3, 4], [5, 6]])
    with pytest.raises(DomainError):
        minor_det(a, (1, 4), (1, 2))
    with pytest.raises(DomainError):
        minor_det(a, (1, 2, 3), (1, 2))
    with pytest.raises(DomainError):
        minor_dets(a, [SubsetIndex(3, (1,))], [SubsetIndex(2, (1, 2))])


def test_minor_dets_rational_denominators(rng):
    a = Matrix.from_rows([[Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(3)] for _ in range(5)])
    rows, cols = k_subsets(5, 2), k_subsets(3, 2)
    grid = minor_dets(a, rows, cols)
    for p, r in enumerate(rows):
        for q, c in enumerate(cols):
            sub = [[a[i - 1, j - 1] for j in c] for i in r]
            assert grid[p][q] == leibniz_det(sub)


def test_exact_rank():
    assert exact_rank(exact([[1, 2], [2, 4]])) == 1
    assert exact_rank(exact([[0, 0], [0, 0]])) == 0
    assert exact_rank(identity(4)) == 4
    assert exact_rank(Matrix.from_columns([[1, 2, 3], [2, 4, 6]], Mode.EXACT)) == 1


# -- parsing ----------------------------------------------------------------

def test_parse_scalar_forms():
    assert parse_scalar("0.25") == Fraction(1, 4)
    assert parse_scalar("-3/6") == Fraction(-1, 2)
    assert parse_scalar("7") == 7
    assert parse_scalar("0.25", Mode.FLOAT) == 0.25
    assert parse_scalar("1/4", Mode.FLOAT) == 0.25
    assert isinstance(parse_scalar("1e-3"), Fraction)
    with pytest.raises(ParseError, match="zero denominator"):
        parse_scalar("1/0")
    with pytest.raises(ParseError):
        parse_scalar("nan")
    with pytest.raises(ParseError):
        parse_scalar("abc", Mode.FLOAT)


def test_parse_matrix_text_format():
    text = "# a comment\n1 4   # trailing\n\n2 5\n3 6\n"
    m = parse_matrix(text)
    assert m.mode is Mode.EXACT and m.shape == (3, 2)
    assert m == Matrix.from_columns([[1, 2, 3], [4, 5, 6]], Mode.EXACT)
    assert format_matrix(m) == "1 4\n2 5\n3 6"


def test_parse_matrix_mode_inference():
    assert parse_matrix("1 2.5\n3 1e-7").mode is Mode.EXACT
    m = parse_matrix("1 2.5\n3 1/3.0")
    assert m.mode is Mode.FLOAT and m[1, 1] == 1 / 3.0
    assert parse_matrix("1 2\n3 4", Mode.FLOAT).mode is Mode.FLOAT


def test_parse_matrix_diagnostics():
    with pytest.raises(ParseError) as err:
        parse_matrix("1 2\n3 1/0\n")
    assert (err.value.line, err.value.column) == (2, 3)
    assert "zero denominator" in str(err.value)
    with pytest.raises(ParseError, match="line 2"):
        parse_matrix("1 2\n3\n")
    with pytest.raises(ParseError, match="non-finite"):
        parse_matrix("1 inf")


def test_parse_empty_is_0x0():
    m = parse_matrix("# nothing\n")
    assert m.shape == (0, 0) and determinant(m) == 1


# -- properties ---------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(square_int_matrices(), square_int_matrices())
def test_det_multiplicative(x, y):
    n = min(len(x), len(y))
    a = exact([r[:n] for r in x[:n]]) if n else Matrix(0, 0, (), Mode.EXACT)
    b = exact([r[:n] for r in y[:n]]) if n else Matrix(0, 0, (), Mode.EXACT)
    assert determinant(mat_mul(a, b)) == determinant(a) * determinant(b)


@settings(max_examples=150, deadline=None)
@given(square_int_matrices())
def test_det_transpose(x):
    a = exact(x) if x else Matrix(0, 0, (), Mode.EXACT)
    assert determinant(transpose(a)) == determinant(a)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8).flatmap(
    lambda n: st.integers(1, 4).flatmap(
        lambda k: st.lists(st.lists(st.integers(-9, 9), min_size=k, max_size=k), min_size=n, max_size=n))))
def test_gram_leading_minors_nonnegative(rows):
    g = gram(exact(rows))
    assert all(m >= 0 for m in leading_principal_minors(g))
    assert g == transpose(g)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.floats(-1, 1), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_float_det_matches_cofactor(rows):
    a = flt(rows)
    ref = leibniz_det(rows)
    assert abs(determinant(a) - ref) <= 1e-10 * max(1.0, abs(ref))
