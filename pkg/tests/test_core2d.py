import random

from repet2d import (
    Matrix2D,
    concat_h,
    concat_v,
    distinct_factors,
    factor_count,
    format_matrix,
    parse_matrix,
    submatrix,
)
from repet2d.errors import (
    ColMismatch,
    OutOfBounds,
    ParseError,
    RowMismatch,
    TooLarge,
)

from util import mat, naive_factor_count, naive_factors, random_matrix, raises


def test_from_tokens_basics():
    m = mat("ab", "ba")
    assert (m.rows, m.cols, m.area) == (2, 2, 4)
    assert m.alphabet == ("a", "b")
    assert m.at(1, 1) == "a" and m.at(2, 1) == "b"
    assert m.tokens() == (("a", "b"), ("b", "a"))
    assert m.row_tokens(2) == ("b", "a")
    # values are normalized to str
    assert Matrix2D.from_tokens([[0, 1]]) == mat("01")


def test_from_tokens_rejects_bad_input():
    raises(TooLarge, Matrix2D.from_tokens, [])
    raises(TooLarge, Matrix2D.from_tokens, [[]])
    raises(RowMismatch, Matrix2D.from_tokens, [["a", "b"], ["a"]])
    raises(ParseError, Matrix2D.from_tokens, [["a b"]])
    raises(ParseError, Matrix2D.from_tokens, [[""]])
    raises(OutOfBounds, mat("01").at, 1, 3)
    raises(OutOfBounds, mat("01").at, 0, 1)


def test_equality_is_by_token_grid():
    # same pattern over different concrete tokens must differ,
    # same tokens via different input types must agree
    assert mat("01") != mat("ab")
    assert Matrix2D.from_tokens([["7", "7", "8"]]) == Matrix2D.from_tokens([[7, 7, 8]])


def test_submatrix_and_concat():
    m = mat("0123", "4567", "89ab")
    assert submatrix(m, 2, 2, 3, 4) == mat("567", "9ab")
    assert submatrix(m, 1, 1, 3, 4) == m
    raises(OutOfBounds, submatrix, m, 2, 2, 4, 4)
    raises(OutOfBounds, submatrix, m, 2, 3, 2, 2)

    a, b = mat("01", "23"), mat("9", "9")
    assert concat_h(a, b) == mat("019", "239")
    assert concat_v(mat("01"), mat("55")) == mat("01", "55")
    raises(RowMismatch, concat_h, a, mat("9"))
    raises(ColMismatch, concat_v, a, mat("9"))


def test_concat_merges_alphabets():
    left = mat("aa")
    right = mat("zz")
    glued = concat_h(left, right)
    assert glued.alphabet == ("a", "z")
    assert glued.tokens() == (("a", "a", "z", "z"),)


def test_factor_count_against_naive_oracle():
    rng = random.Random(20260814)
    for _ in range(150):
        m = random_matrix(rng, 5, 5, "01" if rng.random() < 0.7 else "abc")
        k1 = rng.randint(1, m.rows)
        k2 = rng.randint(1, m.cols)
        assert factor_count(m, k1, k2) == naive_factor_count(m, k1, k2), (
            f"{m}\nshape {k1}x{k2}"
        )
    raises(OutOfBounds, factor_count, mat("01"), 2, 1)


def test_distinct_factors_contents_and_occurrences():
    rng = random.Random(7)
    for _ in range(40):
        m = random_matrix(rng, 4, 4)
        k1 = rng.randint(1, m.rows)
        k2 = rng.randint(1, m.cols)
        expected = naive_factors(m, k1, k2)
        got = distinct_factors(m, k1, k2)
        assert len(got) == len(expected)
        for f in got:
            assert f.shape.k1 == k1 and f.shape.k2 == k2
            assert f.content in expected
            # occurrences must be exactly the naive list, in row-major order
            assert list(f.occurrences) == expected[f.content]
    # factors are reported by first occurrence in row-major order
    firsts = [f.occurrences[0] for f in distinct_factors(mat("010", "101"), 1, 2)]
    assert firsts == sorted(firsts)


def test_text_roundtrip():
    rng = random.Random(99)
    for _ in range(30):
        m = random_matrix(rng, 5, 5, "ab#")
        assert parse_matrix(format_matrix(m)) == m
    text = format_matrix(mat("01"))
    assert text == "2d 1 2\n0 1\n"


def test_parse_matrix_comments_and_errors():
    # comments: before the header always; after it only when the token
    # count differs from the column count
    assert parse_matrix("# note\n2d 1 2\n# a comment\n0 1\n#\n") == mat("01")
    # a '#' line with exactly the expected token count is data, not comment
    m = parse_matrix("2d 2 2\n# x\na b\n")
    assert m.at(1, 1) == "#" and m.at(1, 2) == "x" and m.at(2, 1) == "a"

    raises(ParseError, parse_matrix, "")
    raises(ParseError, parse_matrix, "1 2\n0 1\n")
    raises(ParseError, parse_matrix, "2d 0 2\n")
    raises(ParseError, parse_matrix, "2d one 2\n0 1\n")
    raises(ParseError, parse_matrix, "2d 1 2\n0\n")
    raises(ParseError, parse_matrix, "2d 1 2\n0 1\nextra row\n")
    raises(ParseError, parse_matrix, "2d 2 2\n0 1\n")
