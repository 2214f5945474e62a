import random
import warnings

import pytest

from algebroids import (
    Expr,
    ExprError,
    FMatrix,
    RankDropWarning,
    SingularMatrixError,
    adjugate_inverse,
    determinant,
    left_pseudo_inverse,
    matmul,
    parse,
)
from helpers import full_column_rank_matrix, random_poly

T = ("xt1", "xt2", "xt3")


def mat(rows, names=T):
    return FMatrix([[parse(e, names) for e in row] for row in rows])


def test_construction_errors():
    with pytest.raises(ExprError):
        FMatrix([])
    with pytest.raises(ExprError):
        FMatrix([[Expr.constant(1)], [Expr.constant(1), Expr.constant(2)]])


def test_shape_and_indexing():
    m = mat([["1", "xt1"], ["0", "2"]])
    assert m.shape() == (2, 2)
    assert m[0, 1] == parse("xt1", T)
    assert m.transpose()[1, 0] == parse("xt1", T)
    assert m.transpose().transpose() == m


def test_identity_and_matmul():
    m = mat([["1", "xt1"], ["0", "2"]])
    assert matmul(FMatrix.identity(2), m) == m
    assert matmul(m, FMatrix.identity(2)) == m
    with pytest.raises(ExprError):
        matmul(m, mat([["1", "2"]]))


def test_determinant_2x2():
    m = mat([["xt1", "1"], ["xt2", "xt3"]])
    assert determinant(m) == parse("xt1*xt3 - xt2", T)
    with pytest.raises(ExprError):
        determinant(mat([["1", "2"]]))


def test_determinant_of_transformed_system_matrix_vanishes():
    # The 3x3 system matrix factors through a rank-2 bundle, so its
    # determinant is identically zero; a useful regression against
    # accidental sign or orientation mistakes in the cofactor expansion.
    m_tilde = mat([["0", "-xt2", "-1"], ["-xt1", "-xt2", "-1"], ["-1", "0", "0"]])
    assert determinant(m_tilde).is_zero()


def test_gram_determinant_of_reduction_matrix():
    r = mat([["-xt1", "1"], ["0", "1"], ["1", "0"]])
    gram = matmul(r.transpose(), r)
    assert gram == mat([["1 + xt1^2", "-xt1"], ["-xt1", "2"]])
    assert determinant(gram) == parse("2 + xt1^2", T)


def test_adjugate_inverse_exact():
    r = mat([["-xt1", "1"], ["0", "1"], ["1", "0"]])
    gram = matmul(r.transpose(), r)
    inv = adjugate_inverse(gram)
    assert inv == mat(
        [
            ["2/(2 + xt1^2)", "xt1/(2 + xt1^2)"],
            ["xt1/(2 + xt1^2)", "(1 + xt1^2)/(2 + xt1^2)"],
        ]
    )
    assert matmul(inv, gram) == FMatrix.identity(2)
    assert matmul(gram, inv) == FMatrix.identity(2)


def test_adjugate_inverse_singular():
    m = mat([["xt1", "xt1"], ["xt1", "xt1"]])
    with pytest.raises(SingularMatrixError) as info:
        adjugate_inverse(m)
    assert info.value.determinant.is_zero()


def test_left_pseudo_inverse_matches_worked_example():
    r = mat([["-xt1", "1"], ["0", "1"], ["1", "0"]])
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RankDropWarning)
        left = left_pseudo_inverse(r)
    assert left == mat(
        [
            ["-xt1/(2 + xt1^2)", "xt1/(2 + xt1^2)", "2/(2 + xt1^2)"],
            ["1/(2 + xt1^2)", "(1 + xt1^2)/(2 + xt1^2)", "xt1/(2 + xt1^2)"],
        ]
    )
    assert matmul(left, r) == FMatrix.identity(2)


def test_left_pseudo_inverse_column_vector():
    r = mat([["1"], ["1"]])
    left = left_pseudo_inverse(r)
    assert left == mat([["1/2", "1/2"]])


def test_rank_drop_warning_text():
    r = mat([["-xt1", "1"], ["0", "1"], ["1", "0"]])
    with pytest.warns(RankDropWarning, match=r"rank may drop where xt1\^2 \+ 2 = 0"):
        left_pseudo_inverse(r)


def test_no_warning_for_constant_gram():
    r = mat([["1", "0"], ["0", "1"], ["0", "0"]])
    with warnings.catch_warnings():
        warnings.simplefilter("error", RankDropWarning)
        left = left_pseudo_inverse(r)
    assert left == mat([["1", "0", "0"], ["0", "1", "0"]])


def test_left_pseudo_inverse_rejects_wide():
    with pytest.raises(ExprError):
        left_pseudo_inverse(mat([["1", "2"]]))


def test_left_pseudo_inverse_rejects_rank_deficient():
    # second column is xt1 times the first, so det(R^t R) = 0
    r = mat([["1", "xt1"], ["xt2", "xt1*xt2"], ["xt3", "xt1*xt3"]])
    with pytest.raises(SingularMatrixError) as info:
        left_pseudo_inverse(r)
    assert info.value.determinant.is_zero()
    assert "det(R^t*R)" in str(info.value)


def test_matrix_algebra():
    a = mat([["xt1", "1"], ["0", "2"]])
    b = mat([["1", "0"], ["xt2", "1"]])
    assert a + b == mat([["xt1 + 1", "1"], ["xt2", "3"]])
    assert a - a == mat([["0", "0"], ["0", "0"]])
    assert -a == mat([["-xt1", "-1"], ["0", "-2"]])
    assert a * parse("2", T) == mat([["2*xt1", "2"], ["0", "4"]])


def test_subs_and_rename():
    a = mat([["xt1", "xt2^2"]])
    flipped = a.subs({"xt1": parse("-xt1", T)})
    assert flipped == mat([["-xt1", "xt2^2"]])
    renamed = a.rename({"xt1": "x1", "xt2": "x2"})
    assert renamed == FMatrix([[parse("x1", ("x1", "x2")), parse("x2^2", ("x1", "x2"))]])


def test_random_inverse_round_trip():
    rng = random.Random(2002)
    names = ("x1", "x2")
    for _ in range(15):
        n = rng.randint(2, 3)
        rows = [
            [random_poly(rng, names, degree=1, terms=2) for _ in range(n)]
            for _ in range(n)
        ]
        for i in range(n):
            rows[i][i] = Expr.constant(1)
            for j in range(i):
                rows[i][j] = Expr.constant(0)
        m = FMatrix(rows)
        inv = adjugate_inverse(m)
        assert matmul(inv, m) == FMatrix.identity(n)
        assert matmul(m, inv) == FMatrix.identity(n)


def test_random_left_inverse_property():
    rng = random.Random(2003)
    for _ in range(10):
        nrows = rng.randint(2, 4)
        ncols = rng.randint(1, min(3, nrows))
        r = full_column_rank_matrix(rng, nrows, ncols)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RankDropWarning)
            left = left_pseudo_inverse(r)
        assert matmul(left, r) == FMatrix.identity(ncols)
