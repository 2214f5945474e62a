"""Exact matrix calculus over the rational functions.

The running example is the rank-2 reduction matrix R of the bundled
worked example: its left pseudo-inverse exists over the function
field even though R has no inverse, and every step below is symbolic.

Run as: python3 demos/02_pseudo_inverse.py
"""

import warnings

from algebroids import (
    FMatrix,
    SingularMatrixError,
    adjugate_inverse,
    builtin_data,
    determinant,
    left_pseudo_inverse,
    matmul,
    parse,
)

data = builtin_data()
r = data.r
print("R =")
print(r)

# ------------------------------------------------------------------
# The Gram matrix R^t R is square and generically invertible; its
# determinant tells us exactly where the left inverse degenerates.
gram = matmul(r.transpose(), r)
print("R^t R =")
print(gram)
print("det(R^t R) =", determinant(gram))

inv = adjugate_inverse(gram)
print("(R^t R)^-1 =")
print(inv)
print("round trip is the identity:", matmul(inv, gram) == FMatrix.identity(2))

# ------------------------------------------------------------------
# left_pseudo_inverse composes the two steps and warns where the
# determinant can vanish on the chart (here: nowhere real).
with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    left = left_pseudo_inverse(r)
print("R_left =")
print(left)
for w in caught:
    print("warning:", w.message)
print("R_left * R == I:", matmul(left, r) == FMatrix.identity(2))

# A matrix with dependent columns has no left inverse at all, and the
# failure is reported rather than returned as garbage.
names = ("x1", "x2")
dependent = FMatrix(
    [
        [parse("x1", names), parse("2*x1", names)],
        [parse("x2", names), parse("2*x2", names)],
        [parse("1", names), parse("2", names)],
    ]
)
try:
    left_pseudo_inverse(dependent)
except SingularMatrixError as err:
    print("refused:", err)
