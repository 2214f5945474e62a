"""Seeded random generators shared by the test modules.

Everything takes an explicit random.Random so failures reproduce; no
generator ever returns a zero denominator or a rank-deficient matrix
unless asked to.
"""

from fractions import Fraction

from algebroids import (
    Bundle,
    Chart,
    Expr,
    FMatrix,
    Section,
    make_coord_map,
)


def random_fraction(rng, span=4):
    num = rng.randint(-span, span)
    den = rng.randint(1, 3)
    return Fraction(num, den)


def random_poly(rng, names, degree=2, terms=3, span=4):
    """A random polynomial Expr; may be zero."""
    total = Expr.constant(0)
    for _ in range(rng.randint(1, terms)):
        coeff = random_fraction(rng, span)
        mono = Expr.constant(coeff)
        budget = rng.randint(0, degree)
        for _ in range(budget):
            mono = mono * Expr.variable(rng.choice(names))
        total = total + mono
    return total


def random_nonzero_poly(rng, names, degree=2, terms=3):
    while True:
        p = random_poly(rng, names, degree, terms)
        if not p.is_zero():
            return p


def random_rational(rng, names, degree=2):
    """A random rational function with a nonzero denominator."""
    num = random_poly(rng, names, degree)
    if rng.random() < 0.5:
        return num
    return num / random_nonzero_poly(rng, names, degree=1, terms=2)


def random_section(rng, bundle, degree=2):
    return Section(
        bundle,
        tuple(
            random_poly(rng, bundle.base.coords, degree)
            for _ in range(bundle.rank)
        ),
    )


def shear_map(rng, src, dst, degree=2):
    """A polynomial diffeomorphism src -> dst with polynomial inverse.

    Triangular shears: coordinate i moves by a polynomial in the
    coordinates after it, optionally flipping sign, so back
    substitution inverts the map exactly.
    """
    n = src.dim
    signs = [rng.choice((1, -1)) for _ in range(n)]
    shifts = []
    for i in range(n):
        tail = src.coords[i + 1 :]
        if tail and rng.random() < 0.8:
            shifts.append(random_poly(rng, tail, degree, terms=2))
        else:
            shifts.append(Expr.constant(random_fraction(rng, 2)))
    fwd = [
        Expr.constant(signs[i]) * src.var(src.coords[i]) + shifts[i]
        for i in range(n)
    ]
    # Invert by back substitution: the last component only shifts by a
    # constant, and each earlier one depends on later ones alone.
    inv = [None] * n
    for i in reversed(range(n)):
        expr = (Expr.variable(dst.coords[i]) - shifts[i]) * Expr.constant(
            Fraction(signs[i])
        )
        rename = {}
        for j in range(i + 1, n):
            rename[src.coords[j]] = inv[j]
        expr = expr.subs(rename)
        inv[i] = expr.subs(dict(zip(src.coords, (Expr.variable(c) for c in dst.coords))))
    return make_coord_map(src, dst, fwd, inv)


def full_column_rank_matrix(rng, nrows, ncols, degree=2, names=("x1", "x2")):
    """Random polynomial matrix whose columns stay independent.

    A unit upper-triangular block sits in ncols of the rows (shuffled),
    so some ncols x ncols minor has determinant 1.
    """
    rows = []
    for i in range(nrows):
        rows.append(
            [random_poly(rng, names, degree, terms=2) for _ in range(ncols)]
        )
    pivot_rows = rng.sample(range(nrows), ncols)
    for j, i in enumerate(pivot_rows):
        for k in range(ncols):
            if k < j:
                rows[i][k] = Expr.constant(0)
            elif k == j:
                rows[i][k] = Expr.constant(1)
    return FMatrix(rows)


def chart(n, prefix="x", name="chart"):
    return Chart(name, tuple("%s%d" % (prefix, i + 1) for i in range(n)))


def bundle(n, rank, prefix="x", frame_prefix="e", name="chart"):
    base = chart(n, prefix, name)
    return Bundle(base, tuple("%s%d" % (frame_prefix, a + 1) for a in range(rank)))
