"""The built-in worked example and its reproduction checks.

The data below describes one three-input control system, its pullback
under the point reflection s_O, the rank-2 frame (t1, t2) spanning the
transformed directions, and the reduction/pseudo-inverse chain between
them.  verify_paper() re-derives every displayed identity of that
worked example from scratch and compares exactly; it takes no
tolerances and no random seeds.

The expected matrices are kept in a mutable container so tests can
inject faults and watch the right check fail.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

from .algebroid import (
    AlgebroidModel,
    anchor_derivation,
    bracket,
    induced_anchor,
)
from .bundle import (
    Bundle,
    Chart,
    VBMorphism,
    apply_morphism,
    compose,
    identity_map,
    make_coord_map,
    tangent_bundle,
)
from .control import ControlSystem, verify_transform
from .matcalc import (
    FMatrix,
    RankDropWarning,
    adjugate_inverse,
    determinant,
    left_pseudo_inverse,
    matmul,
)
from .report import Report
from .symexpr import parse

__all__ = ["WorkedExample", "builtin_data", "verify_paper"]

CHECKS = (
    "transform-equivalence",
    "factorization",
    "gram-matrix",
    "gram-determinant",
    "gram-inverse",
    "left-inverse",
    "reduction-inverse",
    "morphism-composition",
    "frame-bracket",
    "induced-anchor",
)


@dataclass
class WorkedExample:
    """All inputs and expected outputs of the built-in example."""

    x_chart: Chart
    t_chart: Chart
    mirror: object  # x chart -> t chart, both components -identity
    s_o: object  # the same reflection as a self-map of the t chart
    sys_hat: ControlSystem
    sys_tilde: ControlSystem
    frame: Bundle
    tangent: Bundle
    rho: FMatrix
    r: FMatrix
    g_display: FMatrix
    m_tilde: FMatrix
    rtr_expected: FMatrix
    det_expected: object
    rtr_inv_expected: FMatrix
    r_left_expected: FMatrix
    g_tilde_x_expected: FMatrix
    classical: AlgebroidModel
    generalized: AlgebroidModel


def _mat(rows, names):
    return FMatrix([[parse(e, names) for e in row] for row in rows])


def builtin_data():
    """A fresh copy of the worked-example data."""
    x_chart = Chart("sigma", ("x1", "x2", "x3"))
    t_chart = Chart("sigma_tilde", ("xt1", "xt2", "xt3"))
    xn, tn = x_chart.coords, t_chart.coords

    neg_x = tuple(-x_chart.var(c) for c in xn)
    neg_t = tuple(-t_chart.var(c) for c in tn)
    mirror = make_coord_map(x_chart, t_chart, neg_x, neg_t)
    s_o = make_coord_map(t_chart, t_chart, neg_t, neg_t)

    m_hat = _mat([["0", "-x2", "1"], ["-x1", "-x2", "1"], ["1", "0", "0"]], xn)
    m_tilde = _mat(
        [["0", "-xt2", "-1"], ["-xt1", "-xt2", "-1"], ["-1", "0", "0"]], tn
    )
    inputs = ("y1", "y2", "y3")
    lag = "1/2*(y1^2 + y2^2 + y3^2)"
    sys_hat = ControlSystem(x_chart, m_hat, inputs, parse(lag, xn + inputs))
    sys_tilde = ControlSystem(t_chart, m_tilde, inputs, parse(lag, tn + inputs))

    frame = Bundle(t_chart, ("t1", "t2"))
    tangent = tangent_bundle(t_chart)
    rho = _mat([["1", "0", "0"], ["xt1", "xt2", "1"]], tn)
    r = _mat([["-xt1", "1"], ["0", "1"], ["1", "0"]], tn)
    g_display = _mat([["xt1", "-1"], ["0", "-1"], ["-1", "0"]], tn)

    rtr_expected = _mat([["1 + xt1^2", "-xt1"], ["-xt1", "2"]], tn)
    det_expected = parse("2 + xt1^2", tn)
    rtr_inv_expected = _mat(
        [
            ["2/(2 + xt1^2)", "xt1/(2 + xt1^2)"],
            ["xt1/(2 + xt1^2)", "(1 + xt1^2)/(2 + xt1^2)"],
        ],
        tn,
    )
    r_left_expected = _mat(
        [
            ["-xt1/(2 + xt1^2)", "xt1/(2 + xt1^2)", "2/(2 + xt1^2)"],
            ["1/(2 + xt1^2)", "(1 + xt1^2)/(2 + xt1^2)", "xt1/(2 + xt1^2)"],
        ],
        tn,
    )
    g_tilde_x_expected = _mat(
        [
            ["x1/(2 + x1^2)", "-x1/(2 + x1^2)", "-2/(2 + x1^2)"],
            ["-1/(2 + x1^2)", "(-1 - x1^2)/(2 + x1^2)", "-x1/(2 + x1^2)"],
        ],
        xn,
    )

    structure = {(1, 1, 2): parse("1", tn)}
    classical = AlgebroidModel.from_table(frame, rho, structure)
    generalized = AlgebroidModel.from_table(frame, rho, structure, h=s_o, eta=s_o)

    return WorkedExample(
        x_chart=x_chart,
        t_chart=t_chart,
        mirror=mirror,
        s_o=s_o,
        sys_hat=sys_hat,
        sys_tilde=sys_tilde,
        frame=frame,
        tangent=tangent,
        rho=rho,
        r=r,
        g_display=g_display,
        m_tilde=m_tilde,
        rtr_expected=rtr_expected,
        det_expected=det_expected,
        rtr_inv_expected=rtr_inv_expected,
        r_left_expected=r_left_expected,
        g_tilde_x_expected=g_tilde_x_expected,
        classical=classical,
        generalized=generalized,
    )


def _matrix_witness(got, want):
    if got.shape() != want.shape():
        return "shapes differ: %s vs %s" % (got.shape(), want.shape())
    for i in range(got.nrows):
        for j in range(got.ncols):
            if got[i, j] != want[i, j]:
                return "entry (%d,%d): got %s, wanted %s" % (
                    i + 1,
                    j + 1,
                    got[i, j],
                    want[i, j],
                )
    return ""


def verify_paper(data=None):
    """Re-derive the worked example's identities; all comparisons exact."""
    if data is None:
        data = builtin_data()
    report = Report()

    def run(name, fn):
        try:
            passed, witness = fn()
        except Exception as err:  # a broken input should fail its check, not the run
            passed, witness = False, "error: %s" % err
        report.add(name, passed, witness if not passed else "")

    def transform_equivalence():
        ok = verify_transform(data.sys_hat, data.sys_tilde, data.mirror)
        return ok, "pullback of the system matrix does not match"

    def factorization():
        got = matmul(data.g_display, data.rho)
        return got == data.m_tilde, _matrix_witness(got, data.m_tilde)

    def gram_matrix():
        got = matmul(data.r.transpose(), data.r)
        return got == data.rtr_expected, _matrix_witness(got, data.rtr_expected)

    def gram_determinant():
        got = determinant(matmul(data.r.transpose(), data.r))
        return got == data.det_expected, "got %s, wanted %s" % (
            got,
            data.det_expected,
        )

    def gram_inverse():
        got = adjugate_inverse(matmul(data.r.transpose(), data.r))
        return got == data.rtr_inv_expected, _matrix_witness(
            got, data.rtr_inv_expected
        )

    def left_inverse():
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RankDropWarning)
            got = left_pseudo_inverse(data.r)
        if got != data.r_left_expected:
            return False, _matrix_witness(got, data.r_left_expected)
        prod = matmul(got, data.r)
        eye = FMatrix.identity(2)
        return prod == eye, _matrix_witness(prod, eye)

    def reduction_inverse():
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RankDropWarning)
            r_left = left_pseudo_inverse(data.r)
        renaming = dict(zip(data.t_chart.coords, data.x_chart.coords))
        g_tilde = (-r_left).rename(renaming)
        if g_tilde != data.g_tilde_x_expected:
            return False, _matrix_witness(g_tilde, data.g_tilde_x_expected)
        prod = matmul(g_tilde, data.g_display.rename(renaming))
        eye = FMatrix.identity(2)
        return prod == eye, _matrix_witness(prod, eye)

    def morphism_composition():
        ident = identity_map(data.t_chart)
        r_morph = VBMorphism(data.tangent, data.frame, ident, data.r)
        tso = VBMorphism(data.tangent, data.tangent, data.s_o, -FMatrix.identity(3))
        g_morph = VBMorphism.from_display(
            data.tangent, data.frame, data.s_o, data.g_display
        )
        got = compose(r_morph, tso)
        if got.matrix != g_morph.matrix:
            return False, _matrix_witness(got.matrix, g_morph.matrix)
        if got.base != g_morph.base:
            return False, "base maps differ"
        z = data.tangent.section(["xt2", "1 + xt1", "xt3^2"])
        lhs = apply_morphism(got, z)
        rhs = apply_morphism(r_morph, apply_morphism(tso, z))
        return lhs == rhs, "composite acts differently on a sample section"

    def frame_bracket():
        t1 = data.frame.frame_section(0)
        t2 = data.frame.frame_section(1)
        got = bracket(data.classical, t1, t2)
        return got == t1, "[t1,t2] = %s, wanted t1" % got

    def induced():
        theta = induced_anchor(data.generalized)
        if theta.matrix != -data.rho:
            return False, _matrix_witness(theta.matrix, -data.rho)
        if not theta.base.is_identity():
            return False, "induced anchor base map is not the identity"
        tso = VBMorphism(data.tangent, data.tangent, data.s_o, -FMatrix.identity(3))
        rho_eta = VBMorphism(data.frame, data.tangent, data.s_o, data.rho)
        got = compose(tso, rho_eta)
        if got.matrix != theta.matrix or got.base != theta.base:
            return False, "composition through the tangent lift differs"
        for a in range(data.frame.rank):
            u = data.frame.frame_section(a)
            for j, name in enumerate(data.t_chart.coords):
                f = data.t_chart.var(name)
                lhs = anchor_derivation(data.generalized, u, f)
                if lhs != theta.matrix[a, j]:
                    return False, "derivation of %s along %s is %s, not %s" % (
                        name,
                        data.frame.frame[a],
                        lhs,
                        theta.matrix[a, j],
                    )
        return True, ""

    run("transform-equivalence", transform_equivalence)
    run("factorization", factorization)
    run("gram-matrix", gram_matrix)
    run("gram-determinant", gram_determinant)
    run("gram-inverse", gram_inverse)
    run("left-inverse", left_inverse)
    run("reduction-inverse", reduction_inverse)
    run("morphism-composition", morphism_composition)
    run("frame-bracket", frame_bracket)
    run("induced-anchor", induced)
    return report
