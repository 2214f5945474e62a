"""Anchored brackets on a framed bundle, and their axiom checkers.

A model consists of an anchor matrix rho (rows indexed by the frame,
columns by the base coordinates), structure functions C^gamma_{alpha
beta} expressing the brackets of frame sections, and two base
diffeomorphisms h and eta that twist how sections differentiate
functions:

    a(u)(f) = u^alpha * rho[alpha][i] * (d(f o h)/dx^i) o h^-1.

The bracket of arbitrary sections is the Leibniz extension of the
frame brackets:

    [u,v]^gamma = u^alpha v^beta C^gamma_{alpha beta}
                  + a(u)(v^gamma) - a(v)(u^gamma),

so the Leibniz rule holds by construction, while antisymmetry needs
C^gamma_{alpha beta} = -C^gamma_{beta alpha} (enforced structurally)
and Jacobi plus the anchor-morphism property remain genuine checks.

The Jacobi convention used throughout is the cyclic sum
[u,[v,z]] + [z,[u,v]] + [v,[z,u]].
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .bundle import (
    Bundle,
    Chart,
    CoordMap,
    GeometryError,
    Section,
    VBMorphism,
    identity_map,
    pullback,
    tangent_bundle,
)
from .matcalc import FMatrix
from .symexpr import Expr

__all__ = [
    "AlgebroidModel",
    "AxiomReport",
    "CheckItem",
    "BulletInstance",
    "anchor_derivation",
    "induced_anchor",
    "bracket",
    "check_axioms",
    "bullet_apply",
    "bullet_rho",
    "bullet_bracket",
    "check_bullet_jacobi",
]

_ZERO = Expr.constant(0)
_ONE = Expr.constant(1)


@dataclass(frozen=True)
class CheckItem:
    """One named verdict inside an AxiomReport."""

    name: str
    passed: bool
    witnesses: tuple = ()

    def __str__(self):
        if self.passed:
            return "PASS %s" % self.name
        shown = "; ".join(self.witnesses[:3])
        more = len(self.witnesses) - 3
        if more > 0:
            shown += "; and %d more" % more
        return "FAIL %s: %s" % (self.name, shown)


@dataclass(frozen=True)
class AxiomReport:
    items: tuple

    @property
    def ok(self):
        return all(item.passed for item in self.items)

    def item(self, name):
        for it in self.items:
            if it.name == name:
                return it
        raise KeyError(name)

    def __str__(self):
        return "\n".join(str(item) for item in self.items)


@dataclass(frozen=True)
class AlgebroidModel:
    """Frame bundle, anchor, structure functions and base maps h, eta.

    structure[alpha][beta][gamma] is C^gamma_{alpha beta}; the
    constructor checks antisymmetry in (alpha, beta).  Use from_table()
    to build the cube from a sparse {(gamma, alpha, beta): Expr} table
    (1-based, with antisymmetric partners filled in automatically).
    """

    bundle: Bundle
    anchor: FMatrix
    h: CoordMap
    eta: CoordMap
    structure: tuple

    def __post_init__(self):
        r = self.bundle.rank
        n = self.bundle.base.dim
        if self.anchor.shape() != (r, n):
            raise GeometryError(
                "anchor must be %dx%d (frame rows, coordinate columns), got %dx%d"
                % ((r, n) + self.anchor.shape())
            )
        allowed = set(self.bundle.base.coords)
        for row in self.anchor.entries:
            for e in row:
                if set(e.vars) - allowed:
                    raise GeometryError("anchor entry %s uses foreign variables" % e)
        for m, label in ((self.h, "h"), (self.eta, "eta")):
            if m.src != self.bundle.base or m.dst != self.bundle.base:
                raise GeometryError("base map %s must map the base chart to itself" % label)
        cube = tuple(
            tuple(tuple(row) for row in plane) for plane in self.structure
        )
        object.__setattr__(self, "structure", cube)
        if len(cube) != r or any(
            len(plane) != r or any(len(row) != r for row in plane) for plane in cube
        ):
            raise GeometryError("structure cube must be rank^3")
        for a in range(r):
            for b in range(r):
                for g in range(r):
                    if cube[a][b][g] != -cube[b][a][g]:
                        raise GeometryError(
                            "structure functions are not antisymmetric: "
                            "C^%d_{%d,%d} != -C^%d_{%d,%d}"
                            % (g + 1, a + 1, b + 1, g + 1, b + 1, a + 1)
                        )

    @classmethod
    def from_table(cls, bundle, anchor, table, h=None, eta=None):
        """Build a model from sparse structure entries.

        table maps (gamma, alpha, beta), 1-based, to C^gamma_{alpha
        beta}.  Missing antisymmetric partners are filled in; giving
        both members of a pair inconsistently is an error.
        """
        r = bundle.rank
        cube = [[[_ZERO for _ in range(r)] for _ in range(r)] for _ in range(r)]
        seen = {}
        for (g, a, b), value in table.items():
            if not (1 <= g <= r and 1 <= a <= r and 1 <= b <= r):
                raise GeometryError("structure index C[%d,%d,%d] out of range" % (g, a, b))
            value = value if isinstance(value, Expr) else Expr.constant(value)
            if a == b and not value.is_zero():
                raise GeometryError("C[%d,%d,%d] must vanish (repeated lower index)" % (g, a, b))
            for key, val in (((g, a, b), value), ((g, b, a), -value)):
                if key in seen and seen[key] != val:
                    raise GeometryError(
                        "inconsistent structure entries for C[%d,%d,%d]" % key
                    )
                seen[key] = val
        for (g, a, b), value in seen.items():
            cube[a - 1][b - 1][g - 1] = value
        if h is None:
            h = identity_map(bundle.base)
        if eta is None:
            eta = identity_map(bundle.base)
        return cls(bundle, anchor, h, eta, cube)

    def c(self, gamma, alpha, beta):
        """C^gamma_{alpha beta}, 0-based indices."""
        return self.structure[alpha][beta][gamma]

    def is_classical(self):
        return self.h.is_identity() and self.eta.is_identity()


def anchor_derivation(model, u, f):
    """Apply the anchor image of section u to the function f."""
    coords = model.bundle.base.coords
    if model.h.is_identity():
        partials = [f.diff(name) for name in coords]
    else:
        back = dict(zip(coords, model.h.inverse))
        fh = pullback(f, model.h)
        partials = [fh.diff(name).subs(back) for name in coords]
    total = _ZERO
    for alpha in range(model.bundle.rank):
        if u.coeffs[alpha].is_zero():
            continue
        inner = _ZERO
        for i, p in enumerate(partials):
            inner = inner + model.anchor[alpha, i] * p
        total = total + u.coeffs[alpha] * inner
    return total


def induced_anchor(model):
    """The classical anchor morphism (theta, Id) from F to the tangent bundle.

    theta[alpha][j] = rho[alpha][i] * (dh_j/dx^i) o h^-1, which makes
    anchor_derivation(model, u, f) equal sum of u^alpha * theta[alpha][j]
    * df/dx^j for every u and f.
    """
    chart = model.bundle.base
    if model.h.is_identity():
        theta = model.anchor
    else:
        back = dict(zip(chart.coords, model.h.inverse))
        jac = [
            [comp.diff(name).subs(back) for comp in model.h.forward]
            for name in chart.coords
        ]  # jac[i][j] = (dh_j/dx^i) o h^-1
        rows = []
        for alpha in range(model.bundle.rank):
            row = []
            for j in range(chart.dim):
                total = _ZERO
                for i in range(chart.dim):
                    total = total + model.anchor[alpha, i] * jac[i][j]
                row.append(total)
            rows.append(row)
        theta = FMatrix(rows)
    return VBMorphism(model.bundle, tangent_bundle(chart), identity_map(chart), theta)


def bracket(model, u, v):
    """The bracket [u, v] as a section of the model's bundle."""
    r = model.bundle.rank
    coeffs = []
    for gamma in range(r):
        total = _ZERO
        for alpha in range(r):
            ua = u.coeffs[alpha]
            if ua.is_zero():
                continue
            for beta in range(r):
                cab = model.structure[alpha][beta][gamma]
                if cab.is_zero():
                    continue
                total = total + ua * v.coeffs[beta] * cab
        total = total + anchor_derivation(model, u, v.coeffs[gamma])
        total = total - anchor_derivation(model, v, u.coeffs[gamma])
        coeffs.append(total)
    return Section(model.bundle, tuple(coeffs))


# ---------------------------------------------------------------------------
# Axiom checking


def _random_poly(rng, coords, degree=2, terms=3):
    e = _ZERO
    for _ in range(terms):
        term = Expr.constant(rng.choice([-3, -2, -1, 1, 2, 3]))
        for _ in range(rng.randint(0, degree)):
            term = term * Expr.variable(rng.choice(coords))
        e = e + term
    return e


def _random_section(rng, bundle):
    return Section(
        bundle,
        tuple(
            _random_poly(rng, bundle.base.coords, degree=1, terms=2)
            for _ in range(bundle.rank)
        ),
    )


def check_axioms(model, seed=0, samples=20):
    """Check antisymmetry, Jacobi, Leibniz and the anchor-morphism rule.

    Frame elements are checked exhaustively and exactly; since the
    bracket is the Leibniz extension of the frame brackets and every
    check is linear over sums, frame checks plus the Leibniz rule carry
    the axioms to all sections.  Random non-frame sections (seeded) are
    spot-checked on top of that.
    """
    rng = random.Random(seed)
    bundle = model.bundle
    r = bundle.rank
    coords = bundle.base.coords
    frames = [bundle.frame_section(i) for i in range(r)]
    items = []

    witnesses = []
    for a in range(r):
        for b in range(r):
            for g in range(r):
                if model.structure[a][b][g] != -model.structure[b][a][g]:
                    witnesses.append(
                        "C^%d_{%d,%d} + C^%d_{%d,%d} != 0"
                        % (g + 1, a + 1, b + 1, g + 1, b + 1, a + 1)
                    )
    for _ in range(samples):
        u = _random_section(rng, bundle)
        if not bracket(model, u, u).is_zero():
            witnesses.append("[u,u] != 0 for u = %s" % u)
    items.append(CheckItem("antisymmetry", not witnesses, tuple(witnesses)))

    witnesses = []
    for i, j, k in combinations(range(r), 3):
        res = _jacobi_residual(model, frames[i], frames[j], frames[k])
        if not res.is_zero():
            witnesses.append(
                "cycle on (%s,%s,%s) leaves %s"
                % (bundle.frame[i], bundle.frame[j], bundle.frame[k], res)
            )
    for _ in range(max(2, samples // 4)):
        u, v, z = (_random_section(rng, bundle) for _ in range(3))
        res = _jacobi_residual(model, u, v, z)
        if not res.is_zero():
            witnesses.append("cycle on random sections leaves %s" % res)
            break
    items.append(CheckItem("jacobi", not witnesses, tuple(witnesses)))

    witnesses = []
    fs = [Expr.variable(c) for c in coords]
    fs += [_random_poly(rng, coords) for _ in range(samples // 4)]
    for a in range(r):
        for b in range(r):
            for f in fs:
                lhs = bracket(model, frames[a], f * frames[b])
                rhs = f * bracket(model, frames[a], frames[b]) + anchor_derivation(
                    model, frames[a], f
                ) * frames[b]
                if not (lhs - rhs).is_zero():
                    witnesses.append(
                        "[%s, f*%s] breaks Leibniz for f = %s"
                        % (bundle.frame[a], bundle.frame[b], f)
                    )
    for _ in range(max(2, samples // 4)):
        u, v = _random_section(rng, bundle), _random_section(rng, bundle)
        f = _random_poly(rng, coords)
        residual = (
            bracket(model, u, f * v)
            - f * bracket(model, u, v)
            - anchor_derivation(model, u, f) * v
        )
        if not residual.is_zero():
            witnesses.append("Leibniz fails on random sections, residual %s" % residual)
            break
    items.append(CheckItem("leibniz", not witnesses, tuple(witnesses)))

    witnesses = []
    for a in range(r):
        for b in range(a + 1, r):
            lie = bracket(model, frames[a], frames[b])
            for f in fs:
                lhs = anchor_derivation(model, lie, f)
                rhs = anchor_derivation(
                    model, frames[a], anchor_derivation(model, frames[b], f)
                ) - anchor_derivation(
                    model, frames[b], anchor_derivation(model, frames[a], f)
                )
                if lhs != rhs:
                    witnesses.append(
                        "a([%s,%s]) and the commutator differ on f = %s: %s vs %s"
                        % (bundle.frame[a], bundle.frame[b], f, lhs, rhs)
                    )
    for _ in range(max(2, samples // 4)):
        u, v = _random_section(rng, bundle), _random_section(rng, bundle)
        f = _random_poly(rng, coords)
        lhs = anchor_derivation(model, bracket(model, u, v), f)
        rhs = anchor_derivation(
            model, u, anchor_derivation(model, v, f)
        ) - anchor_derivation(model, v, anchor_derivation(model, u, f))
        if lhs != rhs:
            witnesses.append("anchor-morphism fails on random sections for f = %s" % f)
            break
    items.append(CheckItem("anchor-morphism", not witnesses, tuple(witnesses)))

    return AxiomReport(tuple(items))


def _jacobi_residual(model, u, v, z):
    # [u,[v,z]] + [z,[u,v]] + [v,[z,u]]
    return (
        bracket(model, u, bracket(model, v, z))
        + bracket(model, z, bracket(model, u, v))
        + bracket(model, v, bracket(model, z, u))
    )


# ---------------------------------------------------------------------------
# The bullet bracket on derivations twisted by a module endomorphism


@dataclass(frozen=True)
class BulletInstance:
    """Derivations of the rational functions on a chart, twisted by rho.

    rho is an m x m matrix over the chart: the endomorphism sends the
    basis derivation d_j to rho[j][i] * d_i (row j = image of d_j).
    """

    chart: Chart
    rho: FMatrix

    def __post_init__(self):
        m = self.chart.dim
        if self.rho.shape() != (m, m):
            raise GeometryError(
                "endomorphism matrix must be %dx%d, got %dx%d"
                % ((m, m) + self.rho.shape())
            )

    @property
    def bundle(self):
        return tangent_bundle(self.chart)

    def derivation(self, coeffs):
        return self.bundle.section(coeffs)


def _apply_derivation(coords, x, f):
    total = _ZERO
    for name, c in zip(coords, x.coeffs):
        if not c.is_zero():
            total = total + c * f.diff(name)
    return total


def bullet_rho(inst, x, f):
    """The derivation rho(X) applied to f."""
    coords = inst.chart.coords
    total = _ZERO
    for j in range(len(coords)):
        if x.coeffs[j].is_zero():
            continue
        inner = _ZERO
        for i, name in enumerate(coords):
            inner = inner + inst.rho[j, i] * f.diff(name)
        total = total + x.coeffs[j] * inner
    return total


def bullet_apply(inst, x, y, f):
    """The operator X*Y = Y^i (X o d_i) + rho(X)(Y^i) d_i applied to f.

    This is second order in f; the bracket below subtracts the mirror
    image, and the mixed partial derivatives cancel.
    """
    coords = inst.chart.coords
    total = _ZERO
    for i, name in enumerate(coords):
        df = f.diff(name)
        total = total + y.coeffs[i] * _apply_derivation(coords, x, df)
        total = total + bullet_rho(inst, x, y.coeffs[i]) * df
    return total


def bullet_bracket(inst, x, y):
    """The bracket [X,Y] = X*Y - Y*X, returned as a first-order derivation.

    The coefficients are read off by applying the operator to each
    coordinate function, which is faithful because the second-order
    parts of X*Y and Y*X agree.
    """
    coords = inst.chart.coords
    coeffs = []
    for name in coords:
        f = Expr.variable(name)
        coeffs.append(bullet_apply(inst, x, y, f) - bullet_apply(inst, y, x, f))
    return Section(inst.bundle, tuple(coeffs))


def check_bullet_jacobi(inst, seed=0, samples=10):
    """Report Jacobi residuals of the bullet bracket on this instance.

    Residuals are computed, never assumed: basis triples first, then
    seeded random derivations.  The cycle convention matches bracket().
    """
    rng = random.Random(seed)
    bundle = inst.bundle
    m = inst.chart.dim
    basis = [bundle.frame_section(i) for i in range(m)]
    witnesses = []

    def residual(x, y, z):
        return (
            bullet_bracket(inst, x, bullet_bracket(inst, y, z))
            + bullet_bracket(inst, z, bullet_bracket(inst, x, y))
            + bullet_bracket(inst, y, bullet_bracket(inst, z, x))
        )

    for i, j, k in combinations(range(m), 3):
        res = residual(basis[i], basis[j], basis[k])
        if not res.is_zero():
            witnesses.append(
                "cycle on (%s,%s,%s) leaves %s"
                % (bundle.frame[i], bundle.frame[j], bundle.frame[k], res)
            )
    for _ in range(samples):
        x, y, z = (_random_section(rng, bundle) for _ in range(3))
        res = residual(x, y, z)
        if not res.is_zero():
            witnesses.append("cycle on random derivations leaves %s" % res)
    return AxiomReport((CheckItem("jacobi", not witnesses, tuple(witnesses)),))
