"""Exact multivariate rational functions over the rationals.

An Expr is a quotient num/den of two polynomials with Fraction
coefficients in named variables.  A polynomial is stored sparsely as a
dict mapping exponent tuples to nonzero Fractions: with variables
("x1", "x2"), the dict {(1, 2): Fraction(3)} is 3*x1*x2^2.  The zero
polynomial is the empty dict.

Canonical form, maintained by every operation:

* the variable tuple is sorted and contains only variables that occur,
* gcd(num, den) = 1,
* den is monic in its graded-lex leading coefficient, so den is the
  constant 1 exactly when the value is a polynomial.

Structural equality of canonical forms therefore agrees with equality
of rational functions, which is what makes the exact golden tests in
this package possible.  Exprs are immutable and hashable; everything
here is a pure function.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "Expr",
    "ExprError",
    "ParseError",
    "PoleError",
    "parse",
    "differentiate",
    "substitute",
    "evaluate",
    "equals",
]


class ExprError(Exception):
    """Base class for symbolic-engine errors."""


class ParseError(ExprError):
    """Malformed expression text; carries the character position."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


class PoleError(ExprError, ZeroDivisionError):
    """Division by an identically-zero expression, or evaluation at a pole."""


# ---------------------------------------------------------------------------
# Raw polynomial helpers.  A "poly" is a dict {exponent tuple: Fraction},
# all tuples of one length (the arity), no zero coefficients stored.


def _grlex(mono):
    return (sum(mono), mono)


def _plead(p):
    """Graded-lex leading monomial of a nonzero poly."""
    return max(p, key=_grlex)


def _pisconst(p):
    return not p or (len(p) == 1 and not any(next(iter(p))))


def _pone(arity):
    return {(0,) * arity: Fraction(1)}


def _pisone(p):
    if len(p) != 1:
        return False
    mono, c = next(iter(p.items()))
    return c == 1 and not any(mono)


def _pconst(value, arity):
    c = Fraction(value)
    return {(0,) * arity: c} if c else {}


def _padd(p, q):
    out = dict(p)
    for mono, c in q.items():
        s = out.get(mono, 0) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def _pneg(p):
    return {mono: -c for mono, c in p.items()}


def _psub(p, q):
    return _padd(p, _pneg(q))


def _pscale(p, c):
    c = Fraction(c)
    if not c:
        return {}
    return {mono: cf * c for mono, cf in p.items()}


def _pmul(p, q):
    if not p or not q:
        return {}
    if _pisone(p):
        return q
    if _pisone(q):
        return p
    out = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            mono = tuple(a + b for a, b in zip(m1, m2))
            s = out.get(mono, 0) + c1 * c2
            if s:
                out[mono] = s
            else:
                del out[mono]
    return out


def _ppow(p, k):
    arity = len(next(iter(p))) if p else 0
    out = _pone(arity)
    base = p
    while k:
        if k & 1:
            out = _pmul(out, base)
        k >>= 1
        if k:
            base = _pmul(base, base)
    return out


def _pderiv(p, i):
    out = {}
    for mono, c in p.items():
        e = mono[i]
        if e:
            key = mono[:i] + (e - 1,) + mono[i + 1 :]
            s = out.get(key, 0) + c * e
            if s:
                out[key] = s
    return out


def _peval(p, vals):
    total = Fraction(0)
    for mono, c in p.items():
        term = c
        for v, e in zip(vals, mono):
            if e:
                term *= v**e
        total += term
    return total


def _pdivexact(p, d):
    """Divide p by d, assuming the division is exact."""
    if _pisone(d):
        return p
    if _pisconst(d):
        return _pscale(p, Fraction(1) / d[_plead(d)])
    quot = {}
    rem = dict(p)
    dlead = _plead(d)
    dlc = d[dlead]
    while rem:
        rlead = _plead(rem)
        mono = tuple(a - b for a, b in zip(rlead, dlead))
        if any(e < 0 for e in mono):
            raise ArithmeticError("inexact polynomial division")
        c = rem[rlead] / dlc
        quot[mono] = c
        # rem -= c * x^mono * d
        for dm, dc in d.items():
            key = tuple(a + b for a, b in zip(mono, dm))
            s = rem.get(key, 0) - c * dc
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return quot


# GCD over the integers via a subresultant pseudo-remainder sequence in
# the highest variable shared by both polynomials, recursing on the
# coefficients.  Rational coefficients are cleared to integers first;
# the fraction-free sequence keeps the integer growth polynomial, where
# a primitive sequence over Q drowns in huge Fraction normalizations.
#
# The "univariate view" of a poly in variable i is a dict {exponent of
# i: coefficient poly}, where the coefficient polys keep full arity
# with slot i zeroed out.


def _to_univ(p, i):
    out = {}
    for mono, c in p.items():
        e = mono[i]
        key = mono[:i] + (0,) + mono[i + 1 :]
        coeff = out.setdefault(e, {})
        coeff[key] = c
    return out


def _from_univ(u, i):
    out = {}
    for e, coeff in u.items():
        for mono, c in coeff.items():
            out[mono[:i] + (e,) + mono[i + 1 :]] = c
    return out


def _uprem(a, b):
    """Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b (b nonzero).

    The full power of lc(b) matters: the subresultant divisions below
    are exact only for this normalization, so degree skips have to be
    compensated at the end.
    """
    db = max(b)
    lb = b[db]
    a = dict(a)
    steps = 0
    needed = (max(a) - db + 1) if a else 0
    while a:
        da = max(a)
        if da < db:
            break
        steps += 1
        la = a.pop(da)
        # a := lb*a - la*x^(da-db)*b, which kills the degree-da term.
        a = {e: _pmul(lb, c) for e, c in a.items()}
        for e, c in b.items():
            if e == db:
                continue
            key = e + da - db
            s = _psub(a.get(key, {}), _pmul(la, c))
            if s:
                a[key] = s
            else:
                a.pop(key, None)
    if a and needed > steps:
        lbp = _zpow(lb, needed - steps)
        a = {e: _pmul(c, lbp) for e, c in a.items()}
    return a


def _zclear(p):
    """Scale a poly to integer coefficients (constant factors are free)."""
    mult = 1
    for c in p.values():
        d = c.denominator if isinstance(c, Fraction) else 1
        mult = mult * d // math.gcd(mult, d)
    return {m: int(c * mult) for m, c in p.items()}


def _zcontent(p):
    g = 0
    for c in p.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _zdivexact(p, d):
    """Exact division of integer polys; raises if the division fails."""
    if not p:
        return p
    if _pisconst(d):
        c = d[next(iter(d))]
        if c == 1:
            return p
        out = {}
        for m, v in p.items():
            quot, rem = divmod(v, c)
            if rem:
                raise ArithmeticError("inexact integer polynomial division")
            out[m] = quot
        return out
    quot = {}
    rem = dict(p)
    dlead = _plead(d)
    dlc = d[dlead]
    while rem:
        rlead = _plead(rem)
        mono = tuple(x - y for x, y in zip(rlead, dlead))
        if any(e < 0 for e in mono):
            raise ArithmeticError("inexact polynomial division")
        c, leftover = divmod(rem[rlead], dlc)
        if leftover:
            raise ArithmeticError("inexact integer polynomial division")
        quot[mono] = c
        for dm, dc in d.items():
            key = tuple(x + y for x, y in zip(mono, dm))
            s = rem.get(key, 0) - c * dc
            if s:
                rem[key] = s
            else:
                rem.pop(key, None)
    return quot


def _zpow(p, k):
    out = {(0,) * len(next(iter(p))): 1} if k == 0 else p
    for _ in range(k - 1):
        out = _pmul(out, p)
    return out


def _zucontent(u):
    g = None
    for coeff in u.values():
        g = dict(coeff) if g is None else _zgcd(g, coeff)
        if _pisconst(g) and abs(g[next(iter(g))]) == 1:
            break
    return g


def _zgcd(p, q):
    """Gcd of two nonzero integer polys, integer-primitive, lead > 0."""
    ip, iq = _zcontent(p), _zcontent(q)
    g0 = math.gcd(ip, iq)
    if ip != 1:
        p = {m: c // ip for m, c in p.items()}
    if iq != 1:
        q = {m: c // iq for m, c in q.items()}
    arity = len(next(iter(p)))
    shared = set()
    for mono in p:
        shared.update(i for i, e in enumerate(mono) if e)
    used_q = set()
    for mono in q:
        used_q.update(i for i, e in enumerate(mono) if e)
    shared &= used_q
    if not shared:
        return {(0,) * arity: g0}
    i = max(shared)
    up, uq = _to_univ(p, i), _to_univ(q, i)
    cp, cq = _zucontent(up), _zucontent(uq)
    content = _zgcd(cp, cq)
    a = {e: _zdivexact(k, cp) for e, k in up.items()}
    b = {e: _zdivexact(k, cq) for e, k in uq.items()}
    if max(a) < max(b):
        a, b = b, a
    one = {(0,) * arity: 1}
    g, h = one, one
    res = None
    while True:
        delta = max(a) - max(b)
        r = _uprem(a, b)
        if not r:
            res = b
            break
        if max(r) == 0:
            break
        divisor = _pmul(g, _zpow(h, delta))
        a, b = b, {e: _zdivexact(k, divisor) for e, k in r.items()}
        g = a[max(a)]
        if delta:
            h = _zdivexact(_zpow(g, delta), _zpow(h, delta - 1))
    if res is None:
        out = content
    else:
        cc = _zucontent(res)
        prim = _from_univ({e: _zdivexact(k, cc) for e, k in res.items()}, i)
        out = _pmul(prim, content)
    if g0 != 1:
        out = {m: c * g0 for m, c in out.items()}
    if out[_plead(out)] < 0:
        out = {m: -c for m, c in out.items()}
    return out


def _pgcd(p, q):
    """A gcd of two polys, up to a constant factor; gcd(0, q) is q.

    Callers re-normalize (the canonical form keeps denominators monic),
    so the result is integer-primitive rather than monic.
    """
    if not p:
        return q
    if not q:
        return p
    if _pisconst(p) or _pisconst(q):
        return _pone(len(next(iter(p))))
    return _zgcd(_zclear(p), _zclear(q))


# ---------------------------------------------------------------------------
# Expr


def _expr(variables, num, den):
    """Build an Expr assuming (variables, num, den) is already canonical."""
    e = object.__new__(Expr)
    object.__setattr__(e, "vars", variables)
    object.__setattr__(e, "num", num)
    object.__setattr__(e, "den", den)
    object.__setattr__(e, "_hash", None)
    return e


def _canon(variables, num, den, reduced=False):
    if not den:
        raise PoleError("denominator is identically zero")
    if not num:
        return ZERO
    if any(variables[i] >= variables[i + 1] for i in range(len(variables) - 1)):
        order = sorted(range(len(variables)), key=lambda i: variables[i])
        variables = tuple(variables[i] for i in order)
        num = {tuple(m[i] for i in order): c for m, c in num.items()}
        den = {tuple(m[i] for i in order): c for m, c in den.items()}
    if not reduced and not _pisone(den):
        g = _pgcd(num, den)
        if not _pisone(g):
            num = _pdivexact(num, g)
            den = _pdivexact(den, g)
    # Trim after reduction: cancellation can make variables disappear.
    used = set()
    for mono in num:
        used.update(i for i, e in enumerate(mono) if e)
    for mono in den:
        used.update(i for i, e in enumerate(mono) if e)
    if len(used) < len(variables):
        keep = sorted(used)
        variables = tuple(variables[i] for i in keep)
        num = {tuple(m[i] for i in keep): c for m, c in num.items()}
        den = {tuple(m[i] for i in keep): c for m, c in den.items()}
    lc = den[_plead(den)]
    if lc != 1:
        inv = 1 / lc
        num = {m: c * inv for m, c in num.items()}
        den = {m: c * inv for m, c in den.items()}
    return _expr(variables, num, den)


def _coerce(value):
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction)):
        return Expr.constant(value)
    return None


def _align(a, b):
    """Embed two Exprs into their union variable universe."""
    if a.vars == b.vars:
        return a.vars, a.num, a.den, b.num, b.den
    merged = tuple(sorted(set(a.vars) | set(b.vars)))
    pos = {v: i for i, v in enumerate(merged)}
    return (
        merged,
        _embed(a.num, a.vars, pos, len(merged)),
        _embed(a.den, a.vars, pos, len(merged)),
        _embed(b.num, b.vars, pos, len(merged)),
        _embed(b.den, b.vars, pos, len(merged)),
    )


def _embed(p, old, pos, arity):
    slots = [pos[v] for v in old]
    out = {}
    for mono, c in p.items():
        key = [0] * arity
        for s, e in zip(slots, mono):
            key[s] = e
        out[tuple(key)] = c
    return out


class Expr:
    """A rational function in canonical form.

    Build one with parse(), Expr.variable() or Expr.constant(); the
    arithmetic operators, diff() and subs() do the rest.
    """

    __slots__ = ("vars", "num", "den", "_hash")

    def __init__(self):
        raise TypeError("use parse(), Expr.variable() or Expr.constant()")

    def __setattr__(self, name, value):
        raise AttributeError("Expr is immutable")

    @classmethod
    def variable(cls, name):
        if not _name_ok(name):
            raise ExprError("bad variable name %r" % (name,))
        return _expr((name,), {(1,): Fraction(1)}, {(0,): Fraction(1)})

    @classmethod
    def constant(cls, value):
        c = Fraction(value)
        if not c:
            return ZERO
        return _expr((), {(): c}, {(): Fraction(1)})

    # -- predicates ---------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_constant(self):
        return not self.vars

    def constant_value(self):
        """The Fraction value of a constant Expr."""
        if self.vars:
            raise ExprError("not a constant: %s" % self)
        if not self.num:
            return Fraction(0)
        return self.num[()] / self.den[()]

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        variables, n1, d1, n2, d2 = _align(self, other)
        if d1 == d2:
            num = _padd(n1, n2)
            return _canon(variables, num, d1, reduced=_pisone(d1))
        num = _padd(_pmul(n1, d2), _pmul(n2, d1))
        return _canon(variables, num, _pmul(d1, d2))

    __radd__ = __add__

    def __neg__(self):
        if not self.num:
            return self
        return _expr(self.vars, _pneg(self.num), self.den)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return ZERO
        variables, n1, d1, n2, d2 = _align(self, other)
        if not (_pisone(d1) and _pisone(d2)):
            # Cross-cancel: each side is reduced, so removing
            # gcd(n1, d2) and gcd(n2, d1) leaves a reduced product.
            g = _pgcd(n1, d2)
            if not _pisone(g):
                n1, d2 = _pdivexact(n1, g), _pdivexact(d2, g)
            g = _pgcd(n2, d1)
            if not _pisone(g):
                n2, d1 = _pdivexact(n2, g), _pdivexact(d1, g)
        return _canon(variables, _pmul(n1, n2), _pmul(d1, d2), reduced=True)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            raise PoleError("division by zero expression")
        if not self.num:
            return ZERO
        variables, n1, d1, n2, d2 = _align(self, other)
        g = _pgcd(n1, n2)
        if not _pisone(g):
            n1, n2 = _pdivexact(n1, g), _pdivexact(n2, g)
        g = _pgcd(d2, d1)
        if not _pisone(g):
            d2, d1 = _pdivexact(d2, g), _pdivexact(d1, g)
        return _canon(variables, _pmul(n1, d2), _pmul(d1, n2), reduced=True)

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValueError("negative power; divide explicitly instead")
        if k == 0:
            return ONE
        if k == 1:
            return self
        if not self.num:
            return ZERO
        # num/den reduced implies num^k/den^k reduced; den stays monic.
        return _canon(self.vars, _ppow(self.num, k), _ppow(self.den, k), reduced=True)

    # -- calculus and composition ------------------------------------

    def diff(self, name):
        """Exact partial derivative with respect to the named variable."""
        if name not in self.vars:
            return ZERO
        i = self.vars.index(name)
        dn = _pderiv(self.num, i)
        if _pisone(self.den):
            return _canon(self.vars, dn, self.den, reduced=True)
        dd = _pderiv(self.den, i)
        num = _psub(_pmul(dn, self.den), _pmul(self.num, dd))
        return _canon(self.vars, num, _pmul(self.den, self.den))

    def subs(self, mapping):
        """Substitute Exprs (or numbers) for variables; unmapped variables stay."""
        repl = {}
        for name, value in mapping.items():
            v = _coerce(value)
            if v is None:
                raise ExprError("cannot substitute %r for %s" % (value, name))
            repl[name] = v
        if not any(name in repl for name in self.vars):
            return self
        num = _subs_poly(self.vars, self.num, repl)
        den = _subs_poly(self.vars, self.den, repl)
        if den.is_zero():
            raise PoleError("substitution makes the denominator identically zero")
        return num / den

    def evaluate(self, point):
        """Exact Fraction value of the Expr at a point {name: rational}."""
        vals = []
        for name in self.vars:
            if name not in point:
                raise ExprError("no value for variable %s" % name)
            vals.append(Fraction(point[name]))
        dv = _peval(self.den, vals)
        if not dv:
            raise PoleError("denominator vanishes at the given point")
        return _peval(self.num, vals) / dv

    # -- equality and printing ----------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return (
            self.vars == other.vars
            and self.num == other.num
            and self.den == other.den
        )

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash(
                (
                    self.vars,
                    tuple(sorted(self.num.items())),
                    tuple(sorted(self.den.items())),
                )
            )
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return bool(self.num)

    def __str__(self):
        if _pisone(self.den):
            return _fmt_poly(self.vars, self.num)
        return "(%s)/(%s)" % (
            _fmt_poly(self.vars, self.num),
            _fmt_poly(self.vars, self.den),
        )

    def __repr__(self):
        return "Expr(%r)" % (str(self),)


ZERO = _expr((), {}, {(): Fraction(1)})
ONE = _expr((), {(): Fraction(1)}, {(): Fraction(1)})


def _subs_poly(variables, p, repl):
    # Precompute replacement powers up to the largest exponent needed.
    maxes = [0] * len(variables)
    for mono in p:
        for i, e in enumerate(mono):
            if e > maxes[i]:
                maxes[i] = e
    powers = []
    for i, name in enumerate(variables):
        base = repl.get(name)
        if base is None:
            base = Expr.variable(name)
        row = [ONE]
        for _ in range(maxes[i]):
            row.append(row[-1] * base)
        powers.append(row)
    total = ZERO
    for mono, c in p.items():
        term = Expr.constant(c)
        for i, e in enumerate(mono):
            if e:
                term = term * powers[i][e]
        total = total + term
    return total


def _fmt_mono(variables, mono):
    parts = []
    for v, e in zip(variables, mono):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append("%s^%d" % (v, e))
    return "*".join(parts)


def _fmt_poly(variables, p):
    if not p:
        return "0"
    pieces = []
    for mono in sorted(p, key=_grlex, reverse=True):
        c = p[mono]
        m = _fmt_mono(variables, mono)
        if not m:
            body = str(abs(c))
        elif abs(c) == 1:
            body = m
        else:
            body = "%s*%s" % (abs(c), m)
        pieces.append((c < 0, body))
    neg, body = pieces[0]
    out = ("-" + body) if neg else body
    for neg, body in pieces[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _name_ok(name):
    return (
        isinstance(name, str)
        and len(name) > 0
        and (name[0].isalpha() or name[0] == "_")
        and all(ch.isalnum() or ch == "_" for ch in name)
    )


# ---------------------------------------------------------------------------
# Parser.  Grammar (documented in the README):
#
#   expr   := term (("+" | "-") term)*
#   term   := factor (("*" | "/") factor)*
#   factor := ("+" | "-") factor | power
#   power  := atom ("^" integer)?
#   atom   := integer | variable | "(" expr ")"


def _tokenize(text):
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j], i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError("unexpected character %r" % ch, i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text, variables):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.vars = variables

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind, what):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError("expected %s" % what, tok[2])
        return tok

    def parse_expr(self):
        value = self.parse_term()
        while self.peek()[0] in "+-":
            op = self.advance()
            rhs = self.parse_term()
            value = value + rhs if op[0] == "+" else value - rhs
        return value

    def parse_term(self):
        value = self.parse_factor()
        while self.peek()[0] in "*/":
            op = self.advance()
            rhs = self.parse_factor()
            if op[0] == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise PoleError(
                        "division by zero at position %d" % op[2]
                    )
                value = value / rhs
        return value

    def parse_factor(self):
        tok = self.peek()
        if tok[0] in "+-":
            self.advance()
            inner = self.parse_factor()
            return inner if tok[0] == "+" else -inner
        return self.parse_power()

    def parse_power(self):
        base = self.parse_atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("int", "a nonnegative integer exponent")
            return base ** int(tok[1])
        return base

    def parse_atom(self):
        tok = self.advance()
        if tok[0] == "int":
            return Expr.constant(int(tok[1]))
        if tok[0] == "name":
            if tok[1] not in self.vars:
                raise ParseError("unknown variable %r" % tok[1], tok[2])
            return Expr.variable(tok[1])
        if tok[0] == "(":
            value = self.parse_expr()
            self.expect(")", "a closing parenthesis")
            return value
        raise ParseError("expected a number, variable or parenthesis", tok[2])


def parse(text, variables):
    """Parse expression text over the given variable names into an Expr."""
    names = list(variables)
    if len(set(names)) != len(names):
        raise ExprError("duplicate variable names: %r" % (names,))
    for name in names:
        if not _name_ok(name):
            raise ExprError("bad variable name %r" % (name,))
    parser = _Parser(text, set(names))
    value = parser.parse_expr()
    end = parser.advance()
    if end[0] != "end":
        raise ParseError("unexpected %r" % end[1], end[2])
    return value


def differentiate(e, name):
    """Exact partial derivative of e with respect to the named variable."""
    return e.diff(name)


def substitute(e, mapping):
    """Compose e with the given variable replacements."""
    return e.subs(mapping)


def evaluate(e, point):
    """Exact Fraction value of e at the point."""
    return e.evaluate(point)


def equals(a, b):
    """True iff a - b normalizes to zero."""
    a = _coerce(a)
    b = _coerce(b)
    if a is None or b is None:
        raise ExprError("equals() wants Exprs or numbers")
    return a == b
