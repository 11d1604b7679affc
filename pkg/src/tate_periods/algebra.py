"""Exact arithmetic substrate.

Rationals are `fractions.Fraction` at the API boundary and `flint.fmpq`
internally.  Multivariate polynomials are `flint.fmpq_mpoly` objects living
in a `PolyRing`, which keeps the human-readable symbol names (`x[e1+]`, `z`,
...) while flint only ever sees internal names `v0, v1, ...`.

YSeries are dictionaries {exponent tuple: RationalFunction} truncated by
total degree.
"""
from fractions import Fraction
from functools import lru_cache
import re

import flint

from .errors import AlgebraError


def to_fmpq(c):
    if isinstance(c, flint.fmpq):
        return c
    if isinstance(c, int):
        return flint.fmpq(c)
    if isinstance(c, Fraction):
        return flint.fmpq(c.numerator, c.denominator)
    if isinstance(c, flint.fmpz):
        return flint.fmpq(c)
    raise TypeError("not a rational: %r" % (c,))


def to_fraction(c):
    c = to_fmpq(c)
    return Fraction(int(c.p), int(c.q))


def fmt_rational(c):
    f = to_fraction(c)
    if f.denominator == 1:
        return str(f.numerator)
    return "%d/%d" % (f.numerator, f.denominator)


# ---------------------------------------------------------------------------
# polynomial rings

class PolyRing:
    """Q[names] with graded-lex order, symbols sorted by name."""

    def __init__(self, names):
        names = tuple(sorted(set(names)))
        if not names:
            names = ("z",)
        self.names = names
        self.index = {n: i for i, n in enumerate(names)}
        self.ctx = flint.fmpq_mpoly_ctx.get(
            tuple("v%d" % i for i in range(len(names))), "deglex")
        self._gens = self.ctx.gens()
        self._zero = self.ctx.from_dict({})
        self._one = self.ctx.constant(1)

    def __repr__(self):
        return "PolyRing(%s)" % ", ".join(self.names)

    def __contains__(self, name):
        return name in self.index

    def gen(self, name):
        return self._gens[self.index[name]]

    def const(self, c):
        return self.ctx.constant(to_fmpq(c))

    def zero_poly(self):
        return self._zero

    def one_poly(self):
        return self._one

    def internal(self, name):
        return "v%d" % self.index[name]

    # rational functions
    def rf(self, c):
        if isinstance(c, RationalFunction):
            if c.ring is not self:
                raise AlgebraError("ring mismatch: %r vs %r" % (c.ring, self))
            return c
        if isinstance(c, flint.fmpq_mpoly):
            return RationalFunction(self, c, self._one, reduced=True)
        return RationalFunction(self, self.const(c), self._one, reduced=True)

    def var(self, name):
        return RationalFunction(self, self.gen(name), self._one, reduced=True)

    def zero(self):
        return RationalFunction(self, self._zero, self._one, reduced=True)

    def one(self):
        return RationalFunction(self, self._one, self._one, reduced=True)

    def parse(self, text):
        """Parse a small arithmetic expression over the ring's symbols."""
        return _parse_expr(self, text)

    # printing
    def fmt_poly(self, p):
        d = p.to_dict()
        if not d:
            return "0"
        # graded lex, descending: total degree first, then the exponent vector
        keys = sorted(d, key=lambda e: (sum(e), e), reverse=True)
        out = []
        for e in keys:
            c = to_fraction(d[e])
            mono = "*".join(
                self.names[i] if k == 1 else "%s^%d" % (self.names[i], k)
                for i, k in enumerate(e) if k)
            a = abs(c)
            if not mono:
                body = fmt_rational(a)
            elif a == 1:
                body = mono
            else:
                body = "%s*%s" % (fmt_rational(a), mono)
            if not out:
                out.append(("-" if c < 0 else "") + body)
            else:
                out.append((" - " if c < 0 else " + ") + body)
        return "".join(out)


@lru_cache(maxsize=None)
def poly_ring(*names):
    return PolyRing(names)


# ---------------------------------------------------------------------------
# rational functions

def _mono_poly(p):
    return len(p) <= 1


class RationalFunction:
    __slots__ = ("ring", "num", "den")

    def __init__(self, ring, num, den=None, reduced=False):
        self.ring = ring
        if den is None:
            den = ring.one_poly()
        if den.is_zero():
            raise AlgebraError("zero denominator")
        if not reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    # constructors -----------------------------------------------------
    @classmethod
    def normalize(cls, ring, n, d):
        return cls(ring, n, d)

    # predicates -------------------------------------------------------
    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == self.den

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def is_poly(self):
        return self.den.is_constant()

    def depends_on(self, name):
        i = self.ring.index.get(name)
        if i is None:
            return False
        return self.num.degrees()[i] > 0 or self.den.degrees()[i] > 0

    def constant_value(self):
        if not self.is_constant():
            raise AlgebraError("not a constant: %s" % self)
        return to_fraction(self.num.leading_coefficient() if not self.num.is_zero() else 0) \
            / to_fraction(self.den.leading_coefficient())

    # arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction, flint.fmpq, flint.fmpz)):
            return self.ring.rf(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.num.is_zero():
            return self
        if self.num.is_zero():
            return other
        R = self.ring
        if self.den == other.den:
            if self.den.is_one():
                return RationalFunction(R, self.num + other.num, self.den, reduced=True)
            return RationalFunction(R, self.num + other.num, self.den)
        if self.den.is_one():
            return RationalFunction(R, self.num * other.den + other.num, other.den, reduced=True)
        if other.den.is_one():
            return RationalFunction(R, other.num * self.den + self.num, self.den, reduced=True)
        g = self.den.gcd(other.den)
        a = self.den / g
        b = other.den / g
        return RationalFunction(R, self.num * b + other.num * a, a * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(self.ring, -self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        R = self.ring
        if self.num.is_zero() or other.num.is_zero():
            return R.zero()
        if self.den.is_one() and other.den.is_one():
            return RationalFunction(R, self.num * other.num, self.den, reduced=True)
        if self.is_constant():
            return other._scale(self)
        if other.is_constant():
            return self._scale(other)
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not d2.is_one():
            g = n1.gcd(d2)
            if not g.is_one():
                n1, d2 = n1 / g, d2 / g
        if not d1.is_one():
            g = n2.gcd(d1)
            if not g.is_one():
                n2, d1 = n2 / g, d1 / g
        return _monic(R, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def _scale(self, c):
        # c constant rational function
        q = c.num.leading_coefficient() / c.den.leading_coefficient()
        return RationalFunction(self.ring, self.num * q, self.den, reduced=True)

    def inv(self):
        if self.num.is_zero():
            raise AlgebraError("division by zero")
        return _monic(self.ring, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        return RationalFunction(self.ring, self.num ** k, self.den ** k, reduced=True)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            other = self._coerce(other)
            if other is NotImplemented:
                return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((str(self.num), str(self.den)))

    # calculus and substitution -----------------------------------------
    def diff(self, name):
        if name not in self.ring.index:
            return self.ring.zero()
        v = self.ring.internal(name)
        n, d = self.num, self.den
        return RationalFunction(self.ring, n.derivative(v) * d - n * d.derivative(v), d * d)

    def subs(self, name, value):
        """Substitute a RationalFunction (or rational) for a symbol."""
        R = self.ring
        if name not in R.index:
            return self
        value = R.rf(value)
        if value.is_constant():
            q = value.num.leading_coefficient() / value.den.leading_coefficient() \
                if not value.num.is_zero() else flint.fmpq(0)
            iv = R.internal(name)
            num = self.num.subs({iv: q})
            den = self.den.subs({iv: q})
            if den.is_zero():
                raise AlgebraError("pole hit while substituting %s" % name)
            return RationalFunction(R, num, den)
        a, b = value.num, value.den
        n_h, dn = _homogenize(R, self.num, name, a, b)
        d_h, dd = _homogenize(R, self.den, name, a, b)
        # n(a/b)/d(a/b) = n_h b^{-dn} / (d_h b^{-dd})
        if dd >= dn:
            n_h = n_h * b ** (dd - dn)
        else:
            d_h = d_h * b ** (dn - dd)
        if d_h.is_zero():
            raise AlgebraError("pole hit while substituting %s" % name)
        return RationalFunction(R, n_h, d_h)

    def degree_in(self, name):
        i = self.ring.index[name]
        return self.num.degrees()[i], self.den.degrees()[i]

    def __str__(self):
        R = self.ring
        if self.den.is_one():
            return R.fmt_poly(self.num)
        ns = R.fmt_poly(self.num)
        if self.den.is_constant():
            # keep the form "p/c"
            c = to_fraction(self.den.leading_coefficient())
            inner = R.fmt_poly(self.num * flint.fmpq(1))
            if len(self.num) > 1:
                inner = "(%s)" % inner
            return "%s/%s" % (inner, fmt_rational(c))
        ds = R.fmt_poly(self.den)
        if len(self.num) > 1:
            ns = "(%s)" % ns
        if len(self.den) > 1 or not _is_simple_monomial(self.den):
            ds = "(%s)" % ds
        return "%s/%s" % (ns, ds)

    __repr__ = __str__


def _is_simple_monomial(p):
    d = p.to_dict()
    if len(d) != 1:
        return False
    (e, c), = d.items()
    return c == 1 and sum(1 for k in e if k) <= 1


def _reduce(num, den):
    if num.is_zero():
        return num, den.context().constant(1)
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num = num / g
            den = den / g
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num * inv
        den = den * inv
    return num, den


def _monic(R, num, den):
    if num.is_zero():
        return R.zero()
    lc = den.leading_coefficient()
    if lc != 1:
        inv = 1 / lc
        num = num * inv
        den = den * inv
    return RationalFunction(R, num, den, reduced=True)


def _homogenize(R, p, name, a, b):
    """Return (sum_k p_k a^k b^(D-k), D) where p = sum_k p_k name^k."""
    i = R.index[name]
    groups = {}
    for e, c in p.to_dict().items():
        k = e[i]
        e2 = list(e)
        e2[i] = 0
        groups.setdefault(k, {})[tuple(e2)] = c
    if not groups:
        return R.zero_poly(), 0
    D = max(groups)
    return _horner_fix(R, groups, D, a, b), D


def _horner_fix(R, groups, D, a, b):
    # plain evaluation: sum p_k a^k b^(D-k), done with cached powers
    apow = [R.one_poly()]
    bpow = [R.one_poly()]
    for _ in range(D):
        apow.append(apow[-1] * a)
        bpow.append(bpow[-1] * b)
    acc = R.zero_poly()
    for k, terms in groups.items():
        acc = acc + R.ctx.from_dict(terms) * apow[k] * bpow[D - k]
    return acc


def rf_normalize(ring, n, d):
    """Canonical rational function n/d (gcd removed, monic-ish denominator)."""
    return RationalFunction(ring, n, d)


# ---------------------------------------------------------------------------
# expression parsing (coordinates in graph files, CLI input)

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*(?:\[[^\]]*\])?)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise AlgebraError("cannot parse %r at %d" % (text, pos))
        pos = m.end()
        if m.group(1):
            out.append(("num", int(m.group(1))))
        elif m.group(2):
            out.append(("sym", m.group(2)))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op))
    return out


def _parse_expr(R, text):
    toks = _tokenize(text)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else (None, None)

    def take():
        t = peek()
        pos[0] += 1
        return t

    def expr():
        v = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            w = term()
            v = v + w if op == "+" else v - w
        return v

    def term():
        v = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            w = unary()
            v = v * w if op == "*" else v / w
        return v

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        v = atom()
        if peek() == ("op", "^"):
            take()
            neg = False
            if peek() == ("op", "-"):
                take()
                neg = True
            kind, k = take()
            if kind != "num":
                raise AlgebraError("integer exponent expected in %r" % text)
            v = v ** (-k if neg else k)
        return v

    def atom():
        kind, val = take()
        if kind == "num":
            return R.rf(val)
        if kind == "sym":
            if val not in R.index:
                raise AlgebraError("unknown symbol %s in %r" % (val, text))
            return R.var(val)
        if (kind, val) == ("op", "("):
            v = expr()
            if take() != ("op", ")"):
                raise AlgebraError("missing ) in %r" % text)
            return v
        raise AlgebraError("unexpected token %r in %r" % (val, text))

    v = expr()
    if pos[0] != len(toks):
        raise AlgebraError("trailing input in %r" % text)
    return v


# ---------------------------------------------------------------------------
# truncated power series in the y_e

def _deg(e):
    return sum(e)


class YSeries:
    """Truncated power series sum_a c_a y^a, total degree of a <= order.

    `yvars` names the variables (edge ids), `terms` maps exponent tuples to
    nonzero RationalFunctions.
    """
    __slots__ = ("ring", "yvars", "order", "terms")

    def __init__(self, ring, yvars, order, terms=None):
        self.ring = ring
        self.yvars = tuple(yvars)
        self.order = order
        self.terms = terms if terms is not None else {}

    # constructors -----------------------------------------------------
    @classmethod
    def const(cls, ring, yvars, order, c):
        c = ring.rf(c)
        t = {} if c.is_zero() else {(0,) * len(yvars): c}
        return cls(ring, yvars, order, t)

    @classmethod
    def y(cls, ring, yvars, order, name, power=1):
        yvars = tuple(yvars)
        if power > order:
            return cls(ring, yvars, order)
        e = tuple(power if v == name else 0 for v in yvars)
        return cls(ring, yvars, order, {e: ring.one()})

    def like(self, terms, order=None):
        return YSeries(self.ring, self.yvars, self.order if order is None else order, terms)

    def zero_like(self):
        return YSeries(self.ring, self.yvars, self.order)

    def const_like(self, c):
        return YSeries.const(self.ring, self.yvars, self.order, c)

    # queries -----------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def constant_term(self):
        return self.terms.get((0,) * len(self.yvars), self.ring.zero())

    def coeff(self, e):
        return self.terms.get(tuple(e), self.ring.zero())

    def valuation(self):
        if not self.terms:
            return self.order + 1
        return min(_deg(e) for e in self.terms)

    def truncate(self, n):
        if n >= self.order:
            return YSeries(self.ring, self.yvars, n if n < self.order else self.order, dict(self.terms))
        return YSeries(self.ring, self.yvars, n,
                       {e: c for e, c in self.terms.items() if _deg(e) <= n})

    def by_degree(self):
        out = {}
        for e, c in self.terms.items():
            out.setdefault(_deg(e), []).append((e, c))
        return out

    # arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, YSeries):
            if other.yvars != self.yvars:
                raise AlgebraError("y-variable mismatch")
            return other
        return self.const_like(other)

    def __add__(self, other):
        other = self._coerce(other)
        n = min(self.order, other.order)
        t = {e: c for e, c in self.terms.items() if _deg(e) <= n}
        for e, c in other.terms.items():
            if _deg(e) > n:
                continue
            if e in t:
                s = t[e] + c
                if s.is_zero():
                    del t[e]
                else:
                    t[e] = s
            else:
                t[e] = c
        return YSeries(self.ring, self.yvars, n, t)

    __radd__ = __add__

    def __neg__(self):
        return self.like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, YSeries):
            c = self.ring.rf(other)
            if c.is_zero():
                return self.zero_like()
            return self.like({e: v * c for e, v in self.terms.items()})
        if other.yvars != self.yvars:
            raise AlgebraError("y-variable mismatch")
        n = min(self.order, other.order)
        bs = sorted(((_deg(e), e, c) for e, c in other.terms.items()), key=lambda t: t[0])
        acc = {}
        for ea, ca in self.terms.items():
            da = _deg(ea)
            if da > n:
                continue
            for db, eb, cb in bs:
                if da + db > n:
                    break
                e = tuple(x + y for x, y in zip(ea, eb))
                p = ca * cb
                if e in acc:
                    acc[e] = acc[e] + p
                else:
                    acc[e] = p
        return YSeries(self.ring, self.yvars, n, {e: c for e, c in acc.items() if not c.is_zero()})

    __rmul__ = __mul__

    def mul_monomial(self, e, c=None):
        """Multiply by the monomial y^e (times an optional coefficient)."""
        t = {}
        for ea, ca in self.terms.items():
            e2 = tuple(x + y for x, y in zip(ea, e))
            if _deg(e2) <= self.order:
                t[e2] = ca if c is None else ca * c
        return self.like(t)

    def shift_var(self, i):
        """Multiply by y_i (variable index i), truncating."""
        t = {}
        n = self.order
        for e, c in self.terms.items():
            if _deg(e) < n:
                e2 = list(e)
                e2[i] += 1
                t[tuple(e2)] = c
        return self.like(t)

    def div_monomial(self, e):
        """Exact division by y^e; the order drops by deg(e)."""
        d = _deg(e)
        t = {}
        for ea, ca in self.terms.items():
            e2 = tuple(x - y for x, y in zip(ea, e))
            if min(e2) < 0:
                raise AlgebraError("series not divisible by monomial %r" % (e,))
            t[e2] = ca
        return YSeries(self.ring, self.yvars, self.order - d, t)

    def inv(self):
        c0 = self.constant_term()
        if c0.is_zero():
            raise AlgebraError("inverting a series with zero constant term")
        ic = c0.inv()
        n = self.order
        comps = self.by_degree()
        zero = (0,) * len(self.yvars)
        # homogeneous components of the inverse
        res = {0: {zero: ic}}
        for d in range(1, n + 1):
            acc = {}
            for j in range(1, d + 1):
                if j not in comps or d - j not in res:
                    continue
                for ea, ca in comps[j]:
                    for eb, cb in res[d - j].items():
                        e = tuple(x + y for x, y in zip(ea, eb))
                        p = ca * cb
                        acc[e] = acc[e] + p if e in acc else p
            comp = {}
            for e, c in acc.items():
                if not c.is_zero():
                    comp[e] = -(c * ic)
            if comp:
                res[d] = comp
        t = {}
        for comp in res.values():
            t.update(comp)
        return self.like(t)

    def __truediv__(self, other):
        if isinstance(other, YSeries):
            return self * other.inv()
        return self * self.ring.rf(other).inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k):
        if k < 0:
            return self.inv() ** (-k)
        r = self.const_like(1)
        b = self
        while k:
            if k & 1:
                r = r * b
            k >>= 1
            if k:
                b = b * b
        return r

    def __eq__(self, other):
        if not isinstance(other, YSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def __hash__(self):
        return hash(str(self))

    def agrees(self, other, n=None):
        """Equality of all coefficients of degree <= n (default: common order)."""
        if n is None:
            n = min(self.order, other.order)
        a = self.truncate(n).terms
        b = other.truncate(n).terms
        return a == b

    def map(self, f):
        t = {}
        for e, c in self.terms.items():
            v = f(c)
            if not v.is_zero():
                t[e] = v
        return self.like(t)

    def diff_z(self, name="z"):
        return self.map(lambda c: c.diff(name))

    def subs(self, name, value):
        return self.map(lambda c: c.subs(name, value))

    def __str__(self):
        return fmt_series(self, str)

    __repr__ = __str__


def fmt_monomial(yvars, e):
    parts = []
    for v, k in zip(yvars, e):
        if k == 1:
            parts.append("y[%s]" % v)
        elif k:
            parts.append("y[%s]^%d" % (v, k))
    return "*".join(parts)


def _needs_parens(s):
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif depth == 0 and ch in "+-" and i > 0:
            return True
    return False


def series_key(e):
    return (_deg(e), tuple(-k for k in e))


def _is_atom(s):
    return not any(ch in s for ch in "+-/ ")


def fmt_series(s, fmt_coeff):
    """Render sum_a c_a y^a with lowest total degree first."""
    items = sorted(s.terms.items(), key=lambda t: series_key(t[0]))
    out = []
    for e, c in items:
        mono = fmt_monomial(s.yvars, e)
        cs = fmt_coeff(c)
        neg = False
        if cs.startswith("-") and not _needs_parens(cs[1:]):
            neg = True
            cs = cs[1:]
        if not mono:
            body = cs
        elif cs == "1":
            body = mono
        elif re.fullmatch(r"\d+(/\d+)?", cs):
            body = "%s*%s" % (cs, mono)
        elif _is_atom(cs):
            body = "%s * %s" % (mono, cs)
        else:
            body = "%s * (%s)" % (mono, cs)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


def log1p(a):
    """log(1 + a) for a series with zero constant term."""
    if not a.constant_term().is_zero():
        raise AlgebraError("log1p needs a zero constant term")
    n = a.order
    res = a.zero_like()
    p = a
    for k in range(1, n + 1):
        if p.is_zero():
            break
        res = res + p * Fraction((-1) ** (k + 1), k)
        p = p * a
    return res


def exp_nilpotent(a):
    """exp(a) for a series with zero constant term (a finite sum)."""
    if not a.constant_term().is_zero():
        raise AlgebraError("exp_nilpotent needs a zero constant term")
    n = a.order
    res = a.const_like(1)
    p = a.const_like(1)
    for k in range(1, n + 1):
        p = p * a * Fraction(1, k)
        if p.is_zero():
            break
        res = res + p
    return res


def series_arith(op, a, b=None):
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "inv":
        return a.inv()
    raise ValueError(op)


def series_log1p_exp(op, a):
    if op == "log1p":
        return log1p(a)
    if op == "exp_nilpotent":
        return exp_nilpotent(a)
    raise ValueError(op)


def compose_z(f, p, var="z"):
    """f(p) for f rational in `var` and p a YSeries whose coefficients are free of `var`."""
    R = p.ring
    f = R.rf(f)
    i = R.index[var]
    num = _coeff_list(R, f.num, i)
    den = _coeff_list(R, f.den, i)

    def horner(cs):
        acc = p.zero_like()
        for c in reversed(cs):
            acc = acc * p + c if not acc.is_zero() else p.const_like(c)
        return acc

    d = horner(den)
    if d.constant_term().is_zero():
        raise AlgebraError("pole: denominator vanishes at the constant term of the argument")
    return horner(num) * d.inv()


def _coeff_list(R, poly, i):
    groups = {}
    for e, c in poly.to_dict().items():
        e2 = list(e)
        k = e2[i]
        e2[i] = 0
        groups.setdefault(k, {})[tuple(e2)] = c
    D = max(groups) if groups else 0
    return [R.rf(R.ctx.from_dict(groups[k])) if k in groups else R.zero() for k in range(D + 1)]


# ---------------------------------------------------------------------------
# partial fractions in z

class PartialFractions:
    """f = poly + sum_{a, j} c[a][j] / (z - a)^j."""

    def __init__(self, ring, var, poly, principal):
        self.ring = ring
        self.var = var
        self.poly = poly            # list of RF coefficients of var^k
        self.principal = principal  # list of (pole RF, {j: coefficient RF})

    def residue(self, a):
        for b, parts in self.principal:
            if b == a:
                return parts.get(1, self.ring.zero())
        return self.ring.zero()

    def recombine(self):
        R = self.ring
        z = R.var(self.var)
        acc = R.zero()
        for k, c in enumerate(self.poly):
            acc = acc + c * z ** k
        for a, parts in self.principal:
            for j, c in parts.items():
                acc = acc + c / (z - a) ** j
        return acc

    def __str__(self):
        R = self.ring
        bits = []
        for k, c in enumerate(self.poly):
            if not c.is_zero():
                bits.append("(%s)*%s^%d" % (c, self.var, k))
        for a, parts in self.principal:
            for j in sorted(parts):
                bits.append("(%s)/(%s - (%s))^%d" % (parts[j], self.var, a, j))
        return " + ".join(bits) if bits else "0"


def partial_fractions_z(f, poles, var="z"):
    R = f.ring
    z = R.var(var)
    poles = [R.rf(a) for a in poles]
    for a in poles:
        if a.depends_on(var):
            raise AlgebraError("pole %s depends on %s" % (a, var))
    den = f.den
    mult = []
    for a in poles:
        lin = (z - a)
        lp = lin.num  # a = A/B  ->  B z - A up to the monic scaling
        m = 0
        while True:
            val = R.rf(den).subs(var, a)
            if not val.is_zero():
                break
            den = den / lp
            m += 1
        mult.append(m)
    # every remaining factor of den must be free of var
    if den.degrees()[R.index[var]] > 0:
        raise AlgebraError("denominator has a factor outside the declared poles: %s" % R.fmt_poly(den))
    principal = []
    rest = f
    for a, m in zip(poles, mult):
        if m == 0:
            continue
        lin = z - a
        h = f * lin ** m
        parts = {}
        for j in range(m, 0, -1):
            c = h.subs(var, a)
            if not c.is_zero():
                parts[j] = c
            h = (h - c) / lin
        principal.append((a, parts))
        for j, c in parts.items():
            rest = rest - c / lin ** j
    if rest.den.degrees()[R.index[var]] > 0:
        raise AlgebraError("partial fraction remainder is not polynomial")
    i = R.index[var]
    inv_den = R.rf(R.one_poly()) / R.rf(rest.den)
    poly = [c * inv_den for c in _coeff_list(R, rest.num, i)]
    while poly and poly[-1].is_zero():
        poly.pop()
    return PartialFractions(R, var, poly, principal)


def residue_at(f, a, var="z"):
    """Residue of f(var) d(var) at var = a (a rational function free of var, or None for infinity)."""
    R = f.ring
    z = R.var(var)
    if a is None:
        # Res_inf f dz = -Res_0 f(1/u) du / u^2
        g = -f.subs(var, z.inv()) / (z * z)
        return residue_at(g, R.zero(), var)
    g = f.subs(var, z + a) if not a.is_zero() else f
    i = R.index[var]
    num = _coeff_list(R, g.num, i)
    den = _coeff_list(R, g.den, i)
    m = 0
    while den[m].is_zero():
        m += 1
    if m == 0:
        return R.zero()
    den = den[m:]
    # coefficient of var^(m-1) in num/den
    inv0 = den[0].inv()
    q = []
    for n in range(m):
        acc = num[n] if n < len(num) else R.zero()
        for j in range(1, min(n, len(den) - 1) + 1):
            acc = acc - den[j] * q[n - j]
        q.append(acc * inv0)
    return q[m - 1]
