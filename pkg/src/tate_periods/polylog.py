"""Multiple polylogarithms: symbols, z-series, reduction of iterated
integrals to Li-combinations, the shuffle product and p-adic evaluation.

Conventions.  Li_{k1..kl}(z) = sum_{0<n1<...<nl} z^nl / (n1^k1 ... nl^kl).
An iterated integral over a word (w1, ..., wm) integrates w1 first:
  I(w1..wm)(z) = int_0^z I(w1..w(m-1))(t) wm(t).
With w0 = dz/z and w1 = dz/(1-z), Li_{k1..kl} is the word
w1 w0^(k1-1) w1 w0^(k2-1) ... w1 w0^(kl-1).
"""
from dataclasses import dataclass
from fractions import Fraction
from math import comb, log

import flint

from .errors import PolylogError

X = flint.fmpq_poly([0, 1])
ONE = flint.fmpq_poly([1])
ZM1 = flint.fmpq_poly([-1, 1])      # z - 1


def _frac(c):
    return Fraction(int(c.p), int(c.q))


def _q(c):
    c = Fraction(c)
    return flint.fmpq(c.numerator, c.denominator)


# ---------------------------------------------------------------------------
# the ring Q[z, 1/z, 1/(z-1)]

class RElem:
    """num / (z^a (z-1)^b) with num a polynomial coprime to the denominator."""
    __slots__ = ("num", "a", "b")

    def __init__(self, num, a=0, b=0):
        if not isinstance(num, flint.fmpq_poly):
            num = flint.fmpq_poly([_q(num)])
        if num.is_zero():
            a = b = 0
        while a > 0 and num[0] == 0:
            num = num // X
            a -= 1
        while b > 0 and num(1) == 0:
            num = num // ZM1
            b -= 1
        if a < 0:
            num = num * X ** (-a)
            a = 0
        self.num, self.a, self.b = num, a, b

    @classmethod
    def z_pow(cls, k):
        return cls(ONE, -k, 0)

    @classmethod
    def pole1(cls, l):
        """(z - 1)^(-l)."""
        if l >= 0:
            return cls(ONE, 0, l)
        return cls(ZM1 ** (-l))

    @classmethod
    def const(cls, c):
        return cls(flint.fmpq_poly([_q(c)]))

    def is_zero(self):
        return self.num.is_zero()

    def in_R(self):
        """No pole at z = 0."""
        return self.a == 0

    def is_constant(self):
        return self.a == 0 and self.b == 0 and self.num.degree() <= 0

    def constant_value(self):
        return _frac(self.num[0]) if not self.num.is_zero() else Fraction(0)

    def __add__(self, o):
        if not isinstance(o, RElem):
            o = RElem.const(o)
        a, b = max(self.a, o.a), max(self.b, o.b)
        n = self.num * X ** (a - self.a) * ZM1 ** (b - self.b) + o.num * X ** (a - o.a) * ZM1 ** (b - o.b)
        return RElem(n, a, b)

    __radd__ = __add__

    def __neg__(self):
        return RElem(-self.num, self.a, self.b)

    def __sub__(self, o):
        return self + (-o if isinstance(o, RElem) else RElem.const(-Fraction(o)))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, o):
        if not isinstance(o, RElem):
            return RElem(self.num * _q(o), self.a, self.b)
        return RElem(self.num * o.num, self.a + o.a, self.b + o.b)

    __rmul__ = __mul__

    def __eq__(self, o):
        if not isinstance(o, RElem):
            try:
                o = RElem.const(o)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num == o.num and self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((str(self.num), self.a, self.b))

    def key(self):
        return (tuple(str(c) for c in self.num.coeffs()), self.a, self.b)

    def partial_fractions(self):
        """(poly, {j: c of z^-j}, {l: c of (z-1)^-l})."""
        P, a, b = self.num, self.a, self.b
        zp = {}
        if a:
            # f z^a = P / (z-1)^b, Taylor at 0 up to z^(a-1)
            inv = [Fraction((-1) ** b * comb(n + b - 1, b - 1)) if b else Fraction(int(n == 0))
                   for n in range(a)]
            pc = [_frac(c) for c in P.coeffs()]
            for n in range(a):
                c = sum(pc[i] * inv[n - i] for i in range(min(n, len(pc) - 1) + 1)) if pc else 0
                if c:
                    zp[a - n] = c
        op = {}
        if b:
            # f (z-1)^b = P / z^a at z = 1 + u
            Pu = P(X + 1)
            pc = [_frac(c) for c in Pu.coeffs()]
            inv = [Fraction(comb(-a, n)) if a == 0 else Fraction((-1) ** n * comb(n + a - 1, a - 1))
                   for n in range(b)]
            for n in range(b):
                c = sum(pc[i] * inv[n - i] for i in range(min(n, len(pc) - 1) + 1)) if pc else 0
                if c:
                    op[b - n] = c
        rest = self
        for j, c in zp.items():
            rest = rest - RElem(ONE, j, 0) * c
        for l, c in op.items():
            rest = rest - RElem(ONE, 0, l) * c
        if rest.a or rest.b:
            raise PolylogError("partial fraction remainder is not a polynomial")
        return rest.num, zp, op

    def series(self, M):
        """Coefficients of z^0..z^M (requires no pole at 0)."""
        if self.a:
            raise PolylogError("element has a pole at z = 0")
        b = self.b
        inv = [Fraction((-1) ** b * comb(n + b - 1, b - 1)) if b else Fraction(int(n == 0))
               for n in range(M + 1)]
        pc = [_frac(c) for c in self.num.coeffs()]
        return [sum(pc[i] * inv[n - i] for i in range(min(n, len(pc) - 1) + 1)) if pc else Fraction(0)
                for n in range(M + 1)]

    def derivative(self):
        P, a, b = self.num, self.a, self.b
        # d/dz [P z^-a (z-1)^-b] over the common denominator z^(a+1) (z-1)^(b+1)
        n = P.derivative() * X * ZM1 - a * P * ZM1 - b * P * X
        return RElem(n, a + 1, b + 1)

    def __str__(self):
        return fmt_relem(self)

    __repr__ = __str__


def fmt_poly_z(p):
    cs = [_frac(c) for c in p.coeffs()]
    out = []
    for k in range(len(cs) - 1, -1, -1):
        c = cs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else "z^%d" % k)
        a = abs(c)
        s = str(a) if not mono else (mono if a == 1 else "%s*%s" % (a, mono))
        if not out:
            out.append(("-" if c < 0 else "") + s)
        else:
            out.append((" - " if c < 0 else " + ") + s)
    return "".join(out) if out else "0"


def fmt_relem(r):
    ns = fmt_poly_z(r.num)
    if not r.a and not r.b:
        return ns
    den = []
    if r.a:
        den.append("z" if r.a == 1 else "z^%d" % r.a)
    if r.b:
        den.append("(z-1)" if r.b == 1 else "(z-1)^%d" % r.b)
    ds = "*".join(den)
    if len(den) > 1:
        ds = "(%s)" % ds
    if " " in ns:
        ns = "(%s)" % ns
    return "%s/%s" % (ns, ds)


# ---------------------------------------------------------------------------
# Li symbols and combinations

@dataclass(frozen=True)
class LiSymbol:
    index: tuple

    def __post_init__(self):
        if not self.index or any(int(k) < 1 for k in self.index):
            raise PolylogError("Li index must be a nonempty tuple of positive integers")

    @property
    def weight(self):
        return sum(self.index)

    @property
    def depth(self):
        return len(self.index)

    def __str__(self):
        return "Li[%s](z)" % ",".join(str(k) for k in self.index)


def _sym_key(s):
    return (-sum(s), -len(s), s)


class LiCombo:
    """sum_s c_s(z) Li_s(z) + pure part; keys are index tuples, () is the pure part."""

    def __init__(self, terms=None):
        self.terms = {}
        for k, v in (terms or {}).items():
            if not isinstance(v, RElem):
                v = RElem.const(v)
            if not v.is_zero():
                self.terms[tuple(k)] = v

    @classmethod
    def one(cls):
        return cls({(): RElem.const(1)})

    @classmethod
    def li(cls, *index):
        return cls({tuple(index): RElem.const(1)})

    def __add__(self, o):
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t[k] + v if k in t else v
        return LiCombo(t)

    def __neg__(self):
        return LiCombo({k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, r):
        if not isinstance(r, RElem):
            r = RElem.const(r)
        return LiCombo({k: v * r for k, v in self.terms.items()})

    def __mul__(self, r):
        return self.scale(r)

    __rmul__ = __mul__

    def __eq__(self, o):
        if not isinstance(o, LiCombo):
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(str(self))

    def is_zero(self):
        return not self.terms

    def pure(self):
        return self.terms.get((), RElem.const(0))

    def in_R_span(self):
        return all(v.in_R() for v in self.terms.values())

    def symbols(self):
        return [LiSymbol(k) for k in self.terms if k]

    def series(self, M):
        out = [Fraction(0)] * (M + 1)
        for k, c in self.terms.items():
            cs = c.series(M)
            ls = li_series(k, M) if k else [Fraction(1)] + [Fraction(0)] * M
            for i, a in enumerate(cs):
                if a:
                    for j in range(M + 1 - i):
                        if ls[j]:
                            out[i + j] += a * ls[j]
        return out

    def __str__(self):
        keys = sorted((k for k in self.terms if k), key=_sym_key)
        out = []
        for k in keys:
            c = self.terms[k]
            sym = str(LiSymbol(k))
            neg = False
            if c.is_constant():
                v = c.constant_value()
                neg = v < 0
                body = sym if abs(v) == 1 else "%s*%s" % (abs(v), sym)
            else:
                body = "(%s)*%s" % (c, sym)
            out.append((neg, body))
        if () in self.terms:
            s = str(self.terms[()])
            neg = s.startswith("-") and not s.startswith("-(") and " " not in s
            out.append((neg, s[1:] if neg else s))
        if not out:
            return "0"
        parts = []
        for i, (neg, body) in enumerate(out):
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# series

def li_series(s, M):
    """Coefficients of z^0..z^M of Li_s (dynamic programming over n_l)."""
    s = tuple(s.index if isinstance(s, LiSymbol) else s)
    LiSymbol(s)
    cur = [Fraction(0)] + [Fraction(1, n ** s[0]) for n in range(1, M + 1)]
    for k in s[1:]:
        nxt = [Fraction(0)] * (M + 1)
        acc = Fraction(0)
        for n in range(1, M + 1):
            nxt[n] = acc / n ** k
            acc += cur[n]
        cur = nxt
    return cur


# ---------------------------------------------------------------------------
# form letters and the reduction algorithm

@dataclass(frozen=True)
class FormLetter:
    """kind 'z': z^k dz (k >= -1); kind 'pole': (z-1)^(-k) dz (k >= 1)."""
    kind: str
    k: int
    coeff: Fraction = Fraction(1)

    def __post_init__(self):
        if self.kind == "z" and self.k < -1:
            raise PolylogError("z^k dz needs k >= -1")
        if self.kind == "pole" and self.k < 1:
            raise PolylogError("(z-1)^-l dz needs l >= 1")
        if self.kind not in ("z", "pole"):
            raise PolylogError("unknown letter kind %r" % self.kind)

    def relem(self):
        base = RElem(ONE, -self.k, 0) if self.kind == "z" else RElem(ONE, 0, self.k)
        return base * self.coeff

    def __str__(self):
        c = "" if self.coeff == 1 else ("-" if self.coeff == -1 else "%s*" % self.coeff)
        if self.kind == "z":
            return c + {-1: "dz/z", 0: "dz", 1: "z dz"}.get(self.k, "z^%d dz" % self.k)
        return c + ("dz/(z-1)" if self.k == 1 else "dz/(z-1)^%d" % self.k)


W0 = FormLetter("z", -1)
W1 = FormLetter("pole", 1, Fraction(-1))   # dz/(1-z)


def _as_relem(letter):
    if isinstance(letter, RElem):
        return letter
    if isinstance(letter, FormLetter):
        return letter.relem()
    raise PolylogError("not a letter: %r" % (letter,))


def _pure_integral(g):
    """int_0^z g for g in R."""
    poly, zp, op = g.partial_fractions()
    if zp:
        raise PolylogError("divergent integral: dz/z at the start of a word")
    out = LiCombo({(): RElem(poly.integral())})
    for l, c in op.items():
        if l == 1:
            out = out + LiCombo({(1,): RElem.const(-c)})
        else:
            # ((z-1)^(1-l) - (-1)^(1-l)) / (1-l)
            r = (RElem(ONE, 0, l - 1) - Fraction((-1) ** (l - 1))) * Fraction(c, 1 - l)
            out = out + LiCombo({(): r})
    return out


_MEMO = {}


def integrate_li(g, s):
    """int_0^z g(t) Li_s(t) dt as a LiCombo (g in Q[z, 1/z, 1/(z-1)])."""
    s = tuple(s)
    if g.is_zero():
        return LiCombo()
    if not s:
        return _pure_integral(g)
    key = (g.key(), s)
    if key in _MEMO:
        return _MEMO[key]
    poly, zp, op = g.partial_fractions()
    out = LiCombo()
    for j, c in zp.items():
        if j != 1:
            raise PolylogError("pole of order %d at z = 0 in an integrand" % j)
        out = out + LiCombo({s[:-1] + (s[-1] + 1,): RElem.const(c)})
    if 1 in op:
        out = out + LiCombo({s + (1,): RElem.const(-op[1])})
    # the regular part by parts: G Li_s - int G Li_s'
    G = RElem(poly.integral())
    for l, c in op.items():
        if l >= 2:
            G = G + RElem(ONE, 0, l - 1) * Fraction(c, 1 - l)
    if not G.is_zero():
        out = out + LiCombo({s: G})
        if s[-1] > 1:
            sd = s[:-1] + (s[-1] - 1,)
            h = G * RElem(ONE, 1, 0)
        else:
            sd = s[:-1]
            h = G * RElem(ONE, 0, 1) * -1     # 1/(1-t)
        out = out - integrate_li(h, sd)
    _MEMO[key] = out
    return out


def reduce_iterated_integral(word):
    """int_0^z w1 ... wm (w1 integrated first) as a LiCombo."""
    letters = [_as_relem(w) for w in word]
    if not letters:
        return LiCombo.one()
    cur = LiCombo.one()
    for i, ell in enumerate(letters):
        if i == 0:
            _, zp, _ = ell.partial_fractions()
            if zp:
                raise PolylogError("word starts with a dz/z component; it is not regularized here")
        nxt = LiCombo()
        for s, c in cur.terms.items():
            nxt = nxt + integrate_li(c * ell, s)
        cur = nxt
    return cur


def iterated_integral_series(word, M):
    """Direct termwise z-series of the iterated integral (the oracle)."""
    cur = [Fraction(1)] + [Fraction(0)] * M
    for w in word:
        ell = _as_relem(w)
        poly, zp, op = ell.partial_fractions()
        # series of the letter, allowing a 1/z term
        lz = RElem(poly)
        for l, c in op.items():
            lz = lz + RElem(ONE, 0, l) * c
        ls = lz.series(M)
        prod = [Fraction(0)] * (M + 1)
        for i, a in enumerate(cur):
            if a:
                for j in range(M + 1 - i):
                    prod[i + j] += a * ls[j]
        c1 = zp.get(1, 0)
        if any(k != 1 for k in zp):
            raise PolylogError("pole of order >= 2 at z = 0")
        if c1 and cur[0]:
            raise PolylogError("divergent dz/z integral")
        # integrate: z^n -> z^(n+1)/(n+1); the dz/z part sends z^n -> z^n / n
        new = [Fraction(0)] * (M + 1)
        for n in range(M):
            new[n + 1] += prod[n] / (n + 1)
        for n in range(1, M + 1):
            new[n] += c1 * cur[n] / n
        cur = new
    return cur


# ---------------------------------------------------------------------------
# shuffle product

def _word_of(s):
    w = []
    for k in s:
        w += [1] + [0] * (k - 1)
    return tuple(w)


def _index_of(w):
    if not w or w[0] != 1:
        raise PolylogError("word does not start with w1")
    out = []
    for x in w:
        if x == 1:
            out.append(1)
        else:
            out[-1] += 1
    return tuple(out)


def shuffle_words(u, v):
    out = {}

    def rec(a, b, acc):
        if not a:
            w = acc + b
            out[w] = out.get(w, 0) + 1
            return
        if not b:
            w = acc + a
            out[w] = out.get(w, 0) + 1
            return
        rec(a[1:], b, acc + a[:1])
        rec(a, b[1:], acc + b[:1])

    rec(tuple(u), tuple(v), ())
    return out


def shuffle_product(a, b):
    a = tuple(a.index if isinstance(a, LiSymbol) else a)
    b = tuple(b.index if isinstance(b, LiSymbol) else b)
    terms = {}
    for w, c in shuffle_words(_word_of(a), _word_of(b)).items():
        k = _index_of(w)
        terms[k] = terms.get(k, 0) + c
    return LiCombo({k: RElem.const(c) for k, c in terms.items()})


# ---------------------------------------------------------------------------
# p-adic evaluation inside the unit disk

def vp(x, p):
    x = Fraction(x)
    if x == 0:
        return None
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


@dataclass(frozen=True)
class PAdic:
    """p^val * unit with unit an integer mod p^(prec - val); val >= prec means 0."""
    p: int
    prec: int
    val: int
    unit: int

    @classmethod
    def from_rational(cls, x, p, prec):
        x = Fraction(x)
        v = vp(x, p)
        if v is None or v >= prec:
            return cls(p, prec, prec, 0)
        u = x / Fraction(p) ** v
        mod = p ** (prec - v)
        unit = u.numerator * pow(u.denominator, -1, mod) % mod
        return cls(p, prec, v, unit)

    def is_zero(self):
        return self.val >= self.prec

    def to_rational(self):
        return Fraction(self.unit) * Fraction(self.p) ** self.val

    def __add__(self, o):
        return PAdic.from_rational(self.to_rational() + o.to_rational(), self.p, min(self.prec, o.prec))

    def __neg__(self):
        return PAdic.from_rational(-self.to_rational(), self.p, self.prec)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if not isinstance(o, PAdic):
            o = PAdic.from_rational(o, self.p, self.prec)
        prec = min(self.prec + o.val, o.prec + self.val)
        return PAdic.from_rational(self.to_rational() * o.to_rational(), self.p, prec)

    def digits(self):
        """Base-p digits of the unit, least significant first."""
        out, u = [], self.unit
        for _ in range(self.prec - self.val):
            out.append(u % self.p)
            u //= self.p
        return out

    def __str__(self):
        if self.is_zero():
            return "O(%d^%d)" % (self.p, self.prec)
        return "%d*%d^%d + O(%d^%d)" % (self.unit, self.p, self.val, self.p, self.prec)


def padic_cutoff(weight, v, p, prec):
    """Largest n whose term z^n c_n might still have valuation < prec."""
    # n v - weight floor(log_p n) bounds the valuation from below; it increases
    # once n > weight / (v ln p)
    n0 = int(weight / (v * log(p))) + 1
    n = 1
    last = 0
    while True:
        lower = n * v - weight * _ilog(n, p)
        if lower < prec:
            last = n
        elif n > n0 and n * v - weight * log(n) / log(p) >= prec:
            return last
        n += 1


def _ilog(n, p):
    k = 0
    while n >= p:
        n //= p
        k += 1
    return k


def padic_li_eval(s, z, p, prec, cutoff=None):
    s = tuple(s.index if isinstance(s, LiSymbol) else s)
    z = Fraction(z)
    v = vp(z, p)
    if v is None:
        return PAdic.from_rational(0, p, prec)
    if v < 1:
        raise PolylogError("|z|_p must be < 1 for the series to converge")
    n = padic_cutoff(sum(s), v, p, prec) if cutoff is None else cutoff
    cs = li_series(s, n)
    total = sum((cs[k] * z ** k for k in range(1, n + 1)), Fraction(0))
    return PAdic.from_rational(total, p, prec)


def padic_licombo_eval(combo, z, p, prec):
    """Evaluate a LiCombo at a p-adic point with |z|_p < 1."""
    z = Fraction(z)
    total = PAdic.from_rational(0, p, prec)
    for k, c in combo.terms.items():
        cv = _eval_relem(c, z)
        val = PAdic.from_rational(cv, p, prec)
        if k:
            val = val * padic_li_eval(k, z, p, prec)
        total = total + val
    return total


def _eval_relem(r, z):
    num = sum((_frac(c) * z ** i for i, c in enumerate(r.num.coeffs())), Fraction(0))
    return num / (z ** r.a * (z - 1) ** r.b)
