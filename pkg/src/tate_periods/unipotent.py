"""Unipotent periods of trivalent generalized Tate curves.

Basis forms are taken in the chart of the vertex carrying a tail t1 != t0
and moved by a Moebius map preserving {0, 1, oo} so that x_{t1} sits at 0.
Every y-coefficient then becomes an element r(z) dz with r in
Q[z, 1/z, 1/(z-1)]; only omega_{t1,t0} keeps a dz/z term (at y^0).

Composition convention.  unipotent_period((w1, ..., wm)) integrates w1
first.  The KZ solution F = H(z) z^{A_0} (A_0 the letter of omega_{t1,t0})
satisfies dF = (sum_w A_w w) F, so the recursion puts new letters on the
left: the coefficient of A_{wm} ... A_{w1} in H is the iterated integral
of (w1, ..., wm) whenever w1 != omega_{t1,t0}.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

import flint

from .algebra import fmt_series, to_fraction
from .differentials import differential, kind_name
from .errors import UnipotentError
from .graph import INF, assign_standard_coords
from .polylog import LiCombo, RElem, ONE, X, ZM1, reduce_iterated_integral, _frac
from .schottky import TateCurve

ZERO, ONE_Q = Fraction(0), Fraction(1)


def standard_curve(graph, t0=None):
    """TateCurve with the standard {0, 1, oo} coordinates of a trivalent graph."""
    return TateCurve(graph, assign_standard_coords(graph), t0)


def _check_setup(curve):
    g = curve.graph
    for v in g.vertices:
        if len(g.branches_at(v)) != 3:
            raise UnipotentError("vertex %s is not trivalent" % v)
        vals = set()
        for b in g.branches_at(v):
            x = curve.x[b]
            if x is INF:
                vals.add("oo")
                continue
            if not x.is_constant() or x.constant_value() not in (0, 1):
                raise UnipotentError("branch %s is not at 0, 1 or infinity" % b)
            vals.add(x.constant_value())
        if len(vals) != 3:
            raise UnipotentError("vertex %s does not use {0, 1, oo}" % v)


def _univariate(curve, rf):
    """A RationalFunction in z only, as (num, den) fmpq_polys."""
    R = curve.ring
    iz = R.index["z"]
    out = []
    for p in (rf.num, rf.den):
        cs = {}
        for e, c in p.to_dict().items():
            if any(k for i, k in enumerate(e) if i != iz):
                raise UnipotentError("coefficient depends on symbols other than z")
            cs[e[iz]] = c
        deg = max(cs) if cs else 0
        out.append(flint.fmpq_poly([cs.get(k, 0) for k in range(deg + 1)]))
    return out


def _to_relem(num, den):
    """num/den as an element of Q[z, 1/z, 1/(z-1)], or an error."""
    a = b = 0
    while den.degree() > 0 and den[0] == 0:
        den = den // X
        a += 1
    while den.degree() > 0 and den(1) == 0:
        den = den // ZM1
        b += 1
    if den.degree() > 0:
        raise UnipotentError("coefficient has a pole outside {0, 1, oo}: %s" % den)
    return RElem(num / den[0], a, b)


def _move(num, den, xt1):
    """Pull r(z) dz back along the map w -> z sending 0 to x_{t1}."""
    if xt1 == 0:
        return num, den
    if xt1 == 1:
        # z = 1 - w, dz = -dw
        s = flint.fmpq_poly([1, -1])
        return -num(s), den(s)
    # z = 1/w, dz = -dw / w^2;  p(1/w) = w^(-deg p) rev(p)(w)
    rn = flint.fmpq_poly(list(reversed(num.coeffs())) or [0])
    rd = flint.fmpq_poly(list(reversed(den.coeffs())))
    shift = max(den.degree(), 0) - max(num.degree(), 0)
    n2, d2 = -rn, rd * X ** 2
    if shift >= 0:
        n2 = n2 * X ** shift
    else:
        d2 = d2 * X ** (-shift)
    return n2, d2


@dataclass
class LocalLetter:
    name: str
    kind: tuple
    coeffs: dict          # y-exponent -> RElem (coefficient of dz)
    residue: int = 0      # coefficient of dz/z at y^0

    def regular(self):
        """Coefficients with the dz/z term removed."""
        out = dict(self.coeffs)
        if self.residue:
            e0 = next(iter(k for k in out if not any(k)), None)
            if e0 is not None:
                out[e0] = out[e0] - RElem(ONE, 1, 0) * self.residue
                if out[e0].is_zero():
                    del out[e0]
        return out


@dataclass
class LocalFormSystem:
    curve: object
    t1: str
    vertex: str
    order: int
    letters: list         # LocalLetter, in basis order
    yvars: tuple

    @property
    def names(self):
        return [l.name for l in self.letters]

    def letter(self, name):
        for l in self.letters:
            if l.name == name:
                return l
        raise UnipotentError("unknown letter %r (known: %s)" % (name, ", ".join(self.names)))

    @property
    def residue_letter(self):
        return "omega_%s_%s" % (self.t1, self.curve.t0)


def basis_kinds(curve):
    g = curve.genus
    kinds = [("first", i) for i in range(1, g + 1)]
    kinds += [("second", curve.t0, k) for k in range(2, g + 2)]
    kinds += [("third", t.id, curve.t0) for t in curve.graph.sorted_tails() if t.id != curve.t0]
    return kinds


def local_forms_at_tail(curve, t1, N):
    _check_setup(curve)
    g = curve.graph
    if t1 == curve.t0:
        raise UnipotentError("t1 must differ from t0 = %s" % curve.t0)
    v = g.tail(t1).at
    xt = curve.x[t1]
    xt1 = "oo" if xt is INF else xt.constant_value()
    letters = []
    for kind in basis_kinds(curve):
        form = differential(curve, kind, N, chart=v)
        coeffs = {}
        for e, rf in form.coeff.terms.items():
            num, den = _move(*_univariate(curve, rf), xt1)
            r = _to_relem(num, den)
            if not r.is_zero():
                coeffs[e] = r
        residue = 0
        for e, r in coeffs.items():
            _, zp, _ = r.partial_fractions()
            if any(j >= 2 for j in zp):
                raise UnipotentError("%s has a pole of order >= 2 at z = 0" % kind_name(kind))
            c = zp.get(1, 0)
            if c:
                is_res = kind == ("third", t1, curve.t0) and not any(e)
                if not is_res:
                    raise UnipotentError("%s has a dz/z term at y-exponent %s" % (kind_name(kind), e))
                if c != 1:
                    raise UnipotentError("residue of %s at z = 0 is %s, not 1" % (kind_name(kind), c))
                residue = 1
        if kind == ("third", t1, curve.t0) and residue != 1:
            raise UnipotentError("%s has no dz/z term" % kind_name(kind))
        letters.append(LocalLetter(kind_name(kind), kind, coeffs, residue))
    return LocalFormSystem(curve, t1, v, N, letters, tuple(curve.yvars))


# ---------------------------------------------------------------------------
# unipotent periods

def _deg(e):
    return sum(e)


def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class UnipotentPeriod:
    word: tuple
    order: int
    yvars: tuple
    terms: dict = field(default_factory=dict)     # y-exponent -> LiCombo

    def series(self, M):
        return {e: c.series(M) for e, c in self.terms.items()}

    def in_R_span(self):
        return all(c.in_R_span() for c in self.terms.values())

    def __str__(self):
        return fmt_series(self, str)

    __repr__ = __str__


def parse_word(system, spec):
    if isinstance(spec, str):
        spec = [s.strip() for s in spec.split(",") if s.strip()]
    for s in spec:
        system.letter(s)
    return tuple(spec)


def _z_words(system, word, N):
    """Expand the word's letters in y: yield (y-exponent, tuple of RElem)."""
    zero = tuple(0 for _ in system.yvars)
    acc = [(zero, ())]
    for name in word:
        L = system.letter(name)
        nxt = []
        for e, zw in acc:
            for f, r in sorted(L.coeffs.items()):
                ef = _add_exp(e, f)
                if _deg(ef) <= N:
                    nxt.append((ef, zw + (r,)))
        acc = nxt
    return acc


def unipotent_period(system, word, N=None, jobs=1):
    word = parse_word(system, word)
    N = system.order if N is None else N
    if N > system.order:
        raise UnipotentError("order %d exceeds the local system order %d" % (N, system.order))
    zero = tuple(0 for _ in system.yvars)
    if not word:
        return UnipotentPeriod(word, N, system.yvars, {zero: LiCombo.one()})
    if word[0] == system.residue_letter:
        raise UnipotentError("the first letter may not be %s" % system.residue_letter)
    items = _z_words(system, word, N)
    if jobs > 1:
        with ThreadPoolExecutor(jobs) as ex:
            vals = list(ex.map(lambda it: reduce_iterated_integral(it[1]), items))
    else:
        vals = [reduce_iterated_integral(zw) for _, zw in items]
    terms = {}
    for (e, _), v in zip(items, vals):
        terms[e] = terms[e] + v if e in terms else v
    terms = {e: c for e, c in terms.items() if not c.is_zero()}
    return UnipotentPeriod(word, N, system.yvars, terms)


# ---------------------------------------------------------------------------
# the normalized KZ solution

@dataclass
class KZSolution:
    """H = sum_n H_n z^n, with F = H (tangent * z)^{A_0}.

    coeffs[word][y-exponent] is the list of z-coefficients (orders 0..M);
    word is a tuple of letter names in multiplication order.
    """
    system: object
    length: int
    order: int
    zorder: int
    coeffs: dict
    tangent: int = 1

    def coefficient(self, word):
        return self.coeffs.get(tuple(word), {})


def _letter_series(system, M):
    """name -> {y-exponent: z-series of the regular part}."""
    out = {}
    for L in system.letters:
        out[L.name] = {e: r.series(M) for e, r in L.regular().items()}
    return out


def kz_solution(system, m, N=None, M=10, tangent=1):
    N = system.order if N is None else N
    if tangent not in (1, -1):
        raise UnipotentError("tangent must be +1 or -1")
    A0 = system.residue_letter
    ser = _letter_series(system, M)
    zero = tuple(0 for _ in system.yvars)
    # H[n]: word -> {y-exp: Fraction}
    H = [{(): {zero: ONE_Q}}]

    def add_into(target, word, e, c):
        if not c:
            return
        d = target.setdefault(word, {})
        d[e] = d.get(e, ZERO) + c
        if not d[e]:
            del d[e]
            if not d:
                del target[word]

    for n in range(1, M + 1):
        rhs = {}
        for j in range(n):
            k = n - 1 - j
            for name, ys in ser.items():
                for f, cs in ys.items():
                    c = cs[j]
                    if not c:
                        continue
                    for word, yd in H[k].items():
                        if len(word) + 1 > m:
                            continue
                        for e, v in yd.items():
                            ef = _add_exp(e, f)
                            if _deg(ef) <= N:
                                add_into(rhs, (name,) + word, ef, c * v)
        # (n - ad A0) H_n = rhs;  H_n = sum_i (ad A0)^i rhs / n^(i+1)
        Hn = {}
        term = rhs
        scale = Fraction(1, n)
        while term:
            for word, yd in term.items():
                for e, v in yd.items():
                    add_into(Hn, word, e, v * scale)
            nxt = {}
            for word, yd in term.items():
                for e, v in yd.items():
                    if len(word) + 1 <= m:
                        add_into(nxt, (A0,) + word, e, v)
                        add_into(nxt, word + (A0,), e, -v)
            term = nxt
            scale /= n
        H.append(Hn)
    coeffs = {}
    for n, Hn in enumerate(H):
        for word, yd in Hn.items():
            for e, v in yd.items():
                coeffs.setdefault(word, {}).setdefault(e, [ZERO] * (M + 1))[n] = v
    return KZSolution(system, m, N, M, coeffs, tangent)


def kz_residual(sol):
    """z-coefficients of z H' - z Omega_reg H - [A0, H], which must vanish."""
    system, m, N, M = sol.system, sol.length, sol.order, sol.zorder
    A0 = system.residue_letter
    ser = _letter_series(system, M)
    res = {}

    def add(word, e, n, c):
        if c and n <= M:
            lst = res.setdefault(word, {}).setdefault(e, [ZERO] * (M + 1))
            lst[n] += c

    for word, yd in sol.coeffs.items():
        for e, cs in yd.items():
            for n, c in enumerate(cs):
                add(word, e, n, n * c)
                if len(word) + 1 <= m:
                    add((A0,) + word, e, n, -c)
                    add(word + (A0,), e, n, c)
                    for name, ys in ser.items():
                        for f, ls in ys.items():
                            ef = _add_exp(e, f)
                            if _deg(ef) > N:
                                continue
                            for j, a in enumerate(ls):
                                if n + j + 1 > M:
                                    break
                                add((name,) + word, ef, n + j + 1, -a * c)
    return {w: {e: cs for e, cs in yd.items() if any(cs)} for w, yd in res.items()
            if any(any(cs) for cs in yd.values())}
