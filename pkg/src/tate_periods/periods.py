"""Antiderivatives, a- and b-periods, the multiplicative period matrix and
the eta basis.

b-periods integrate from a base point z0 (a fresh symbol by default) to
gamma_i(z0).  For pair forms the integral of dz/(z-P) - dz/(z-Q) is the log
of a cross-ratio of four projective points; each bracket [X, Y] is a
y-monomial times a unit, which gives the structured LogPeriod directly.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor

from .algebra import (partial_fractions_z, residue_at, log1p, exp_nilpotent,
                      fmt_monomial)
from .errors import PeriodError
from .graph import INF, reduce_word
from .differentials import (DifferentialForm, differential, pair_terms, chord_cycle,
                            declared_poles, check_kind)
from .schottky import reduced_words


# ---------------------------------------------------------------------------
# antiderivatives

@dataclass
class AntiDerivative:
    rational: object                           # YSeries
    logs: dict = field(default_factory=dict)   # log argument (z - a) -> YSeries

    def derivative(self, var="z"):
        out = self.rational.diff_z(var)
        for arg, c in self.logs.items():
            out = out + c * (arg.diff(var) / arg)
        return out

    def __str__(self):
        parts = [str(self.rational)] if not self.rational.is_zero() else []
        for arg in sorted(self.logs, key=str):
            c = str(self.logs[arg])
            if c in ("1", "-1"):
                parts.append(c[:-1] + "log(%s)" % arg)
            else:
                parts.append("(%s)*log(%s)" % (c, arg))
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def integrate_form(curve, form):
    """Termwise primitive of a form, with logarithms at the declared poles."""
    R = curve.ring
    z = R.var("z")
    poles = declared_poles(curve, form.chart)
    s = form.coeff
    rat = {}
    logs = {}
    for e, c in s.terms.items():
        pf = partial_fractions_z(c, poles)
        F = R.zero()
        for k, a in enumerate(pf.poly):
            if not a.is_zero():
                F = F + a * z ** (k + 1) / (k + 1)
        for a, parts in pf.principal:
            for j, cj in parts.items():
                if j == 1:
                    arg = z - a
                    logs.setdefault(arg, {})[e] = cj
                else:
                    F = F + cj / ((1 - j) * (z - a) ** (j - 1))
        if not F.is_zero():
            rat[e] = F
    rs = s.like(rat)
    return AntiDerivative(rs, {arg: s.like(t) for arg, t in logs.items()})


# ---------------------------------------------------------------------------
# period values

@dataclass
class LogPeriod:
    """monomial . log(y) + sum m_a log(a) + series.

    For multiplicative periods `series` has zero constant term; for
    second-kind (additive) periods only `series` is populated.
    """
    mono: tuple
    logs: dict          # constant log argument (RationalFunction) -> Fraction
    series: object      # YSeries

    @property
    def yvars(self):
        return self.series.yvars

    def has_log_part(self):
        return any(self.mono) or bool(self.logs)

    def constant_product(self):
        R = self.series.ring
        out = R.one()
        for a, m in self.logs.items():
            if Fraction(m).denominator != 1:
                raise PeriodError("non-integral log multiplicity")
            out = out * a ** int(m)
        return out

    def exp(self):
        """y^mono * prod a^m * exp(series) (needs a series with zero constant term)."""
        s = self.series
        if not s.constant_term().is_zero():
            raise PeriodError("exp of a period with an additive constant")
        return exp_nilpotent(s).mul_monomial(self.mono, self.constant_product())

    def __add__(self, other):
        logs = dict(self.logs)
        for a, m in other.logs.items():
            logs[a] = logs.get(a, 0) + m
            if logs[a] == 0:
                del logs[a]
        return LogPeriod(tuple(x + y for x, y in zip(self.mono, other.mono)), logs,
                         self.series + other.series)

    def __eq__(self, other):
        if not isinstance(other, LogPeriod):
            return NotImplemented
        return (self.mono == other.mono and self.series == other.series
                and self.constant_product() == other.constant_product())

    def __str__(self):
        parts = []
        for v, k in zip(self.yvars, self.mono):
            if k:
                parts.append(("%d*" % k if k != 1 else "") + "log(y[%s])" % v)
        for a in sorted(self.logs, key=str):
            m = self.logs[a]
            parts.append(("%s*" % m if m != 1 else "") + "log(%s)" % a)
        if not self.series.is_zero() or not parts:
            parts.append(str(self.series))
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


def _bracket(X, Y):
    return X[0] * Y[1] - X[1] * Y[0]


def base_point(curve, N, z0=None):
    R = curve.ring
    v = R.var("z0") if z0 is None else R.rf(Fraction(z0))
    if z0 is not None:
        for b in curve.graph.branches_at(curve.graph.base_vertex):
            if curve.x[b] is not INF and curve.x[b] == v:
                raise PeriodError("base point z0 coincides with a coordinate")
    return (curve.const(v, N), curve.const(1, N))


def _kind(form):
    return form.kind if isinstance(form, DifferentialForm) else tuple(form)


def b_period(curve, i, form, N, z0=None):
    """Integral of a form from z0 to gamma_i(z0) in the base chart."""
    kind = _kind(form)
    check_kind(curve, kind)
    if not 1 <= i <= curve.genus:
        raise PeriodError("generator index %r outside 1..%d" % (i, curve.genus))
    if kind[0] == "second":
        return _b_second(curve, i, kind[1], kind[2], N, z0)
    return _b_pairs(curve, i, kind, N, z0)


def _b_pairs(curve, i, kind, N, z0):
    gamma = curve.basis.generators[i - 1]
    L = len(gamma)
    Np = N + L
    vb = curve.graph.base_vertex
    Z = base_point(curve, Np, z0)
    G = curve.apply_word(gamma, Z)
    mono = [0] * len(curve.yvars)
    const = curve.ring.one()
    series = curve.zero(N)
    for tau, P, Q in pair_terms(curve, kind, vb, Np, Np):
        num = 1
        den = 1
        for k, (X, Y) in enumerate(((G, P), (Z, Q), (G, Q), (Z, P))):
            m = _bracket(X, Y)
            lead = _lowest_monomial(m)
            b = m.div_monomial(lead)
            if b.order < N:
                raise PeriodError("precision loss in b-period bracket")
            sgn = 1 if k < 2 else -1
            for j, x in enumerate(lead):
                mono[j] += sgn * x
            b = b.truncate(N)
            if sgn > 0:
                num = b if num == 1 else num * b
            else:
                den = b if den == 1 else den * b
        ratio = num * den.inv()
        c = ratio.constant_term()
        const = const * c
        series = series + log1p(ratio * c.inv() - 1)
    logs = {} if const.is_one() else {const: Fraction(1)}
    return LogPeriod(tuple(mono), logs, series)


def _lowest_monomial(s):
    exps = list(s.terms)
    if not exps:
        raise PeriodError("degenerate bracket (coincident points)")
    return tuple(min(col) for col in zip(*exps))


def second_kind_primitive(curve, t, k, P):
    """f(P) with df = dz/(z-x_t)^k (or z^(k-2) dz when x_t is infinite)."""
    p0, p1 = P
    xt = curve.x[t]
    if xt is INF:
        return p0 ** (k - 1) * p1.inv() ** (k - 1) * Fraction(1, k - 1)
    u = p0 - p1 * xt
    return u.inv() ** (k - 1) * p1 ** (k - 1) * Fraction(1, 1 - k)


def _b_second(curve, i, t, k, N, z0):
    gamma = curve.basis.generators[i - 1]
    vb = curve.graph.base_vertex
    Z = base_point(curve, N, z0)
    total = curve.zero(N)
    for w in reduced_words(curve.graph, vb, N + len(gamma), dst=vb):
        # sum over the whole group of f(w gamma z0) - f(w z0)
        wg = reduce_word(w + gamma)
        total = total + second_kind_primitive(curve, t, k, curve.apply_word(wg, Z)) \
            - second_kind_primitive(curve, t, k, curve.apply_word(w, Z))
    return LogPeriod((0,) * len(curve.yvars), {}, total)


# ---------------------------------------------------------------------------
# a-periods

def a_period_residue(curve, i, form, N):
    """Residue (a-period over 2 pi i) of a form around the attracting fixed point of generator i."""
    kind = _kind(form)
    check_kind(curve, kind)
    c, w = chord_cycle(curve, i)
    f = differential(curve, kind, N, w)
    x = curve.x[c[0]]
    a = None if x is INF else x
    return f.coeff.map(lambda coef: residue_at(coef, a))


# ---------------------------------------------------------------------------
# period matrix and eta basis

def _pmap(fn, items, jobs):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def log_period_matrix(curve, N, z0=None, jobs=1):
    g = curve.genus
    idx = [(i, j) for i in range(1, g + 1) for j in range(1, g + 1)]
    vals = _pmap(lambda ij: b_period(curve, ij[0], ("first", ij[1]), N, z0), idx, jobs)
    return [[vals[(i - 1) * g + (j - 1)] for j in range(1, g + 1)] for i in range(1, g + 1)]


def series_matrix_inverse(M):
    """Gauss-Jordan inverse of a square matrix of YSeries (unit pivots only)."""
    n = len(M)
    if n == 0:
        return []
    A = [list(row) for row in M]
    one = A[0][0].const_like(1)
    zero = A[0][0].zero_like()
    I = [[one if r == c else zero for c in range(n)] for r in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not A[r][col].constant_term().is_zero():
                piv = r
                break
        if piv is None:
            raise PeriodError("matrix has a singular constant term")
        A[col], A[piv] = A[piv], A[col]
        I[col], I[piv] = I[piv], I[col]
        inv = A[col][col].inv()
        A[col] = [x * inv for x in A[col]]
        I[col] = [x * inv for x in I[col]]
        for r in range(n):
            if r != col and not A[r][col].is_zero():
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
                I[r] = [x - f * y for x, y in zip(I[r], I[col])]
    return I


@dataclass
class EtaBasis:
    """eta_j = sum_k c[j][k] omega_{t0, k+2} (0-based j, k)."""
    t0: str
    c: list
    omega: list          # the matrix Omega[i][j] = b_i(omega_{t0, j+2})

    @property
    def genus(self):
        return len(self.c)


def second_kind_b_matrix(curve, N, z0=None, jobs=1):
    g = curve.genus
    idx = [(i, j) for i in range(1, g + 1) for j in range(1, g + 1)]
    vals = _pmap(lambda ij: b_period(curve, ij[0], ("second", curve.t0, ij[1] + 1), N, z0).series,
                 idx, jobs)
    return [[vals[(i - 1) * g + (j - 1)] for j in range(1, g + 1)] for i in range(1, g + 1)]


def eta_basis(curve, N, z0=None, jobs=1):
    Om = second_kind_b_matrix(curve, N, z0, jobs)
    try:
        inv = series_matrix_inverse(Om)
    except PeriodError:
        raise PeriodError("second-kind b-period matrix is not invertible over the power series "
                          "ring (a generator's two fixed points meet at y = 0)") from None
    g = curve.genus
    c = [[inv[k][j] for k in range(g)] for j in range(g)]
    return EtaBasis(curve.t0, c, Om)


def eta_b_periods(curve, eta, N, z0=None):
    """Matrix [b_i(eta_j)]."""
    g = curve.genus
    Om = eta.omega if z0 is None else second_kind_b_matrix(curve, N, z0)
    return [[sum((eta.c[j][k] * Om[i][k] for k in range(g)), curve.zero(N))
             for j in range(g)] for i in range(g)]


def eta_a_periods(curve, eta, N):
    g = curve.genus
    res = [[a_period_residue(curve, i, ("second", curve.t0, k + 2), N) for k in range(g)]
           for i in range(1, g + 1)]
    return [[sum((eta.c[j][k] * res[i][k] for k in range(g)), curve.zero(N))
             for j in range(g)] for i in range(g)]


@dataclass
class BlockPeriods:
    """Rows: omega_1..omega_g, eta_1..eta_g.  Columns: a_1..a_g, b_1..b_g."""
    a_omega: list
    b_omega: list      # LogPeriod entries
    a_eta: list
    b_eta: list


def block_period_matrix(curve, N, z0=None, jobs=1):
    g = curve.genus
    eta = eta_basis(curve, N, z0, jobs)
    a_om = [[a_period_residue(curve, i, ("first", j), N) for i in range(1, g + 1)]
            for j in range(1, g + 1)]
    logP = log_period_matrix(curve, N, z0, jobs)
    b_om = [[logP[i][j] for i in range(g)] for j in range(g)]
    ae = eta_a_periods(curve, eta, N)
    be = eta_b_periods(curve, eta, N)
    a_eta = [[ae[i][j] for i in range(g)] for j in range(g)]
    b_eta = [[be[i][j] for i in range(g)] for j in range(g)]
    return BlockPeriods(a_om, b_om, a_eta, b_eta), logP, eta


def fmt_mono(yvars, e):
    return fmt_monomial(yvars, e) or "1"
