"""Universal differentials as truncated y-series of rational 1-forms.

Forms of the first and third kind are orbit sums of dz/(z-P) - dz/(z-Q)
over pairs of projective points.  Every pair is tau(A_j), tau(B_j) where
(A_j, B_j) runs through a short list of "seed" pairs and tau through reduced
words avoiding a forbidden last letter; the term has y-order >= len(tau),
so enumerating len(tau) <= N is exact to order N.

Second kind forms sum pi^*(dz/(z-x_t)^k) over reduced words pi from the
chart vertex to the base vertex.
"""
from dataclasses import dataclass

from .errors import DifferentialError
from .graph import INF, neg, inverse_word, reduce_word, cyclic_core
from .schottky import extend_left, core_fixed_points, word_to_moebius, GroupElement


@dataclass(frozen=True)
class DifferentialForm:
    kind: tuple        # ("first", i) | ("second", t, k) | ("third", t1, t2)
    chart: str         # vertex whose coordinate z is used
    coeff: object      # YSeries, coefficient of dz

    @property
    def order(self):
        return self.coeff.order

    def __str__(self):
        s = str(self.coeff)
        return "(%s) dz" % s if s != "0" else "0"


def kind_name(kind):
    if kind[0] == "first":
        return "omega%d" % kind[1]
    if kind[0] == "second":
        return "omega_%s_%d" % (kind[1], kind[2])
    return "omega_%s_%s" % (kind[1], kind[2])


def check_kind(curve, kind):
    g = curve.graph
    if kind[0] == "first":
        if not 1 <= kind[1] <= curve.genus:
            raise DifferentialError("first-kind index %r outside 1..%d" % (kind[1], curve.genus))
        # the fixed points of a generator must stay finite at the base vertex
        for h in g.letters_into(g.base_vertex):
            if curve.x[h] is INF:
                raise DifferentialError("edge half %s at the base vertex is at infinity" % h)
    elif kind[0] == "second":
        t, k = kind[1], kind[2]
        if g.tail(t).at != g.base_vertex:
            raise DifferentialError("tail %s is not at the base vertex" % t)
        if k < 2:
            raise DifferentialError("second-kind order k must be >= 2, got %d" % k)
    elif kind[0] == "third":
        t1, t2 = kind[1], kind[2]
        g.tail(t1)
        g.tail(t2)
        if t1 == t2:
            raise DifferentialError("third kind needs two distinct tails")
    else:
        raise DifferentialError("unknown form kind %r" % (kind,))


# ---------------------------------------------------------------------------
# seed pairs

def chord_cycle(curve, i):
    """Cyclically reduced generator i rotated to start with its chord (c, w)."""
    gen = curve.basis.generators[i - 1]
    chord = curve.basis.chords[i - 1] + "+"
    _, core = cyclic_core(gen)
    k = core.index(chord)
    c = core[k:] + core[:k]
    return c, curve.graph.terminal(c[0])


def pair_seeds(curve, kind, N):
    """List of (vertex, A, B, forbidden_last) with A, B at precision N."""
    g = curve.graph
    if kind[0] == "first":
        c, _ = chord_cycle(curve, kind[1])
        att, rep, _ = core_fixed_points(curve, c, N)
        l = len(c)
        out = []
        for j in range(l):
            if j == 0:
                A, B = att, rep
            else:
                A = curve.apply_word(c[j:], att)
                B = curve.apply_word(inverse_word(c[:j]), rep)
            out.append((g.terminal(c[j]), A, B, frozenset((neg(c[j]), c[j - 1]))))
        return out
    if kind[0] == "third":
        t1, t2 = kind[1], kind[2]
        tw = curve.basis.tree_words
        kappa = reduce_word(inverse_word(tw[g.tail(t1).at]) + tw[g.tail(t2).at])
        m = len(kappa)
        P1 = curve.point(t1, N)
        P2 = curve.point(t2, N)
        out = []
        for j in range(m + 1):
            A = curve.apply_word(inverse_word(kappa[:j]), P1)
            B = curve.apply_word(kappa[j:], P2)
            v = g.tail(t1).at if j == 0 else g.terminal(neg(kappa[j - 1]))
            forb = set()
            if j >= 1:
                forb.add(kappa[j - 1])
            if j < m:
                forb.add(neg(kappa[j]))
            out.append((v, A, B, frozenset(forb)))
        return out
    raise DifferentialError("no seed pairs for %r" % (kind,))


def pair_terms(curve, kind, chart, N, cutoff):
    """Yield (tau, P, Q) for all orbit terms in `chart` with len(tau) <= cutoff."""
    for v, A, B, forb in pair_seeds(curve, kind, N):
        for tau, dst, (P, Q) in extend_left(curve, v, cutoff, (A, B), forb):
            if dst == chart:
                yield tau, P, Q


def kernel(curve, P, zsym="z"):
    """Coefficient of dz/(z - P) for a projective point P."""
    p0, p1 = P
    z = curve.ring.var(zsym)
    D = p1 * z - p0
    return p1 * D.inv()


def pair_kernel(curve, P, Q, zsym="z"):
    """Coefficient of dz/(z-P) - dz/(z-Q) = [P,Q] dz / ((z p1 - p0)(z q1 - q0))."""
    p0, p1 = P
    q0, q1 = Q
    z = curve.ring.var(zsym)
    br = p0 * q1 - p1 * q0
    if br.is_zero():
        return br
    D = (p1 * z - p0) * (q1 * z - q0)
    return br * D.inv()


def _trunc_pt(P, N):
    return (P[0].truncate(N), P[1].truncate(N))


# ---------------------------------------------------------------------------
# builders

def differential(curve, kind, N, chart=None):
    check_kind(curve, kind)
    g = curve.graph
    chart = g.base_vertex if chart is None else chart
    if chart not in g.vertices:
        raise DifferentialError("unknown vertex %r" % chart)
    if kind[0] == "second":
        coeff = _second_kind(curve, kind[1], kind[2], chart, N)
    else:
        coeff = curve.zero(N)
        for tau, P, Q in pair_terms(curve, kind, chart, N, N):
            coeff = coeff + pair_kernel(curve, P, Q)
    return DifferentialForm(tuple(kind), chart, coeff)


def omega_first(curve, i, N, chart=None):
    return differential(curve, ("first", i), N, chart)


def omega_second(curve, t, k, N, chart=None):
    return differential(curve, ("second", t, k), N, chart)


def omega_third(curve, t1, t2, N, chart=None):
    return differential(curve, ("third", t1, t2), N, chart)


def second_kind_term(curve, M, t, k, zsym="z", det_mono=None):
    """pi^*(dz/(z-x_t)^k) (or of z^(k-2) dz when x_t is infinite) for pi = M.

    M is a tuple (a, b, c, d); its determinant is y^det_mono exactly.
    """
    a, b, c, d = M
    z = curve.ring.var(zsym)
    xt = curve.x[t]
    if xt is INF:
        num = a * z + b
        L = c * z + d
    else:
        num = c * z + d
        L = (a - c * xt) * z + (b - d * xt)
    term = L.inv() ** k
    if k > 2:
        term = term * num ** (k - 2)
    if det_mono is not None:
        term = term.mul_monomial(det_mono)
    return term


def second_kind_words(curve, chart, N, cutoff=None):
    """Yield (pi, (a, b, c, d)) for reduced pi from `chart` to the base vertex."""
    g = curve.graph
    cutoff = N if cutoff is None else cutoff
    one, zero = curve.const(1, N), curve.zero(N)
    cols = ((one, zero), (zero, one))
    for pi, dst, ((a, c), (b, d)) in extend_left(curve, chart, cutoff, cols):
        if dst == g.base_vertex:
            yield pi, (a, b, c, d)


def _second_kind(curve, t, k, chart, N):
    coeff = curve.zero(N)
    for pi, M in second_kind_words(curve, chart, N):
        coeff = coeff + second_kind_term(curve, M, t, k, det_mono=curve.monomial(pi))
    return coeff


# ---------------------------------------------------------------------------
# pullback and restriction

def common_monomial(series_list):
    exps = [e for s in series_list for e in s.terms]
    if not exps:
        return None
    return tuple(min(col) for col in zip(*exps))


def strip_monomial(series_list):
    m = common_monomial(series_list)
    if m is None or not any(m):
        return list(series_list), 0
    return [s.div_monomial(m) for s in series_list], sum(m)


def pullback(curve, form, w, N=None):
    """w^* form for a word w whose target chart is the form's chart.

    The result lives in the chart of the source of w.
    """
    w = tuple(w.word if isinstance(w, GroupElement) else w)
    g = curve.graph
    N = form.order if N is None else N
    kind = form.kind
    if not w:
        return differential(curve, kind, N, form.chart)
    if g.terminal(w[0]) != form.chart:
        raise DifferentialError("word does not end in the form's chart")
    src = g.terminal(neg(w[-1]))
    Np = N + len(w)
    winv = inverse_word(w)
    coeff = curve.zero(N)
    if kind[0] == "second":
        t, k = kind[1], kind[2]
        Mw = word_to_moebius(curve, w, Np)
        for pi, (a, b, c, d) in second_kind_words(curve, form.chart, Np, Np):
            # matrix of pi.w; cancelled letters leave a common y-monomial m
            prod = [a * Mw.a + b * Mw.c, a * Mw.b + b * Mw.d,
                    c * Mw.a + d * Mw.c, c * Mw.b + d * Mw.d]
            m = common_monomial(prod)
            det = tuple(x - 2 * y for x, y in zip(curve.monomial(pi + w), m))
            if sum(det) > N:
                continue
            M = [s.div_monomial(m).truncate(N) for s in prod]
            coeff = coeff + second_kind_term(curve, M, t, k, det_mono=det)
        return DifferentialForm(kind, src, coeff)
    for tau, P, Q in pair_terms(curve, kind, form.chart, Np, Np):
        P2 = curve.apply_word(winv, P)
        Q2 = curve.apply_word(winv, Q)
        (p0, p1), _ = strip_monomial(list(P2))
        (q0, q1), _ = strip_monomial(list(Q2))
        if min(p0.order, p1.order, q0.order, q1.order) < N:
            raise DifferentialError("precision loss in pullback")
        term = pair_kernel(curve, (p0.truncate(N), p1.truncate(N)), (q0.truncate(N), q1.truncate(N)))
        coeff = coeff + term
    return DifferentialForm(kind, src, coeff)


def restrict_closed_fiber(curve, form_or_kind, v):
    """The y^0 coefficient of the form in the chart of vertex v."""
    kind = form_or_kind.kind if isinstance(form_or_kind, DifferentialForm) else tuple(form_or_kind)
    f = differential(curve, kind, 0, v)
    return f.coeff.constant_term()


def declared_poles(curve, v):
    return [curve.x[b] for b in curve.graph.branches_at(v) if curve.x[b] is not INF]
