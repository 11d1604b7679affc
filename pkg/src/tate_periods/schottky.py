"""The universal Schottky group over truncated y-series.

A `TateCurve` bundles a validated graph with its coordinates, the symbol
ring and the fixed cycle basis.  Points of P^1 are projective pairs
(p0, p1) of YSeries; infinity is (1, 0).
"""
from dataclasses import dataclass

from .algebra import YSeries
from .errors import SchottkyError
from .graph import (INF, CoordinateAssignment, coordinate_ring, coordinate_values,
                    validate_graph, spanning_tree_and_generators, neg, is_reduced,
                    reduce_word, inverse_word, cyclic_core, check_composable)


class TateCurve:
    def __init__(self, graph, coords=None, t0=None):
        coords = coords if coords is not None else CoordinateAssignment({})
        ring = coordinate_ring(graph, coords)
        report = validate_graph(graph, coords, ring)
        report.raise_if_bad()
        self.graph = graph
        self.coords = coords
        self.ring = ring
        self.x = coordinate_values(graph, coords, ring)
        self.yvars = graph.edge_ids
        self.basis = spanning_tree_and_generators(graph)
        self.genus = graph.genus
        vb = graph.base_vertex
        if t0 is None:
            t0 = graph.tails_at(vb)[0]
        elif graph.tail(t0).at != vb:
            raise SchottkyError("t0 = %s is not attached to the base vertex" % t0)
        self.t0 = t0
        self._letters = {}
        self.yindex = {e: i for i, e in enumerate(self.yvars)}

    def __repr__(self):
        return "TateCurve(g=%d, V=%s)" % (self.genus, ",".join(self.graph.vertices))

    # series helpers ----------------------------------------------------
    def zero(self, N):
        return YSeries(self.ring, self.yvars, N)

    def const(self, c, N):
        return YSeries.const(self.ring, self.yvars, N, c)

    def y(self, e, N, power=1):
        return YSeries.y(self.ring, self.yvars, N, e, power)

    def monomial(self, word):
        e = [0] * len(self.yvars)
        for h in word:
            e[self.yindex[h[:-1]]] += 1
        return tuple(e)

    def point(self, b, N):
        """Projective point of the coordinate of branch b."""
        v = self.x[b]
        if v is INF:
            return (self.const(1, N), self.zero(N))
        return (self.const(v, N), self.const(1, N))

    def z_point(self, N, sym="z"):
        return (self.const(self.ring.var(sym), N), self.const(1, N))

    # letters -----------------------------------------------------------
    def letter(self, h):
        """Entries of phi_h as pairs (c0, c1) meaning c0 + c1*y_h; det = y_h."""
        L = self._letters.get(h)
        if L is not None:
            return L
        R = self.ring
        xh, xm = self.x[h], self.x[neg(h)]
        zero, one = R.zero(), R.one()
        if xh is INF and xm is INF:
            raise SchottkyError("both halves of %s at infinity" % h[:-1])
        if xh is INF:
            L = ((one, zero), (-xm, xm), (zero, zero), (zero, one))
        elif xm is INF:
            L = ((zero, one), (xh, -xh), (zero, zero), (one, zero))
        else:
            s = (xh - xm).inv()
            L = ((s * xh, -s * xm), (-s * xh * xm, s * xh * xm), (s, -s), (-s * xm, s * xh))
        self._letters[h] = L
        return L

    def apply_letter(self, h, P):
        (a0, a1), (b0, b1), (c0, c1), (d0, d1) = self.letter(h)
        i = self.yindex[h[:-1]]
        p0, p1 = P
        s0, s1 = p0.shift_var(i), p1.shift_var(i)
        return (_lin(p0, s0, a0, a1) + _lin(p1, s1, b0, b1),
                _lin(p0, s0, c0, c1) + _lin(p1, s1, d0, d1))

    def apply_word(self, word, P):
        for h in reversed(word):
            P = self.apply_letter(h, P)
        return P


def _lin(p, s, c0, c1):
    out = p.zero_like()
    if not c0.is_zero():
        out = p * c0
    if not c1.is_zero():
        out = out + s * c1
    return out


# ---------------------------------------------------------------------------
# Moebius matrices

@dataclass(frozen=True)
class Moebius:
    a: YSeries
    b: YSeries
    c: YSeries
    d: YSeries

    def __mul__(self, o):
        return Moebius(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                       self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def apply(self, P):
        p0, p1 = P
        return (self.a * p0 + self.b * p1, self.c * p0 + self.d * p1)

    def adjugate(self):
        return Moebius(self.d, -self.b, -self.c, self.a)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def normalized(self):
        """Canonical representative: first nonzero entry has leading coefficient 1."""
        for m in self.entries():
            if not m.is_zero():
                low = min(m.terms, key=lambda e: (sum(e), tuple(-k for k in e)))
                c = m.terms[low]
                if m.valuation() > 0:
                    # a non-unit scale cannot be divided out; keep the class as is
                    s = c.inv()
                else:
                    s = m.constant_term().inv()
                return Moebius(*(x * s for x in self.entries()))
        raise SchottkyError("zero matrix")

    def projectively_equal(self, other):
        a = self.entries()
        b = other.entries()
        for i in range(4):
            for j in range(i + 1, 4):
                if not (a[i] * b[j] - a[j] * b[i]).is_zero():
                    return False
        return True


def phi_matrix(curve, h, N):
    (a0, a1), (b0, b1), (c0, c1), (d0, d1) = curve.letter(h)
    y = curve.y(h[:-1], N)

    def ent(c0, c1):
        return curve.const(c0, N) + y * c1

    return Moebius(ent(a0, a1), ent(b0, b1), ent(c0, c1), ent(d0, d1))


def identity(curve, N):
    return Moebius(curve.const(1, N), curve.zero(N), curve.zero(N), curve.const(1, N))


def word_to_moebius(curve, word, N):
    word = tuple(word)
    if word:
        check_composable(curve.graph, word)
        if not is_reduced(word):
            raise SchottkyError("word %r is not reduced" % (word,))
    M = identity(curve, N)
    for h in word:
        M = M * phi_matrix(curve, h, N)
    return M


# ---------------------------------------------------------------------------
# group elements and enumeration

@dataclass(frozen=True)
class GroupElement:
    word: tuple                 # reduced edge-word
    gens: tuple = None          # optional word in generator indices (+i / -i)

    def __len__(self):
        return len(self.word)


def extend_left(curve, src, maxlen, points, forbidden_last=(), start=()):
    """Depth-first enumeration of reduced words with source chart `src`.

    Words grow by prepending letters; `points` (a tuple of projective points
    in chart `src`) are carried along so every image costs one letter
    application.  Yields (word, dst_vertex, images).
    """
    g = curve.graph
    letters_from = _letters_from(g)

    def rec(word, v, pts):
        yield word, v, pts
        if len(word) >= maxlen:
            return
        for h in letters_from[v]:
            if word:
                if h == neg(word[0]):
                    continue
            elif h in forbidden_last:
                continue
            new = tuple(curve.apply_letter(h, P) for P in pts)
            yield from rec((h,) + word, g.terminal(h), new)

    yield from rec(tuple(start), src, points)


_LF = {}


def _letters_from(graph):
    key = id(graph)
    got = _LF.get(key)
    if got is not None and got[0] is graph:
        return got[1]
    out = {v: [] for v in graph.vertices}
    for h in graph.half_edges():
        out[graph.terminal(neg(h))].append(h)
    _LF[key] = (graph, out)
    return out


def reduced_words(graph, src, maxlen, dst=None, forbidden_last=()):
    """All reduced words with given source (and optionally target) vertex."""
    letters_from = _letters_from(graph)
    out = []

    def rec(word, v):
        if dst is None or v == dst:
            out.append(word)
        if len(word) >= maxlen:
            return
        for h in letters_from[v]:
            if word:
                if h == neg(word[0]):
                    continue
            elif h in forbidden_last:
                continue
            rec((h,) + word, graph.terminal(h))

    rec((), src)
    return out


def enumerate_words(curve, mode, maxlen, i=None):
    """mode: 'closed_at_base', 'all', or 'coset_reps' (with generator index i, 1-based)."""
    g = curve.graph
    if mode == "closed_at_base":
        vb = g.base_vertex
        return [GroupElement(w) for w in reduced_words(g, vb, maxlen, dst=vb)]
    if mode == "all":
        out = []
        for v in sorted(g.vertices):
            out += [GroupElement(w) for w in reduced_words(g, v, maxlen)]
        return out
    if mode == "coset_reps":
        if i is None or not 1 <= i <= curve.genus:
            raise SchottkyError("coset_reps needs a generator index in 1..%d" % curve.genus)
        letters = []
        for j in range(1, curve.genus + 1):
            letters += [j, -j]
        out = []

        def rec(gw):
            if not gw or abs(gw[-1]) != i:
                out.append(GroupElement(gen_word_to_edges(curve, gw), gw))
            if len(gw) >= maxlen:
                return
            for s in letters:
                if gw and s == -gw[-1]:
                    continue
                rec(gw + (s,))

        rec(())
        return out
    raise SchottkyError("unknown enumeration mode %r" % mode)


def gen_word_to_edges(curve, gw):
    w = ()
    for s in gw:
        gi = curve.basis.generators[abs(s) - 1]
        w = w + (gi if s > 0 else inverse_word(gi))
    return reduce_word(w)


# ---------------------------------------------------------------------------
# fixed points and multipliers

@dataclass(frozen=True)
class FixedPointData:
    attractive: tuple     # projective point
    repulsive: tuple
    multiplier: YSeries

    @property
    def alpha(self):
        return affine(self.attractive)

    @property
    def alpha_prime(self):
        return affine(self.repulsive)


def affine(P):
    p0, p1 = P
    if p1.constant_term().is_zero():
        raise SchottkyError("point is at infinity to leading order")
    return p0 * p1.inv()


def _newton(f, df, x, N):
    for _ in range(2 * N + 4):
        step = f(x) * df(x).inv()
        if step.is_zero():
            return x
        x = x - step
    if not f(x).is_zero():
        raise SchottkyError("Newton iteration did not converge")
    return x


def _fixed_point(curve, M, seed, N):
    a, b, c, d = M.entries()
    one = curve.const(1, N)
    if seed is INF:
        # u = 1/alpha:  b u^2 + (a - d) u - c = 0
        u = _newton(lambda u: b * u * u + (a - d) * u - c,
                    lambda u: b * u * 2 + (a - d), curve.zero(N), N)
        return (one, u)
    al = _newton(lambda x: c * x * x + (d - a) * x - b,
                 lambda x: c * x * 2 + (d - a), curve.const(seed, N), N)
    return (al, one)


def eigenvalue(M, P):
    a, b, c, d = M.entries()
    p0, p1 = P
    if not p1.constant_term().is_zero():
        return (c * p0 + d * p1) * p1.inv()
    return (a * p0 + b * p1) * p0.inv()


def core_fixed_points(curve, c, N):
    """Fixed points of a cyclically reduced closed word, in its own chart."""
    M = word_to_moebius(curve, c, N)
    att = _fixed_point(curve, M, curve.x[c[0]], N)
    rep = _fixed_point(curve, M, curve.x[neg(c[-1])], N)
    beta = eigenvalue(M, rep) * eigenvalue(M, att).inv()
    return att, rep, beta


def fixed_points_and_multiplier(curve, word, N):
    word = tuple(word.word if isinstance(word, GroupElement) else word)
    if not word:
        raise SchottkyError("the identity has no fixed points")
    g = curve.graph
    check_composable(g, word)
    if not is_reduced(word):
        raise SchottkyError("word %r is not reduced" % (word,))
    if g.terminal(word[0]) != g.terminal(neg(word[-1])):
        raise SchottkyError("word %r is not closed" % (word,))
    sigma, c = cyclic_core(word)
    att, rep, beta = _cached_core(curve, c, N)
    if sigma:
        att = curve.apply_word(sigma, att)
        rep = curve.apply_word(sigma, rep)
    return FixedPointData(att, rep, beta)


def _cached_core(curve, c, N):
    cache = curve.__dict__.setdefault("_core_cache", {})
    key = (c, N)
    if key not in cache:
        cache[key] = core_fixed_points(curve, c, N)
    return cache[key]

