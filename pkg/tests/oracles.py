"""Independent reference computations used by the tests.

Nothing here calls the differential, period or polylog builders; the
oracles rebuild the expected values from first principles (signed sums of
simple fractions, plain power-series arithmetic over Fraction).
"""
from fractions import Fraction

from tate_periods.graph import INF


def _neg(h):
    return h[:-1] + ("-" if h.endswith("+") else "+")


def _vertex(graph, h):
    e = graph.edge(h[:-1])
    return e.dst if h.endswith("+") else e.src


def cyclic_core(word):
    w = list(word)
    while len(w) > 1 and w[0] == _neg(w[-1]):
        w = w[1:-1]
    return w


def tree_walk(graph, tree_edges, start, goal):
    """Half-edges h walked from start to goal inside the tree (BFS)."""
    prev = {start: None}
    queue = [start]
    while queue:
        v = queue.pop(0)
        for eid in tree_edges:
            e = graph.edge(eid)
            for h, a, b in ((eid + "+", e.src, e.dst), (eid + "-", e.dst, e.src)):
                if a == v and b not in prev:
                    prev[b] = (v, h)
                    queue.append(b)
    out = []
    v = goal
    while prev[v] is not None:
        v, h = prev[v]
        out.append(h)
    return out[::-1]


def _simple(ring, x):
    """1/(z - x) as a RationalFunction; zero when x is infinite."""
    if x is INF:
        return ring.zero()
    return (ring.var("z") - x).inv()


def closed_fiber_oracle(curve, kind, v):
    """Closed-fiber restriction of a basis form to the component of v."""
    R, g, X = curve.ring, curve.graph, curve.x
    out = R.zero()
    if kind[0] == "first":
        word = cyclic_core(curve.basis.generators[kind[1] - 1])
        for h in word:
            if _vertex(g, h) == v:
                out = out + _simple(R, X[h])
            if _vertex(g, _neg(h)) == v:
                out = out - _simple(R, X[_neg(h)])
        return out
    if kind[0] == "second":
        t, k = kind[1], kind[2]
        if g.tail(t).at != v:
            return out
        if X[t] is INF:
            return R.var("z") ** (k - 2)
        return (R.var("z") - X[t]).inv() ** k
    t1, t2 = kind[1], kind[2]
    vb = g.base_vertex
    tree = curve.basis.tree
    plus = [t1] + tree_walk(g, tree, g.tail(t1).at, vb)
    minus = [t2] + tree_walk(g, tree, g.tail(t2).at, vb)
    for h in plus:
        if h == t1:
            if g.tail(t1).at == v:
                out = out + _simple(R, X[t1])
            continue
        if _vertex(g, h) == v:
            out = out + _simple(R, X[h])
        if _vertex(g, _neg(h)) == v:
            out = out - _simple(R, X[_neg(h)])
    for h in minus:
        # the terms of -h
        if h == t2:
            if g.tail(t2).at == v:
                out = out - _simple(R, X[t2])
            continue
        if _vertex(g, _neg(h)) == v:
            out = out + _simple(R, X[_neg(h)])
        if _vertex(g, h) == v:
            out = out - _simple(R, X[h])
    return out


# ---------------------------------------------------------------------------
# power series over Fraction

def poly_coeffs(p):
    return [Fraction(int(c.p), int(c.q)) for c in p.coeffs()]


def laurent(num, den, M):
    """Laurent expansion of num/den at 0: (valuation, coefficients up to z^M)."""
    d = list(den)
    shift = 0
    while d and d[0] == 0:
        d.pop(0)
        shift += 1
    n = list(num) + [Fraction(0)] * (M + shift + 2)
    # q = n / d as a power series, then divide by z^shift
    q = []
    for i in range(M + shift + 1):
        c = n[i] - sum(q[j] * d[i - j] for j in range(max(0, i - len(d) + 1), i))
        q.append(c / d[0])
    return -shift, q


def iterated_series(letters, M):
    """Termwise iterated integration; letters are (valuation, coefficients).

    A letter with valuation -1 contributes c z^-1; its product with the
    running integral must have no constant term.
    """
    cur = {0: Fraction(1)}
    for val, cs in letters:
        prod = {}
        for i, a in cur.items():
            for j, b in enumerate(cs):
                n = i + j + val
                if n <= M - 1 and a and b:
                    prod[n] = prod.get(n, 0) + a * b
        if prod.get(-1):
            raise ValueError("divergent integral")
        cur = {n + 1: c / (n + 1) for n, c in prod.items() if c}
    return [cur.get(n, Fraction(0)) for n in range(M + 1)]


def unipotent_oracle(system, word, N, M):
    """{y-exponent: z-series} of the iterated integral, by direct expansion."""
    zero = tuple(0 for _ in system.yvars)
    acc = [(zero, [])]
    for name in word:
        L = system.letter(name)
        nxt = []
        for e, ls in acc:
            for f, r in L.coeffs.items():
                ef = tuple(a + b for a, b in zip(e, f))
                if sum(ef) > N:
                    continue
                den = [Fraction(0)] * r.a + [Fraction(1)]
                # times (z - 1)^b
                for _ in range(r.b):
                    den = [(den[i - 1] if i else 0) - (den[i] if i < len(den) else 0)
                           for i in range(len(den) + 1)]
                nxt.append((ef, ls + [laurent(poly_coeffs(r.num), den, M)]))
        acc = nxt
    out = {}
    for e, ls in acc:
        s = iterated_series(ls, M)
        old = out.get(e, [Fraction(0)] * (M + 1))
        out[e] = [a + b for a, b in zip(old, s)]
    return {e: s for e, s in out.items() if any(s)}


def li_defining_sum(index, M):
    """Coefficients of Li_index by brute-force nested summation."""
    out = [Fraction(0)] * (M + 1)

    def rec(depth, lo, acc):
        if depth == len(index):
            return
        for n in range(lo, M + 1):
            v = acc / Fraction(n) ** index[depth]
            if depth == len(index) - 1:
                out[n] += v
            else:
                rec(depth + 1, n + 1, v)

    rec(0, 1, Fraction(1))
    return out


def padic_log1m(z, p, prec, terms=200):
    """-log(1 - z) = sum z^n / n, summed far beyond the needed precision, reduced mod p^prec."""
    s = sum((Fraction(z) ** n / n for n in range(1, terms + 1)), Fraction(0))
    return s
