"""Residue maps, the two-step weight filtration of an edge subset, and the
identity check for the monodromy operator.

Cohomology vectors use the ordered basis
omega_1..omega_g, omega_{t0,2}..omega_{t0,g+1}.
"""
from dataclasses import dataclass
from fractions import Fraction

import flint

from .algebra import to_fraction
from .graph import contract_graph, graph_h1, signed_count, spanning_tree_and_generators
from .periods import eta_basis, log_period_matrix


def _mat(rows, ncols):
    if not rows:
        return flint.fmpq_mat(0, ncols)
    return flint.fmpq_mat([[flint.fmpq(x.numerator, x.denominator) if isinstance(x, Fraction) else x
                            for x in r] for r in rows])


def _tolist(M):
    return [[to_fraction(M[i, j]) for j in range(M.ncols())] for i in range(M.nrows())]


def rank(rows, ncols):
    return _mat(rows, ncols).rank() if rows else 0


def nullspace(rows, ncols):
    """Basis of {v : rows . v = 0} over Q."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, r = _mat(rows, ncols).rref()
    R = _tolist(R)[:r]
    pivots = []
    for row in R:
        pivots.append(next(j for j, x in enumerate(row) if x != 0))
    free = [j for j in range(ncols) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def in_span(vectors, rows, ncols):
    """Every vector lies in the row span of `rows`."""
    base = rank(rows, ncols)
    return all(rank(list(rows) + [v], ncols) == base for v in vectors)


def residue_map_matrix(curve, edges):
    """Row e, column j: Res_e of basis form j (second-kind columns are zero)."""
    edges = sorted(edges)
    for e in edges:
        curve.graph.edge(e)
    g = curve.genus
    gens = curve.basis.generators
    return [[signed_count(gens[i], e) for i in range(g)] + [0] * g for e in edges]


@dataclass
class WeightFiltration:
    edges: tuple
    residues: list          # integer matrix, rows = edges
    f1: list                # basis vectors over Q (length 2g)
    f0: list                # basis vectors with YSeries entries (length 2g)
    f0_eta: list            # the same, in eta coordinates over Q
    contracted: object      # the contracted graph
    inclusion: object       # H1Inclusion

    @property
    def dim_f0(self):
        return len(self.f0)

    @property
    def dim_f1(self):
        return len(self.f1)


def weight_filtration(curve, edges, N, eta=None):
    edges = tuple(sorted(edges))
    g = curve.genus
    R = residue_map_matrix(curve, edges)
    f1 = nullspace([[Fraction(x) for x in r] for r in R], 2 * g)
    sub = contract_graph(curve.graph, edges)
    inc = graph_h1(sub, curve.basis)
    f0_eta = [[Fraction(x) for x in row] for row in inc.matrix]
    if f0_eta and eta is None:
        eta = eta_basis(curve, N)
    f0 = []
    for row in f0_eta:
        vec = [curve.zero(N) for _ in range(g)]
        for k in range(g):
            acc = curve.zero(N)
            for j in range(g):
                if row[j]:
                    acc = acc + eta.c[j][k] * row[j]
            vec.append(acc)
        f0.append(vec)
    return WeightFiltration(edges, R, f1, f0, f0_eta, sub, inc)


def f0_in_f1(curve, wf):
    """F0 is inside F1: the residue map kills every F0 vector."""
    g = curve.genus
    for v in wf.f0:
        for row in wf.residues:
            acc = curve.zero(v[0].order)
            for j in range(2 * g):
                if row[j]:
                    acc = acc + v[j] * row[j]
            if not acc.is_zero():
                return False
    return True


@dataclass
class IdentityReport:
    ok: bool
    operator: list       # matrix of the induced operator on H^1 of the contracted graph
    residue_side: list   # rows: omega_i, columns: chord-dual coordinates
    period_side: list    # same, from the y-exponents of the periods
    message: str = ""


def monodromy_identity_check(curve, edges, N, logP=None):
    edges = tuple(sorted(edges))
    g = curve.genus
    sub = contract_graph(curve.graph, edges)
    sb = spanning_tree_and_generators(sub)
    inc = graph_h1(sub, curve.basis)
    gp = len(sb.chords)
    if gp == 0:
        return IdentityReport(True, [], [[] for _ in range(g)], [[] for _ in range(g)],
                              "no cycles survive the contraction")
    if logP is None:
        logP = log_period_matrix(curve, N)
    eidx = {e: k for k, e in enumerate(curve.yvars)}
    gens = curve.basis.generators
    # residue coordinates of omega_i in H^1 of the contracted graph
    S = []
    for i in range(g):
        S.append([Fraction(sum(signed_count(gens[i], e) * signed_count(d, e) for e in edges))
                  for d in sb.generators])
    # monodromy: b-period exponents summed over the chosen edges
    Y = [[Fraction(sum(logP[i][j].mono[eidx[e]] for e in edges)) for j in range(g)]
         for i in range(g)]
    B = [[Fraction(x) for x in row] for row in inc.matrix]
    # express each row of Y through the inclusion rows: Y_i = T_i B
    T = []
    for i in range(g):
        if not in_span([Y[i]], B, g):
            return IdentityReport(False, [], S, [], "monodromy of omega_%d leaves F0" % (i + 1))
        T.append(_solve_left(B, Y[i]))
    # operator A with T = S A
    A = _solve_right(S, T, gp)
    if A is None:
        return IdentityReport(False, [], S, T, "period side is not a function of the residue side")
    ident = [[Fraction(int(a == b)) for b in range(gp)] for a in range(gp)]
    ok = A == ident
    return IdentityReport(ok, A, S, T, "" if ok else "operator differs from the identity")


def _solve_left(B, y):
    """x with x B = y (B has independent rows)."""
    Bt = _mat([list(col) for col in zip(*B)], len(B))
    # least squares via normal equations (exact since y is in the row span)
    BBt = _mat(B, len(B[0])) * Bt
    rhs = _mat(B, len(B[0])) * _mat([[v] for v in y], 1)
    x = BBt.solve(rhs)
    return [to_fraction(x[i, 0]) for i in range(x.nrows())]


def _solve_right(S, T, gp):
    """A with T = S A, or None."""
    Sm = _mat(S, gp)
    Tm = _mat(T, gp)
    StS = Sm.transpose() * Sm
    if StS.rank() < gp:
        return None
    A = StS.solve(Sm.transpose() * Tm)
    if Sm * A != Tm:
        return None
    return _tolist(A)
