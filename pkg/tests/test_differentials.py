import pytest

from tate_periods.algebra import partial_fractions_z, residue_at
from tate_periods.differentials import (declared_poles, differential, omega_first, omega_second,
                                        omega_third, pullback, restrict_closed_fiber)
from tate_periods.errors import DifferentialError
from tate_periods.schottky import TateCurve

from graphs import dumbbell, g1, theta

G1 = TateCurve(*g1())
G1S = TateCurve(*g1(symbolic=True))
THETA = TateCurve(*theta())
DB = TateCurve(*dumbbell())


def test_g1_first_kind_symbolic():
    R = G1S.ring
    z, a, b = R.var("z"), R.var("x[e+]"), R.var("x[e-]")
    f = omega_first(G1S, 1, 2)
    assert f.coeff.constant_term() == 1 / (z - a) - 1 / (z - b)
    # the fixed points of phi_{e+} are exactly x_{e+}, x_{e-}: no y-corrections
    assert len(f.coeff.terms) == 1


def test_g1_second_kind_first_order_by_hand():
    R = G1.ring
    z = R.var("z")
    f = omega_second(G1, "t", 2, 1)
    assert f.coeff.constant_term() == 1 / (z + 1) ** 2
    # words e+ and e-: y/(z-1)^2 and y/(4 z^2)
    assert f.coeff.coeff((1,)) == 1 / (z - 1) ** 2 + 1 / (4 * z * z)


def test_second_kind_at_infinity():
    R = DB.ring
    z = R.var("z")
    # relabel: a tail at infinity on the base vertex
    from tate_periods.graph import CoordinateAssignment, INF
    g, c = dumbbell()
    vals = dict(c.values)
    vals["t1"], vals["c-"] = INF, vals["t1"]
    C = TateCurve(g, CoordinateAssignment(vals))
    assert restrict_closed_fiber(C, ("second", "t1", 3), "v1") == C.ring.var("z")


def _tail_residues(curve, form, v):
    """Nonzero residues at the marked points of the component (nodes excluded)."""
    out = {}
    for e, coef in form.coeff.terms.items():
        for t in curve.graph.tails_at(v):
            r = residue_at(coef, curve.x[t])
            if not r.is_zero():
                out[(e, t)] = r
    return out


def test_third_kind_residues():
    N = 2
    f = omega_third(THETA, "t1", "t2", N, chart="v1")
    assert _tail_residues(THETA, f, "v1") == {((0, 0, 0), "t1"): THETA.ring.one()}
    f = omega_third(THETA, "t1", "t2", N, chart="v2")
    assert _tail_residues(THETA, f, "v2") == {((0, 0, 0), "t2"): -THETA.ring.one()}


def test_first_and_second_kind_have_no_residues_at_tails():
    N = 2
    for kind in (("first", 1), ("first", 2), ("second", "t1", 2), ("second", "t1", 3)):
        for v in ("v1", "v2"):
            assert _tail_residues(THETA, differential(THETA, kind, N, v), v) == {}


def test_residue_sum_vanishes():
    N = 2
    for kind in (("first", 1), ("third", "t1", "t2"), ("second", "t1", 2)):
        f = differential(THETA, kind, N, "v1")
        for coef in f.coeff.terms.values():
            total = residue_at(coef, None)
            for x in declared_poles(THETA, "v1"):
                total = total + residue_at(coef, x)
            assert total.is_zero()


def test_poles_are_declared():
    N = 2
    for C in (THETA, DB):
        for kind in (("first", 1), ("first", 2), ("second", C.t0, 2), ("third", "t2", "t1")):
            for v in C.graph.vertices:
                f = differential(C, kind, N, v)
                for coef in f.coeff.terms.values():
                    pf = partial_fractions_z(coef, declared_poles(C, v))
                    assert pf.recombine() == coef


def test_pullback_by_tree_letter_changes_chart():
    N = 2
    f = differential(THETA, ("first", 1), N, "v1")
    g = pullback(THETA, f, ("e1-",), N)
    assert g.chart == "v2"
    # pulling back along e1- is the same as computing the form in chart v2
    assert g.coeff == differential(THETA, ("first", 1), N, "v2").coeff


def test_errors():
    with pytest.raises(DifferentialError):
        omega_first(THETA, 3, 1)
    with pytest.raises(DifferentialError):
        omega_second(THETA, "t2", 2, 1)
    with pytest.raises(DifferentialError):
        omega_second(THETA, "t1", 1, 1)
    with pytest.raises(DifferentialError):
        omega_third(THETA, "t1", "t1", 1)
    f = differential(THETA, ("first", 1), 1, "v1")
    with pytest.raises(DifferentialError):
        pullback(THETA, f, ("e1+",), 1)
