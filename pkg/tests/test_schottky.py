from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tate_periods.errors import SchottkyError
from tate_periods.graph import inverse_word, is_reduced, neg
from tate_periods.schottky import (TateCurve, enumerate_words, fixed_points_and_multiplier,
                                   phi_matrix, reduced_words, word_to_moebius)

from graphs import dumbbell, g1, theta

G1 = TateCurve(*g1())
THETA = TateCurve(*theta())
DB = TateCurve(*dumbbell())


def _proj_eq(P, Q):
    return (P[0] * Q[1] - P[1] * Q[0]).is_zero()


def test_letter_determinant_is_y():
    for C in (G1, THETA, DB):
        for h in C.graph.half_edges():
            M = phi_matrix(C, h, 2)
            assert M.det() == C.y(h[:-1], 2)


def test_letter_maps_closed_fiber_to_target_point():
    # at y = 0 every letter collapses its chart onto x_h
    C = THETA
    P = C.z_point(0)
    for h in C.graph.half_edges():
        Q = C.apply_letter(h, P)
        assert _proj_eq(Q, C.point(h, 0))


def test_g1_generator():
    M = word_to_moebius(G1, ("e+",), 2)
    y = G1.y("e", 2)
    assert (M.a, M.b, M.c, M.d) == (y, G1.zero(2), y - 1, G1.const(1, 2))


def test_fixed_points_and_multiplier_g1():
    fp = fixed_points_and_multiplier(G1, ("e+",), 3)
    assert fp.alpha == G1.zero(3) and fp.alpha_prime == G1.const(1, 3)
    assert fp.multiplier == G1.y("e", 3)


def test_fixed_points_are_fixed():
    for C in (THETA, DB):
        for w in C.basis.generators:
            fp = fixed_points_and_multiplier(C, w, 3)
            for P in (fp.attractive, fp.repulsive):
                assert _proj_eq(C.apply_word(w, P), P)


def test_inverse_has_inverse_multiplier():
    w = THETA.basis.generators[0]
    b1 = fixed_points_and_multiplier(THETA, w, 2)
    b2 = fixed_points_and_multiplier(THETA, inverse_word(w), 2)
    assert _proj_eq(b1.attractive, b2.repulsive)


def _walk(C, choices):
    """A reduced word built by prepending letters, steered by `choices`."""
    g = C.graph
    v = g.base_vertex
    word = ()
    for k in choices:
        opts = [h for h in g.half_edges() if g.terminal(neg(h)) == v and (not word or h != neg(word[0]))]
        h = opts[k % len(opts)]
        word = (h,) + word
        v = g.terminal(h)
    return word


@given(st.lists(st.integers(0, 5), max_size=5))
@settings(max_examples=25, deadline=None)
def test_word_action_inverse(choices):
    w = _walk(THETA, choices)
    assert is_reduced(w)
    P = THETA.z_point(2)
    Q = THETA.apply_word(inverse_word(w), THETA.apply_word(w, P))
    assert _proj_eq(P, Q)


def test_enumeration_counts():
    assert len(enumerate_words(G1, "closed_at_base", 3)) == 7
    words = reduced_words(THETA.graph, "v1", 2, dst="v1")
    # identity plus the 6 paths v1 -> v2 -> v1 with distinct edges
    assert len(words) == 7
    reps = enumerate_words(THETA, "coset_reps", 2, 1)
    assert all(not r.gens or abs(r.gens[-1]) != 1 for r in reps)


def test_errors():
    with pytest.raises(SchottkyError):
        fixed_points_and_multiplier(G1, (), 1)
    with pytest.raises(SchottkyError):
        enumerate_words(G1, "bogus", 1)
    with pytest.raises(SchottkyError):
        TateCurve(theta()[0], theta()[1], t0="t2")
