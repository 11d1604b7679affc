import itertools

import pytest

from tate_periods.differentials import restrict_closed_fiber
from tate_periods.errors import UnipotentError
from tate_periods.graph import StableGraph, Tail
from tate_periods.polylog import LiCombo, RElem, ONE, X, reduce_iterated_integral, W0, W1
from tate_periods.schottky import TateCurve
from tate_periods.unipotent import (kz_residual, kz_solution, local_forms_at_tail, standard_curve,
                                    unipotent_period)

from graphs import g1t2, theta
from oracles import unipotent_oracle

G1T2 = standard_curve(g1t2())
SYS = local_forms_at_tail(G1T2, "t1", 1)


def p1_three_points():
    g = StableGraph(("v",), (), (Tail("t0", "v", 1), Tail("t1", "v", 2), Tail("t2", "v", 3)), "v")
    return standard_curve(g)


def test_local_letters_g1t2():
    assert SYS.names == ["omega1", "omega_t0_2", "omega_t1_t0"]
    res = SYS.letter("omega_t1_t0")
    assert res.residue == 1
    assert res.coeffs[(0, 0)] == RElem(ONE, 1, 0)              # dz/z
    # dz/z^2 at x_t0 = 0 becomes -dw under w = 1/z
    assert SYS.letter("omega_t0_2").coeffs == {(0, 0): RElem.const(-1)}
    # omega_1 vanishes on the closed fiber of v2 (its cycle lives at v1)
    assert restrict_closed_fiber(G1T2, ("first", 1), "v2").is_zero()
    assert (0, 0) not in SYS.letter("omega1").coeffs


def test_empty_word():
    up = unipotent_period(SYS, ())
    assert str(up) == "1"


def test_spec_word():
    up = unipotent_period(SYS, "omega1,omega_t1_t0", 1)
    assert str(up) == "y[b] * Li[1](z)"


def test_series_oracle_length_three():
    N, M = 1, 10
    for word in itertools.product(SYS.names, repeat=3):
        if word[0] == SYS.residue_letter:
            continue
        up = unipotent_period(SYS, word, N)
        got = {e: s for e, s in up.series(M).items() if any(s)}
        assert got == unipotent_oracle(SYS, word, N, M), word


def test_kz_solution_normalized_and_consistent():
    m, N, M = 3, 1, 10
    sol = kz_solution(SYS, m, N, M)
    assert kz_residual(sol) == {}
    for k in (1, 2, 3):
        for word in itertools.product(SYS.names, repeat=k):
            if word[0] == SYS.residue_letter:
                continue
            up = unipotent_period(SYS, word, N)
            want = {e: s for e, s in up.series(M).items() if any(s)}
            got = {e: s for e, s in sol.coefficient(tuple(reversed(word))).items() if any(s)}
            assert got == want, word


def test_genus_zero_classical_polylogs():
    C = p1_three_points()
    S = local_forms_at_tail(C, "t1", 0)
    # omega_{t2,t0} = dz/(1-z), omega_{t1,t0} = dz/z + dz/(1-z)
    assert unipotent_period(S, ("omega_t2_t0",)).terms[()] == LiCombo.li(1)
    two = unipotent_period(S, ("omega_t2_t0", "omega_t1_t0")).terms[()]
    assert two == reduce_iterated_integral([W1, W0]) + reduce_iterated_integral([W1, W1])
    sol = kz_solution(S, 3, 0, 8)
    assert kz_residual(sol) == {}


def test_parallel_reduction_is_deterministic():
    for word in (("omega1", "omega_t1_t0"), ("omega_t0_2", "omega1", "omega_t1_t0")):
        assert str(unipotent_period(SYS, word, 1, jobs=1)) == str(unipotent_period(SYS, word, 1, jobs=4))


def test_errors():
    with pytest.raises(UnipotentError):
        unipotent_period(SYS, ("omega_t1_t0", "omega1"))
    with pytest.raises(UnipotentError):
        unipotent_period(SYS, ("omega7",))
    with pytest.raises(UnipotentError):
        local_forms_at_tail(G1T2, "t0", 1)
    with pytest.raises(UnipotentError):
        local_forms_at_tail(TateCurve(*theta()), "t2", 1)       # not trivalent
    with pytest.raises(UnipotentError):
        unipotent_period(SYS, ("omega1",), 2)                   # beyond the system order
