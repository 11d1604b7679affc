from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tate_periods.errors import PolylogError
from tate_periods.polylog import (FormLetter, LiCombo, LiSymbol, PAdic, RElem, W0, W1,
                                  iterated_integral_series, li_series, padic_li_eval, reduce_iterated_integral,
                                  shuffle_product, ONE, X)

from oracles import li_defining_sum

indices = st.lists(st.integers(1, 3), min_size=1, max_size=3).map(tuple)


def test_li_series_small():
    assert li_series((2,), 3) == [0, 1, Fraction(1, 4), Fraction(1, 9)]
    assert li_series((1, 1), 3) == [0, 0, Fraction(1, 2), Fraction(1, 2)]


@given(indices)
@settings(max_examples=30, deadline=None)
def test_li_series_oracle(s):
    assert li_series(s, 10) == li_defining_sum(s, 10)


@given(indices)
@settings(max_examples=30, deadline=None)
def test_derivative_rule(s):
    M = 10
    f = li_series(s, M)
    df = [n * f[n] for n in range(1, M + 1)]         # coefficients of z^(n-1)
    if s[-1] > 1:
        g = li_series(s[:-1] + (s[-1] - 1,), M)
        assert df == [g[n] for n in range(1, M + 1)]  # g/z
    else:
        g = li_series(s[:-1], M) if len(s) > 1 else [Fraction(1)] + [Fraction(0)] * M
        expect = [sum(g[:n + 1]) for n in range(M)]   # g/(1-z)
        assert df == expect


def test_reduction_examples():
    assert str(reduce_iterated_integral([W1])) == "Li[1](z)"
    assert str(reduce_iterated_integral([W1, W0])) == "Li[2](z)"
    assert str(reduce_iterated_integral([W1, W1])) == "Li[1,1](z)"
    assert str(reduce_iterated_integral([FormLetter("z", 0)])) == "z"
    assert reduce_iterated_integral([]) == LiCombo.one()


def test_both_spellings_of_w1():
    minus = reduce_iterated_integral([FormLetter("pole", 1)])
    plus = reduce_iterated_integral([W1])
    assert minus == -plus


def test_leading_dz_over_z_rejected():
    with pytest.raises(PolylogError):
        reduce_iterated_integral([W0, W1])


letter_st = st.sampled_from([FormLetter("z", 0), FormLetter("z", 1), FormLetter("z", 2), W0, W1,
                             FormLetter("pole", 2), FormLetter("pole", 3), FormLetter("z", 0, Fraction(-3, 2))])


@given(st.lists(letter_st, min_size=1, max_size=4))
@settings(max_examples=60, deadline=None)
def test_reduction_matches_series(word):
    if word[0] == W0:
        word[0] = W1
    combo = reduce_iterated_integral(word)
    assert combo.series(10) == iterated_integral_series(word, 10)
    assert combo.in_R_span()


def test_shuffle():
    assert shuffle_product((1,), (1,)) == LiCombo({(1, 1): 2})
    assert shuffle_product((1,), (2,)) == LiCombo({(1, 2): 2, (2, 1): 1})


@given(indices, indices)
@settings(max_examples=20, deadline=None)
def test_shuffle_matches_series_product(a, b):
    M = 9
    fa, fb = li_series(a, M), li_series(b, M)
    prod = [sum(fa[i] * fb[n - i] for i in range(n + 1)) for n in range(M + 1)]
    assert shuffle_product(a, b).series(M) == prod


def test_relem_partial_fractions():
    r = RElem(X * X + 1, 0, 2)
    poly, zp, op = r.partial_fractions()
    assert poly == 1 and zp == {} and op == {1: 2, 2: 2}
    r = RElem(ONE, 1, 1)
    assert r.partial_fractions()[1:] == ({1: -1}, {1: 1})


def test_formatting():
    c = LiCombo({(2,): 1, (1,): RElem(ONE, 0, 1)})
    assert str(c) == "Li[2](z) + (1/(z-1))*Li[1](z)"
    assert str(LiCombo({(2,): 3, (): RElem(X, 0, 1)})) == "3*Li[2](z) + z/(z-1)"
    assert str(LiCombo()) == "0"
    assert str(LiSymbol((2, 1))) == "Li[2,1](z)"


def test_padic():
    p = 5
    assert padic_li_eval((2,), 0, p, 5).is_zero()
    v = padic_li_eval((1,), p, p, 3)
    expect = sum(Fraction(p) ** n / n for n in range(1, 40))
    assert v == PAdic.from_rational(expect, p, 3)
    with pytest.raises(PolylogError):
        padic_li_eval((1,), Fraction(1, 5), p, 3)


@given(st.integers(1, 3), st.integers(2, 6))
@settings(max_examples=20, deadline=None)
def test_padic_cutoff_stability(w, prec):
    p = 3
    s = (1,) * (w - 1) + (2,) if w > 1 else (1,)
    a = padic_li_eval(s, p, p, prec)
    from tate_periods.polylog import padic_cutoff
    b = padic_li_eval(s, p, p, prec, cutoff=padic_cutoff(sum(s), 1, p, prec) + 30)
    assert a == b
