from math import comb

from hypothesis import given, strategies as st

from kolchin.polynomial import NumericalPolynomial as P

coeff_lists = st.lists(st.integers(-50, 50), max_size=6)


def test_strips_trailing_zeros_and_degree():
    assert P((1, 2, 0, 0)).coeffs == (1, 2)
    assert P(()).degree == -1
    assert P((0, 0, 3)).degree == 2


def test_basis_values():
    for i in range(5):
        for s in range(8):
            assert P.basis(i)(s) == comb(s + i, i)


def test_shift_back_examples():
    assert P((0, 1)).shift_back().coeffs == (-1, 1)
    assert P.constant(7).shift_back() == P.constant(7)
    q = P((0, 0, 1)).shift_back()
    assert q == P((0, 0, 1)) - P((0, 1))
    for s in range(6):
        assert q(s) == P((0, 0, 1))(s - 1)
    assert q(3) == 6


@given(coeff_lists, st.integers(0, 12), st.integers(-10, 20))
def test_shift_back_is_evaluation_shift(coeffs, k, s):
    p = P(tuple(coeffs))
    assert p.shift_back(k)(s) == p(s - k)


@given(coeff_lists, coeff_lists, st.integers(-5, 15))
def test_addition_pointwise(a, b, s):
    assert (P(tuple(a)) + P(tuple(b)))(s) == P(tuple(a))(s) + P(tuple(b))(s)
    assert (P(tuple(a)) - P(tuple(a))) == P()


def test_render():
    assert P(()).render() == "0"
    assert P((1, 0, 1)).render() == "C(t+2,2) + 1"
    assert P((-3, 2)).render() == "2*C(t+1,1) - 3"
    assert P((0, -1)).render() == "-C(t+1,1)"
