"""Coefficient-ring arithmetic, Bernoulli numbers, and the s-series."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from hopfq.scalars import (ExactScalar, UnivariateSeries, bernoulli,
                           inv_s_series, s_series)

rationals = st.builds(Fraction, st.integers(-50, 50),
                      st.integers(1, 12))


def scalars():
    terms = st.dictionaries(
        st.tuples(st.integers(-3, 3), st.integers(0, 3)),
        rationals, max_size=4)
    return terms.map(lambda d: ExactScalar(
        {k: v for k, v in d.items() if v}))


@given(scalars(), scalars(), scalars())
@settings(max_examples=60)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + ExactScalar.zero() == a
    assert a * ExactScalar.one() == a
    assert (a - a).is_zero()


@given(scalars(), scalars(),
       st.builds(Fraction, st.integers(-5, 5).filter(lambda x: x != 0),
                 st.integers(1, 3)),
       st.builds(Fraction, st.integers(-5, 5), st.integers(1, 3)))
@settings(max_examples=60)
def test_substitution_is_a_homomorphism(a, b, eps, u0):
    def ev(x):
        return x.substitute(eps=eps, u0=u0)
    assert ev(a + b) == ev(a) + ev(b)
    assert ev(a * b) == ev(a) * ev(b)


def test_monomial_and_accessors():
    x = ExactScalar.monomial(Fraction(3, 2), eps_power=-1, u0_power=2)
    assert x.min_eps_order() == -1
    assert x.eps_powers() == [-1]
    assert x.shift_eps(1) == ExactScalar.monomial(Fraction(3, 2), 0, 2)
    assert x.substitute(eps=2, u0=1) == Fraction(3, 4)
    assert ExactScalar.hbar(Fraction(1, 2)) == ExactScalar.eps(1)


def test_as_fraction_guards():
    assert ExactScalar.from_rational(5).as_fraction() == 5
    try:
        ExactScalar.eps().as_fraction()
        assert False
    except ValueError:
        pass


def test_render_and_json_roundtrip():
    x = ExactScalar.monomial(Fraction(-1, 24), 2) + ExactScalar.u0()
    assert x.render() == "1 * u0^1 + -1/24 * eps^2"
    assert ExactScalar.from_json(x.to_json()) == x


def test_bernoulli_values():
    expected = [Fraction(1), Fraction(-1, 2), Fraction(1, 6), 0,
                Fraction(-1, 30), 0, Fraction(1, 42), 0, Fraction(-1, 30)]
    assert [bernoulli(n) for n in range(9)] == expected


def test_s_series_and_inverse():
    s = s_series(8)
    assert s[0] == 1 and s[2] == Fraction(1, 24) and s[4] == Fraction(1, 1920)
    inv = inv_s_series(8)
    prod = s * inv
    assert prod.coeffs == [1] + [0] * 8
    # 1/s coefficients are (2^{1-n} - 1) B_n / n!
    assert inv[2] == Fraction(-1, 24)
    assert inv[4] == Fraction(7, 5760)


def test_series_inverse_requires_unit():
    try:
        UnivariateSeries([0, 1]).inverse()
        assert False
    except ZeroDivisionError:
        pass
