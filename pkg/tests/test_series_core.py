# coding = utf-8
"""
截断级数与系数环
"""

import random
from fractions import Fraction

import pytest

from coefficient_rings import (QMU_RING, QQ_RING, cyclotomic_field, ratfn, ratfn_eval_cyclotomic,
                               ratfn_eval_rational, ratfn_is_constant)
from errors import NotInvertibleError, PoleAtTorsionPointError, PrecisionError, RingMismatchError
from series_core import PuiseuxSeries

CASES = 1000


def _q(terms, precision, denom=1):
    return PuiseuxSeries.from_terms({Fraction(e): Fraction(c) for e, c in terms.items()},
                                    precision, QQ_RING, denom)


def _random_series(rng, length=6, nonzero_lead=False):
    coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(length)]
    if nonzero_lead and coeffs[0] == 0:
        coeffs[0] = Fraction(1)
    return PuiseuxSeries(QQ_RING, 1, 0, coeffs, length)


# ==================== 基本运算 ====================

def test_product_of_binomials():
    a = _q({0: 1, 1: 1}, 5)
    b = _q({0: 1, 1: -1}, 5)
    assert (a * b).terms() == [(Fraction(0), Fraction(1)), (Fraction(2), Fraction(-1))]
    assert (a * b).precision == 5


def test_geometric_series_inverse():
    inv = _q({0: 1, 1: -1}, 6).invert()
    assert inv.terms() == [(Fraction(n), Fraction(1)) for n in range(6)]


def test_fractional_exponents_and_shift():
    s = PuiseuxSeries.monomial(2, Fraction(-1, 2), Fraction(5, 2), QQ_RING, 8)
    assert s.coefficient(Fraction(-1, 2)) == 2
    assert s.valuation() == Fraction(-1, 2)
    shifted = s.shift(Fraction(1, 2))
    assert shifted.valuation() == 0
    assert shifted.precision == 3


def test_coefficient_beyond_truncation_raises():
    s = _q({0: 1}, 2)
    assert s.coefficient(1) == 0
    with pytest.raises(PrecisionError):
        s.coefficient(2)


def test_zero_series_is_not_invertible():
    with pytest.raises(NotInvertibleError):
        PuiseuxSeries.zero(QQ_RING, 1, 3).invert()


def test_ring_mismatch():
    a = PuiseuxSeries.one(QQ_RING, 1, 3)
    b = PuiseuxSeries.one(QMU_RING, 1, 3)
    with pytest.raises(RingMismatchError):
        a + b


def test_equality_requires_same_truncation():
    assert _q({0: 1}, 3) != _q({0: 1}, 4)
    assert _q({0: 1}, 3).agrees_with(_q({0: 1}, 4))
    assert _q({0: 1}, 3) == _q({0: 1}, 3).rescale(8)


def test_truncate_rounds_up_to_the_grid():
    s = _q({0: 1, 1: 2, 2: 3}, 3)
    assert s.truncate(Fraction(3, 2)).precision == 2


# ==================== 随机性质 ====================

def test_ring_axioms_randomized():
    rng = random.Random(20240601)
    for _ in range(CASES):
        a, b, c = (_random_series(rng) for _ in range(3))
        assert ((a * b) * c).agrees_with(a * (b * c))
        assert (a * (b + c)).agrees_with(a * b + a * c)
        assert (a + b).agrees_with(b + a)
        assert (a - a).is_zero()


def test_inverse_randomized():
    rng = random.Random(7)
    for _ in range(CASES):
        a = _random_series(rng, nonzero_lead=True)
        product = a * a.invert()
        assert product.terms() == [(Fraction(0), Fraction(1))]
        assert product.precision == a.precision - a.valuation()


def test_power_matches_repeated_product_randomized():
    rng = random.Random(11)
    for _ in range(CASES):
        a = _random_series(rng, length=4)
        n = rng.randint(0, 4)
        expected = PuiseuxSeries.one(QQ_RING, 1, 4)
        for _ in range(n):
            expected = expected * a
        assert (a ** n).agrees_with(expected)


# ==================== ℚ(μ) ====================

def test_ratfn_constancy():
    assert ratfn_is_constant(ratfn([2])) == (True, Fraction(2))
    assert ratfn_is_constant(ratfn([0, 1])) == (False, None)
    # (μ² − 1)/(μ − 1) 约分后是 μ + 1
    assert ratfn_is_constant(ratfn([-1, 0, 1], [-1, 1]))[0] is False
    assert ratfn_is_constant(ratfn([2, 2], [1, 1])) == (True, Fraction(2))


def test_ratfn_rational_evaluation():
    assert ratfn_eval_rational(ratfn([1, 0, 1], [0, 1]), 2) == Fraction(5, 2)
    with pytest.raises(PoleAtTorsionPointError):
        ratfn_eval_rational(ratfn([1], [-1, 1]), 1)


def test_ratfn_cyclotomic_evaluation():
    # (μ² + 1)/μ 在 μ = i 处为 0
    assert ratfn_eval_cyclotomic(ratfn([1, 0, 1], [0, 1]), 4, 1) == 0
    with pytest.raises(PoleAtTorsionPointError):
        ratfn_eval_cyclotomic(ratfn([1], [-1, 1]), 6, 0)


# ==================== 分圆域 ====================

@pytest.mark.parametrize('n', [2, 3, 4, 5, 6, 7, 8, 11, 12])
def test_zeta_has_exact_order(n):
    zeta = cyclotomic_field(n).zeta()
    assert zeta ** n == 1
    assert all(zeta ** k != 1 for k in range(1, n))


def test_cyclotomic_field_arithmetic_randomized():
    rng = random.Random(3)
    for _ in range(CASES):
        n = rng.randint(3, 12)
        field_ = cyclotomic_field(n)
        zeta = field_.zeta()
        a, b = field_.zero, field_.zero
        for i in range(field_.degree):
            a = a + zeta ** i * Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            b = b + zeta ** i * Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        if not a:
            continue
        assert (a * b) * a.inverse() == b
        assert a * a.inverse() == 1
        assert (a + b) - b == a


def test_rational_value_of_cyclotomic_element():
    field_ = cyclotomic_field(4)
    i = field_.zeta()
    assert (i * i).rational_value() == -1
    assert i.rational_value() is None
