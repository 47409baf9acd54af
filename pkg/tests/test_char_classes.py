# coding = utf-8
"""
示性类：分拆、单项式键、Newton 恒等式、乘法序列
"""

import random
from fractions import Fraction

import pytest

from char_classes import (CharacteristicPowerSeries, GradedPolynomial, Monomial, Partition,
                          ahat_series, elementary_generator, l_series, multiplicative_class,
                          multiplicative_sequence, parse_monomial_key, partitions_of,
                          signature_base_series, taylor_x_over_f, to_elementary, to_power_sums,
                          witten_characteristic_series)
from errors import MissingCharacteristicNumberError

CASES = 1000

P1 = Partition((1,)).monomial()
P1_SQUARED = Partition((1, 1)).monomial()
P2 = Partition((2,)).monomial()


# ==================== 分拆与单项式 ====================

def test_partitions_count():
    assert len(list(partitions_of(4))) == 5
    assert [p.key for p in partitions_of(2)] == ['p2', 'p1.p1']


def test_partition_keys():
    partition = Partition.from_key('p1.p1.p2')
    assert partition.parts == (2, 1, 1)
    assert partition.key == 'p1.p1.p2'
    assert partition.weight == 4
    with pytest.raises(ValueError):
        Partition.from_key('p2.p1')
    with pytest.raises(ValueError):
        Partition.from_key('q1')


def test_monomial_key_round_trip():
    monomial = parse_monomial_key('pY1^2.c1(nu_1)^2')
    assert monomial.key == 'pY1^2.c1(nu_1)^2'
    assert monomial.degree == 12
    assert parse_monomial_key('pY1.pY1') == parse_monomial_key('pY1^2')


def test_monomial_key_with_euler_class():
    monomial = parse_monomial_key('pF1.e', euler_degree=4)
    assert monomial.degree == 8
    with pytest.raises(ValueError):
        parse_monomial_key('e')
    with pytest.raises(ValueError):
        parse_monomial_key('c1(nu_0)')


# ==================== 命名特征级数 ====================

def test_named_series_coefficients():
    assert ahat_series(4).coeffs == (1, Fraction(-1, 24), Fraction(7, 5760))
    assert l_series(4).coeffs == (1, Fraction(1, 3), Fraction(-1, 45))
    assert signature_base_series(4).coeffs[:2] == (2, Fraction(1, 6))


def test_witten_series_bottom_layer_is_signature_base():
    witten = witten_characteristic_series(3, 4)
    assert witten.layer(0).coeffs == signature_base_series(4).coeffs


def test_x_over_f_starts_at_quarter_power_with_ahat_layer():
    Q = taylor_x_over_f(3, 4)
    assert Q.leading.valuation() == Fraction(-1, 4)
    assert Q.layer(Fraction(-1, 4)).coeffs == ahat_series(4).coeffs


# ==================== 乘法序列 ====================

def test_ahat_and_l_first_terms():
    assert multiplicative_sequence(ahat_series(4), 1)[1].terms == {P1: Fraction(-1, 24)}
    assert multiplicative_sequence(l_series(4), 1)[1].terms == {P1: Fraction(1, 3)}


def test_k3_numbers():
    table = {P1: -48}
    assert multiplicative_sequence(ahat_series(4), 1)[1].pair(table) == 2
    assert multiplicative_sequence(l_series(4), 1)[1].pair(table) == -16


def test_hp2_numbers():
    table = {P1_SQUARED: 4, P2: 7}
    assert multiplicative_sequence(l_series(8), 2)[2].pair(table) == 1
    assert multiplicative_sequence(ahat_series(8), 2)[2].pair(table) == 0


def test_second_l_polynomial():
    l2 = multiplicative_sequence(l_series(8), 2)[2]
    assert l2.terms == {P2: Fraction(7, 45), P1_SQUARED: Fraction(-1, 45)}


def test_missing_number_raises():
    with pytest.raises(MissingCharacteristicNumberError) as info:
        multiplicative_sequence(l_series(8), 2)[2].pair({P2: 7}, component='M')
    assert info.value.monomial_key == 'p1^2'


def test_rank_truncation_kills_high_elementary_classes():
    poly = multiplicative_class(l_series(8), 'p', 8, rank=1)
    assert all(g.index <= 1 for g in poly.generators())


def _random_elementary_poly(rng, top_degree=12):
    gens = [elementary_generator('p', j) for j in (1, 2, 3)]
    poly = GradedPolynomial.constant(Fraction(rng.randint(-3, 3)), top_degree)
    for _ in range(4):
        term = GradedPolynomial.constant(Fraction(rng.randint(-4, 4), rng.randint(1, 3)), top_degree)
        for _ in range(rng.randint(1, 3)):
            term = term * GradedPolynomial.generator(rng.choice(gens), top_degree)
        poly = poly + term
    return poly


def test_newton_round_trip_randomized():
    rng = random.Random(42)
    for _ in range(CASES):
        poly = _random_elementary_poly(rng)
        assert to_elementary(to_power_sums(poly)) == poly


def _random_unit_series(rng):
    coeffs = [Fraction(1)] + [Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(3)]
    return CharacteristicPowerSeries(coeffs, step=2)


def test_multiplicativity_randomized():
    rng = random.Random(5)
    for _ in range(CASES):
        q1, q2 = _random_unit_series(rng), _random_unit_series(rng)
        left = multiplicative_class(q1 * q2, 'p', 12)
        right = multiplicative_class(q1, 'p', 12) * multiplicative_class(q2, 'p', 12)
        assert left == right


def test_monomial_multiplication_merges_factors():
    a = Monomial.of({elementary_generator('pY', 1): 1})
    assert (a * a).key == 'pY1^2'
