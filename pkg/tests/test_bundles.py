# coding = utf-8
"""
丛表达式：解析与 Chern 特征
"""

from fractions import Fraction

import pytest

from bundles import (BundleSum, BundleTensor, ExteriorPower, LambdaT, QShift, SymT, SymmetricPower,
                     TangentBundle, TrivialBundle, bundle_chern_character, parse_bundle)
from char_classes import ONE, Monomial, power_sum_generator
from errors import DescriptorError, NonTruncatingBundleError


def test_parse_sum_and_tensor():
    assert parse_bundle("L2 + TM") == BundleSum(ExteriorPower(2), TangentBundle())
    expr = parse_bundle("TM * (1 + S2)")
    assert expr == BundleTensor(TangentBundle(), BundleSum(TrivialBundle(1), SymmetricPower(2)))
    assert str(expr) == "TM * (1 + S2)"


@pytest.mark.parametrize('text', ["", "TM +", "(TM", "X", "TM TM", "L"])
def test_parse_errors(text):
    with pytest.raises(DescriptorError):
        parse_bundle(text)


def test_untruncated_formal_variable_is_rejected():
    with pytest.raises(NonTruncatingBundleError):
        LambdaT(0)
    with pytest.raises(NonTruncatingBundleError):
        SymT(-1)
    with pytest.raises(NonTruncatingBundleError):
        QShift(TangentBundle(), -1)


def test_trivial_and_tangent_characters():
    assert bundle_chern_character(TrivialBundle(3), 2, 2, 1).terms == {ONE: 3}
    ch_tm = bundle_chern_character(TangentBundle(), 2, 2, 1)
    assert ch_tm.terms == {ONE: 4, Monomial.of({power_sum_generator('p', 1): 1}): 1}
    assert bundle_chern_character(ExteriorPower(1), 2, 2, 1) == ch_tm
    assert bundle_chern_character(SymmetricPower(1), 2, 2, 1) == ch_tm
    assert bundle_chern_character(ExteriorPower(0), 2, 2, 1).terms == {ONE: 1}


def test_ranks_of_powers():
    # 复化切丛秩 4：Λ² 秩 6，S² 秩 10
    assert bundle_chern_character(ExteriorPower(2), 2, 0, 1).constant_term() == 6
    assert bundle_chern_character(SymmetricPower(2), 2, 0, 1).constant_term() == 10


def test_lambda_t_rank_generating_function():
    ch = bundle_chern_character(LambdaT(1), 2, 0, 3)
    series = ch.constant_term()
    assert series.coefficient(0) == 1
    assert series.coefficient(1) == 4
    assert series.coefficient(2) == 6


def test_sym_t_rank_generating_function():
    series = bundle_chern_character(SymT(1), 2, 0, 3).constant_term()
    assert series.coefficient(1) == 4
    assert series.coefficient(2) == Fraction(10)
