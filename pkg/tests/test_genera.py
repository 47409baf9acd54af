# coding = utf-8
"""
非等变亏格：Witten 级数、Â 尖点展开、扭曲指标、极点阶
"""

from fractions import Fraction

import pytest

from bundles import TangentBundle, parse_bundle
from char_classes import Partition
from equivariant import S1ManifoldDescriptor
from errors import DescriptorError
from genera import (AHAT_CUSP, SIGNATURE_CUSP, ManifoldDescriptor, ahat_cusp_series, pole_order,
                    signature_from_classes, twisted_index, verify_signature, witten_series)


def _underlying(desc):
    return desc.underlying if isinstance(desc, S1ManifoldDescriptor) else desc


# ==================== K3 型 ====================

def test_k3_witten_series(k3):
    series = witten_series(k3, 3).series
    assert series.coefficient(0) == -16
    assert series.coefficient(1) == -512
    assert series.precision == 3


def test_k3_ahat_cusp(k3):
    expansion = ahat_cusp_series(k3, 3)
    assert expansion.precision == Fraction(5, 2)
    assert expansion.coefficient(Fraction(-1, 2)) == 2
    assert expansion.coefficient(Fraction(1, 2)) == 40
    assert expansion.integral
    assert pole_order(expansion).order == Fraction(1, 2)


def test_k3_twisted_indices(k3):
    assert twisted_index(k3).value == 2
    assert twisted_index(k3, TangentBundle()).value == -40
    assert twisted_index(k3, TangentBundle(), SIGNATURE_CUSP).value == -256
    assert twisted_index(k3, parse_bundle("A"), AHAT_CUSP, q_power=1).value == 40
    assert twisted_index(k3, parse_bundle("W"), SIGNATURE_CUSP, q_power=1).value == -512


# ==================== HP² 型 ====================

def test_hp2_values(hp2):
    assert signature_from_classes(hp2) == 1
    assert twisted_index(hp2).value == 0
    assert twisted_index(hp2, TangentBundle(), SIGNATURE_CUSP).value == 0


def test_hp2_witten_series_is_constant(hp2):
    series = witten_series(hp2, 3).series
    assert series.terms() == [(Fraction(0), Fraction(1))]


def test_hp2_ahat_cusp_has_no_pole(hp2):
    expansion = ahat_cusp_series(hp2, 3)
    assert expansion.coefficient(-1) == 0
    assert expansion.coefficient(0) == 1
    order = pole_order(expansion)
    assert not order.vanishes
    assert order.order == 0


# ==================== 描述校验 ====================

def test_signature_mismatch_is_reported():
    M = ManifoldDescriptor("bad", 4, True, {Partition((1,)): -48}, signature=-15)
    assert "-15" in verify_signature(M)
    assert verify_signature(ManifoldDescriptor("ok", 4, True, {Partition((1,)): -48}, -16)) is None


def test_partition_weight_must_match_dimension():
    with pytest.raises(DescriptorError):
        ManifoldDescriptor("x", 8, True, {Partition((1,)): 3})
    with pytest.raises(DescriptorError):
        ManifoldDescriptor("y", 6, True, {Partition((1,)): 3})


def test_dimension_not_divisible_by_four_gives_zero():
    M = ManifoldDescriptor("odd", 6)
    assert witten_series(M, 2).series.is_zero()
    assert pole_order(ahat_cusp_series(M, 2)).vanishes


def test_disjoint_union_adds_numbers(k3):
    double = k3.disjoint_union(k3)
    assert signature_from_classes(double) == -32
    assert double.signature == -32


# ==================== 全部示例上的恒等式 ====================

def test_first_witten_coefficient_is_twice_twisted_signature(entries):
    for name, desc in entries.items():
        M = _underlying(desc)
        expected = 2 * twisted_index(M, TangentBundle(), SIGNATURE_CUSP).value
        assert witten_series(M, 2).series.coefficient(1) == expected, name


def test_ahat_cusp_first_coefficients_are_twisted_indices(entries):
    for name, desc in entries.items():
        M = _underlying(desc)
        shift = Fraction(-M.dim, 8)
        expansion = ahat_cusp_series(M, 2)
        assert expansion.coefficient(shift) == twisted_index(M).value, name
        assert expansion.coefficient(shift + 1) == -twisted_index(M, TangentBundle()).value, name
