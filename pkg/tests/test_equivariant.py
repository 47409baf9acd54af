# coding = utf-8
"""
圆周作用：旋转数规范化、m_o、局部数据、刚性、挠点求值
"""

from fractions import Fraction

import pytest

from catalog_io import is_negative_control
from char_classes import Partition
from coefficient_rings import ratfn_is_constant
from equivariant import (FixedComponentDescriptor, RotationDatum, S1ManifoldDescriptor,
                         evaluate_at_torsion, is_isolated_for, lefschetz_sum, local_datum, m_number,
                         m_number_global, normalize_rotation, rigidity_check, sigma_codim_at,
                         sigma_codim_bound)
from errors import (BookkeepingError, EmptyFixedSetError, PoleAtTorsionPointError,
                    RotationDatumError)
from genera import ManifoldDescriptor, ahat_cusp_series

SPHERE = ManifoldDescriptor("S4", 4, True, {Partition((1,)): 0}, 0)


def _point(name, sign=1, k=1, d=2):
    return FixedComponentDescriptor(name, 0, (RotationDatum(k, d),), sign)


def _s1_entries(entries, corrupted=False):
    return {name: desc for name, desc in entries.items()
            if isinstance(desc, S1ManifoldDescriptor) and is_negative_control(name) == corrupted}


# ==================== 旋转数不变量 ====================

def test_normalize_rotation_exhaustive():
    for o in range(2, 13):
        for k in range(-50, 51):
            if k == 0:
                continue
            alpha, k_tilde = normalize_rotation(k, o)
            assert alpha in (1, -1)
            assert 0 <= k_tilde <= o // 2
            assert (alpha * k - k_tilde) % o == 0
            if k % o <= o // 2 and (-k) % o <= o // 2:
                assert alpha == 1


def test_normalize_rotation_rejects_bad_input():
    with pytest.raises(RotationDatumError):
        normalize_rotation(1, 1)
    with pytest.raises(RotationDatumError):
        normalize_rotation(0, 3)


def test_m_numbers_of_hp2_actions(entries):
    hp2 = entries['HP2_type']
    assert [m_number_global(hp2, o) for o in (2, 3, 4, 5)] == [1, 1, 1, 1]
    component = entries['HP2_s4_component']
    assert m_number_global(component, 2) == 1
    assert m_number_global(component, 3) == Fraction(2, 3)
    assert m_number_global(component, 4) == Fraction(1, 2)


def test_sigma_codimension_for_order_two_is_four_m(entries):
    for name, desc in _s1_entries(entries).items():
        for Y in desc.components:
            assert sigma_codim_at(Y, 2) == 4 * m_number(Y, 2), name


def test_isolated_and_codim_bound(entries):
    hp2 = entries['HP2_type']
    assert sigma_codim_bound(hp2, 2) == 4
    assert sigma_codim_bound(hp2, 3) == 6
    assert is_isolated_for(hp2, 4)
    assert not is_isolated_for(hp2, 3)
    assert is_isolated_for(entries['S4_rotation'], 3)


def test_empty_fixed_set():
    M = S1ManifoldDescriptor(SPHERE, True, [])
    with pytest.raises(EmptyFixedSetError):
        m_number_global(M, 2)
    with pytest.raises(EmptyFixedSetError):
        sigma_codim_bound(M, 2)
    expansion = lefschetz_sum(M, 2)
    assert expansion.series.is_zero()
    assert expansion.is_constant


# ==================== 数据校验 ====================

def test_rotation_datum_validation():
    with pytest.raises(RotationDatumError):
        RotationDatum(0, 1)
    with pytest.raises(RotationDatumError):
        RotationDatum(2, 0)


def test_bookkeeping_errors_name_the_component():
    with pytest.raises(BookkeepingError) as info:
        S1ManifoldDescriptor(SPHERE, True, [_point("N", d=1)])
    assert info.value.component == "N"
    with pytest.raises(BookkeepingError):
        FixedComponentDescriptor("Y", 0, (RotationDatum(1, 1), RotationDatum(1, 1)))
    with pytest.raises(BookkeepingError):
        FixedComponentDescriptor("Y", 0, (RotationDatum(1, 2),), orientation_sign=2)


# ==================== 局部数据与刚性 ====================

def test_point_local_datum_leading_term():
    datum = local_datum(_point("N"), 4, 2)
    assert datum.valuation() == Fraction(-1, 2)
    constant, _ = ratfn_is_constant(datum.coefficient(Fraction(-1, 2)))
    assert not constant


def test_point_local_datum_at_torsion_point():
    datum = local_datum(_point("N"), 4, 2)
    # μ ↦ ζ₆：1/(μ − μ⁻¹)² = 1/(i√3)² = −1/3
    value = evaluate_at_torsion(datum, 3, 1).coefficient(Fraction(-1, 2))
    assert value.rational_value() == Fraction(-1, 3)
    with pytest.raises(PoleAtTorsionPointError):
        evaluate_at_torsion(datum, 2, 2)


def test_sphere_rigidity_to_higher_order(entries):
    report = rigidity_check(entries['S4_rotation'], 5)
    assert report.passed
    assert report.constant_series.is_zero()


def test_rigidity_holds_on_catalog(entries):
    for name, desc in _s1_entries(entries).items():
        report = rigidity_check(desc, 5)
        assert report.passed, name
        assert report.constant_series == ahat_cusp_series(desc.underlying, 5).series, name


def test_rigidity_fails_on_negative_controls(entries):
    controls = _s1_entries(entries, corrupted=True)
    assert controls
    for name, desc in controls.items():
        assert not rigidity_check(desc, 2).passed, name


def test_corrupted_sphere_reports_first_failure(entries):
    report = rigidity_check(entries['S4_rotation_corrupted'], 2)
    assert not report.constant
    assert report.first_failure[0] == Fraction(-1, 2)


def test_hp2_constant_part_equals_ahat_cusp(entries):
    report = rigidity_check(entries['HP2_type'], 2)
    assert report.constant_series.coefficient(0) == 1
    assert report.constant_series.coefficient(-1) == 0


def test_evaluating_a_rigid_sum_returns_the_constant(entries):
    expansion = lefschetz_sum(entries['HP2_type'], 2)
    evaluated = evaluate_at_torsion(expansion, 3)
    assert evaluated.coefficient(0) == 1
    assert evaluated.coefficient(-1) == 0
