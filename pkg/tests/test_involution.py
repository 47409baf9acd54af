# coding = utf-8
"""
对合不动点公式与两条消失规则
"""

import pytest

from bundles import ExteriorPower, TangentBundle, TrivialBundle, WittenBundle
from char_classes import parse_monomial_key
from equivariant import FixedComponentDescriptor, RotationDatum
from errors import BookkeepingError, EllipticGenusError
from genera import ManifoldDescriptor, witten_series
from involution import (COHOMOLOGY_VANISHING, EULER_CLASS_ZERO, SigmaComponentDescriptor,
                        derive_sigma_component, involution_identity, self_intersection_series,
                        sigma_local_datum, sigma_local_series, sigma_series_sum, vanishing_rule)

IDENTITY_ENTRIES = ['HP2_type', 'HP2_s4_component', 'S4xK3_rotation', 'trivial_action_K3',
                    'S4_rotation', 'S8_rotation']


def _hp1_in_hp2():
    return SigmaComponentDescriptor("F1", 4, 4, 1, False, {parse_monomial_key('e', 4): 1})


@pytest.mark.parametrize('name', IDENTITY_ENTRIES)
def test_involution_identity_on_catalog(entries, name):
    report = involution_identity(entries[name], 5)
    assert report.holds, name


def test_sigma_sum_of_hp2_is_its_signature(entries):
    hp2 = entries['HP2_type']
    total = sigma_series_sum(hp2, 3)
    assert total == witten_series(hp2.underlying, 3).series
    assert total.terms() == [(0, 1)]


def test_hp1_local_data():
    F = _hp1_in_hp2()
    assert sigma_local_datum(F, TrivialBundle(1)) == 1
    # σ 在 TF 上为 +1、在 ν 上为 −1，秩相抵
    assert sigma_local_datum(F, TangentBundle()) == 0
    series = sigma_local_series(F, WittenBundle(), 3)
    assert series.terms() == [(0, 1)]
    assert self_intersection_series(F, 3) == series


def test_euler_class_zero_kills_every_layer():
    F = SigmaComponentDescriptor("F", 4, 4, 1, True)
    for bundle in (TrivialBundle(1), TangentBundle(), ExteriorPower(2)):
        for layer in (0, 1):
            assert sigma_local_datum(F, bundle, layer) == 0
    assert sigma_local_series(F, WittenBundle(), 3).is_zero()
    assert self_intersection_series(F, 3).is_zero()


def test_euler_class_zero_needs_positive_codimension():
    with pytest.raises(BookkeepingError):
        SigmaComponentDescriptor("F", 8, 0, 1, True)


def test_euler_class_zero_rejects_nonzero_euler_numbers():
    with pytest.raises(BookkeepingError):
        SigmaComponentDescriptor("F", 4, 4, 1, True, {parse_monomial_key('e', 4): 1})


def test_vanishing_rules():
    eight_sphere = ManifoldDescriptor("S8", 8, True, {}, 0, connectivity=7)
    assert vanishing_rule(SigmaComponentDescriptor("F", 4, 4), eight_sphere) == COHOMOLOGY_VANISHING
    assert vanishing_rule(SigmaComponentDescriptor("pt", 0, 8), eight_sphere) is None
    declared = ManifoldDescriptor("M", 8, True, {}, 0, cohomology_vanishing_r=2)
    assert vanishing_rule(SigmaComponentDescriptor("pt", 0, 8), declared) == COHOMOLOGY_VANISHING
    assert vanishing_rule(SigmaComponentDescriptor("F", 4, 4, 1, True), declared) == EULER_CLASS_ZERO
    hp2_like = ManifoldDescriptor("HP2", 8, True, {}, connectivity=3)
    assert vanishing_rule(_hp1_in_hp2(), hp2_like) is None


def test_vanishing_rule_with_requested_r():
    declared = ManifoldDescriptor("M", 8, True, {}, 0, cohomology_vanishing_r=2)
    point = SigmaComponentDescriptor("pt", 0, 8)
    assert vanishing_rule(point, declared, 1) is None
    assert vanishing_rule(point, declared, 2) == COHOMOLOGY_VANISHING
    eight_sphere = ManifoldDescriptor("S8", 8, True, {}, 0, connectivity=7)
    # r = 2 超出 7-连通能支撑的 r = 1
    assert vanishing_rule(point, eight_sphere, 2) is None
    assert vanishing_rule(SigmaComponentDescriptor("F", 4, 4), eight_sphere, 3) is None


def test_derivation_requires_odd_rotation_numbers():
    Y = FixedComponentDescriptor("Y", 0, (RotationDatum(2, 2),))
    with pytest.raises(EllipticGenusError):
        derive_sigma_component(Y)
    odd = derive_sigma_component(FixedComponentDescriptor("Z", 0, (RotationDatum(3, 2),)))
    assert odd.codim == 4
    assert odd.derived_from is not None


def test_sigma_bookkeeping():
    with pytest.raises(BookkeepingError):
        SigmaComponentDescriptor("F", 4, 3)
    with pytest.raises(BookkeepingError):
        SigmaComponentDescriptor("F", 4, 4, mixed_char_numbers={parse_monomial_key('pF1.pF1'): 1})
