# coding = utf-8
"""
描述文件：严格解析、规范序列化、内置示例
"""

import json
from fractions import Fraction

import pytest

from catalog_io import (catalog_entry, catalog_names, load_descriptor, parse_descriptor, serialize)
from char_classes import Partition, parse_monomial_key
from config import CATALOG_DIR
from equivariant import S1ManifoldDescriptor
from errors import BookkeepingError, DescriptorError
from genera import ManifoldDescriptor

K3_TEXT = """{"name": "K3_type", "dimension": 4, "spin": true,
              "pontryagin_numbers": {"p1": -48}, "signature": -16}"""


def _sphere(**overrides):
    component = {"name": "N", "dimension": 0, "orientation_sign": 1,
                 "rotation_numbers": [{"k": 1, "multiplicity": 2}]}
    component.update(overrides)
    return json.dumps({
        "name": "S4", "dimension": 4, "spin": True, "pontryagin_numbers": {"p1": 0},
        "s1_action": {"lifts_to_spin": True, "fixed_components": [component]},
    })


def test_parse_plain_descriptor():
    desc = parse_descriptor(K3_TEXT)
    assert isinstance(desc, ManifoldDescriptor)
    assert desc.pontryagin_numbers == {Partition((1,)): -48}
    assert desc.signature == -16
    assert parse_descriptor(K3_TEXT.encode('utf-8')).name == 'K3_type'


def test_parse_action_descriptor():
    desc = parse_descriptor(_sphere())
    assert isinstance(desc, S1ManifoldDescriptor)
    assert desc.components[0].rotation[0].multiplicity == 2


def test_unknown_field_reports_path():
    with pytest.raises(DescriptorError) as info:
        parse_descriptor(_sphere(colour="red"))
    assert info.value.path == '$.s1_action.fixed_components[0].colour'


def test_missing_field_reports_path():
    with pytest.raises(DescriptorError) as info:
        parse_descriptor('{"name": "x", "dimension": 4, "spin": true}')
    assert info.value.path == '$.pontryagin_numbers'


@pytest.mark.parametrize('text', [
    K3_TEXT.replace('-48', '-48.0'),
    K3_TEXT.replace('"dimension": 4', '"dimension": true'),
    K3_TEXT.replace('-16', 'NaN'),
    K3_TEXT.replace('"spin": true', '"spin": 1'),
    K3_TEXT.replace('"p1"', '"p0"'),
    '{"name": "a", "name": "b"}',
    '[1, 2]',
    '{"name": ',
])
def test_malformed_input_is_rejected(text):
    with pytest.raises(DescriptorError):
        parse_descriptor(text)


def test_bookkeeping_error_names_component():
    with pytest.raises(BookkeepingError) as info:
        parse_descriptor(_sphere(rotation_numbers=[{"k": 1, "multiplicity": 1}]))
    assert info.value.component == 'N'


def test_zero_rotation_number_is_a_descriptor_error():
    with pytest.raises(DescriptorError) as info:
        parse_descriptor(_sphere(rotation_numbers=[{"k": 0, "multiplicity": 2}]))
    assert info.value.path == '$.s1_action.fixed_components[0].rotation_numbers[0]'


def test_rational_mixed_numbers():
    text = _sphere(dimension=4, rotation_numbers=[],
                   mixed_char_numbers={"pY1": {"num": -1, "den": 2}})
    data = json.loads(text)
    data["s1_action"]["fixed_components"][0]["name"] = "M"
    desc = parse_descriptor(json.dumps(data))
    assert desc.components[0].mixed_char_numbers == {parse_monomial_key('pY1'): Fraction(-1, 2)}
    assert b'"den": 2' in serialize(desc)


def test_missing_file():
    with pytest.raises(DescriptorError):
        load_descriptor(CATALOG_DIR / 'does_not_exist.json')


def test_catalog_files_round_trip_byte_for_byte():
    paths = sorted(CATALOG_DIR.glob('*.json'))
    assert paths
    for path in paths:
        data = path.read_bytes()
        assert serialize(parse_descriptor(data)) == data, path.name


def test_required_entries_present():
    names = catalog_names()
    for required in ('S4_rotation', 'K3_type', 'HP2_type', 'S4xK3_rotation',
                     'trivial_action_K3', 'trivial_action_HP2',
                     'S4_rotation_corrupted', 'HP2_type_corrupted'):
        assert required in names


def test_catalog_entry_lookup():
    assert catalog_entry('K3_type').dim == 4
    with pytest.raises(DescriptorError):
        catalog_entry('no_such_entry')
