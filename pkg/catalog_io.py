# coding = utf-8
"""
描述文件读写与内置示例
1. parse_descriptor：严格校验 JSON（未知字段、浮点数、布尔冒充整数一律拒绝）
2. serialize：规范格式（键排序、两格缩进、结尾换行），parse∘serialize 字节级稳定
3. catalog：读取 catalog/ 目录下的内置示例
"""

import json
import logging
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Union

from char_classes import Monomial, Partition, parse_monomial_key
from config import CATALOG_DIR
from equivariant import FixedComponentDescriptor, RotationDatum, S1ManifoldDescriptor
from errors import BookkeepingError, DescriptorError, RotationDatumError
from genera import ManifoldDescriptor
from involution import SigmaComponentDescriptor

logger = logging.getLogger(__name__)

Descriptor = Union[ManifoldDescriptor, S1ManifoldDescriptor]

# 字段表：(字段名, 是否必需)
MANIFOLD_FIELDS = {
    'name': True, 'dimension': True, 'spin': True, 'pontryagin_numbers': True,
    'signature': False, 'cohomology_vanishing_r': False, 'connectivity': False,
    'description': False, 's1_action': False,
}
ACTION_FIELDS = {'lifts_to_spin': True, 'fixed_components': True, 'sigma_components': False}
COMPONENT_FIELDS = {
    'name': True, 'dimension': True, 'orientation_sign': True,
    'rotation_numbers': True, 'mixed_char_numbers': False,
}
ROTATION_FIELDS = {'k': True, 'multiplicity': True}
SIGMA_FIELDS = {
    'name': True, 'dimension': True, 'codimension': True, 'orientation_sign': True,
    'euler_class_zero': False, 'mixed_char_numbers': False,
}
RATIONAL_FIELDS = {'num': True, 'den': True}

NEGATIVE_CONTROL_SUFFIX = '_corrupted'


# ==================== 底层校验 ====================

def _reject_float(text):
    raise DescriptorError(f"不接受浮点数 {text}，请使用整数或 {{\"num\", \"den\"}}")


def _reject_constant(text):
    raise DescriptorError(f"不接受 {text}")


def _unique_object(pairs):
    obj = {}
    for key, value in pairs:
        if key in obj:
            raise DescriptorError(f"重复的字段 {key!r}")
        obj[key] = value
    return obj


def _object(value, path: str, fields: Dict[str, bool]) -> dict:
    if not isinstance(value, dict):
        raise DescriptorError("应为 JSON 对象", path)
    for key in value:
        if key not in fields:
            raise DescriptorError(f"未知字段 {key!r}", f"{path}.{key}")
    for key, required in fields.items():
        if required and key not in value:
            raise DescriptorError(f"缺少必需字段 {key!r}", f"{path}.{key}")
    return value


def _integer(value, path: str) -> int:
    # bool 是 int 的子类
    if type(value) is not int:
        raise DescriptorError(f"应为整数，得到 {json.dumps(value, ensure_ascii=False)}", path)
    return value


def _optional_integer(obj: dict, key: str, path: str) -> Optional[int]:
    if key not in obj or obj[key] is None:
        return None
    return _integer(obj[key], f"{path}.{key}")


def _boolean(value, path: str) -> bool:
    if not isinstance(value, bool):
        raise DescriptorError("应为 true / false", path)
    return value


def _string(value, path: str) -> str:
    if not isinstance(value, str) or not value:
        raise DescriptorError("应为非空字符串", path)
    return value


def _array(value, path: str) -> list:
    if not isinstance(value, list):
        raise DescriptorError("应为 JSON 数组", path)
    return value


def _rational(value, path: str) -> Fraction:
    """整数或 {"num": a, "den": b}"""
    if isinstance(value, dict):
        obj = _object(value, path, RATIONAL_FIELDS)
        num = _integer(obj['num'], f"{path}.num")
        den = _integer(obj['den'], f"{path}.den")
        if den == 0:
            raise DescriptorError("分母不能为 0", f"{path}.den")
        return Fraction(num, den)
    return Fraction(_integer(value, path))


def _encode_rational(value: Fraction):
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return {'den': value.denominator, 'num': value.numerator}


# ==================== 解析 ====================

def _parse_pontryagin(value, path: str) -> Dict[Partition, int]:
    if not isinstance(value, dict):
        raise DescriptorError("应为 {分拆键: 整数}", path)
    numbers = {}
    for key, number in value.items():
        try:
            partition = Partition.from_key(key)
        except ValueError as e:
            raise DescriptorError(str(e), f"{path}.{key}")
        numbers[partition] = _integer(number, f"{path}.{key}")
    return numbers


def _parse_mixed(value, path: str, euler_degree: Optional[int] = None) -> Dict[Monomial, Fraction]:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise DescriptorError("应为 {单项式键: 整数}", path)
    numbers = {}
    for key, number in value.items():
        try:
            monomial = parse_monomial_key(key, euler_degree)
        except ValueError as e:
            raise DescriptorError(str(e), f"{path}.{key}")
        if monomial in numbers:
            raise DescriptorError(f"单项式 {monomial.key} 出现了两次", f"{path}.{key}")
        numbers[monomial] = _rational(number, f"{path}.{key}")
    return numbers


def _parse_sign(value, path: str) -> int:
    sign = _integer(value, path)
    if sign not in (1, -1):
        raise DescriptorError("orientation_sign 必须为 1 或 -1", path)
    return sign


def _parse_component(value, path: str) -> FixedComponentDescriptor:
    obj = _object(value, path, COMPONENT_FIELDS)
    name = _string(obj['name'], f"{path}.name")
    rotation = []
    for i, entry in enumerate(_array(obj['rotation_numbers'], f"{path}.rotation_numbers")):
        entry_path = f"{path}.rotation_numbers[{i}]"
        entry = _object(entry, entry_path, ROTATION_FIELDS)
        try:
            rotation.append(RotationDatum(_integer(entry['k'], f"{entry_path}.k"),
                                          _integer(entry['multiplicity'], f"{entry_path}.multiplicity")))
        except RotationDatumError as e:
            raise DescriptorError(str(e), entry_path)
    dim = _integer(obj['dimension'], f"{path}.dimension")
    return FixedComponentDescriptor(
        name, dim, tuple(rotation), _parse_sign(obj['orientation_sign'], f"{path}.orientation_sign"),
        _parse_mixed(obj.get('mixed_char_numbers'), f"{path}.mixed_char_numbers"))


def _parse_sigma(value, path: str) -> SigmaComponentDescriptor:
    obj = _object(value, path, SIGMA_FIELDS)
    codim = _integer(obj['codimension'], f"{path}.codimension")
    return SigmaComponentDescriptor(
        _string(obj['name'], f"{path}.name"),
        _integer(obj['dimension'], f"{path}.dimension"),
        codim,
        _parse_sign(obj['orientation_sign'], f"{path}.orientation_sign"),
        _boolean(obj.get('euler_class_zero', False), f"{path}.euler_class_zero"),
        _parse_mixed(obj.get('mixed_char_numbers'), f"{path}.mixed_char_numbers", euler_degree=codim))


def _parse_action(value, underlying: ManifoldDescriptor, path: str) -> S1ManifoldDescriptor:
    obj = _object(value, path, ACTION_FIELDS)
    components = [_parse_component(entry, f"{path}.fixed_components[{i}]")
                  for i, entry in enumerate(_array(obj['fixed_components'], f"{path}.fixed_components"))]
    sigma = None
    if obj.get('sigma_components') is not None:
        sigma = [_parse_sigma(entry, f"{path}.sigma_components[{i}]")
                 for i, entry in enumerate(_array(obj['sigma_components'], f"{path}.sigma_components"))]
    return S1ManifoldDescriptor(underlying, _boolean(obj['lifts_to_spin'], f"{path}.lifts_to_spin"),
                                components, sigma)


def parse_descriptor(data: Union[bytes, str]) -> Descriptor:
    """
    解析并校验描述文件

    Args:
        data: UTF-8 编码的 JSON（bytes 或 str）

    Returns:
        带 s1_action 时为 S1ManifoldDescriptor，否则为 ManifoldDescriptor

    Raises:
        DescriptorError: 格式错误，path 指向出错位置
        BookkeepingError: 维数记账不成立，消息中带分支名称
    """
    if isinstance(data, bytes):
        try:
            data = data.decode('utf-8')
        except UnicodeDecodeError as e:
            raise DescriptorError(f"不是合法的 UTF-8: {e}")
    try:
        raw = json.loads(data, parse_float=_reject_float, parse_constant=_reject_constant,
                         object_pairs_hook=_unique_object)
    except json.JSONDecodeError as e:
        raise DescriptorError(f"JSON 解析失败: {e.msg}（第 {e.lineno} 行第 {e.colno} 列）")

    obj = _object(raw, '$', MANIFOLD_FIELDS)
    description = obj.get('description')
    if description is not None and not isinstance(description, str):
        raise DescriptorError("应为字符串", '$.description')
    underlying = ManifoldDescriptor(
        name=_string(obj['name'], '$.name'),
        dim=_integer(obj['dimension'], '$.dimension'),
        spin=_boolean(obj['spin'], '$.spin'),
        pontryagin_numbers=_parse_pontryagin(obj['pontryagin_numbers'], '$.pontryagin_numbers'),
        signature=_optional_integer(obj, 'signature', '$'),
        cohomology_vanishing_r=_optional_integer(obj, 'cohomology_vanishing_r', '$'),
        connectivity=_optional_integer(obj, 'connectivity', '$'),
        description=description,
    )
    if obj.get('s1_action') is None:
        logger.debug("parse_descriptor: %s（无作用）", underlying.name)
        return underlying
    descriptor = _parse_action(obj['s1_action'], underlying, '$.s1_action')
    logger.debug("parse_descriptor: %s，%d 个不动点分支", underlying.name, len(descriptor.components))
    return descriptor


def load_descriptor(path: Union[str, Path]) -> Descriptor:
    """从文件读取描述"""
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise DescriptorError(f"无法读取 {path}: {e.strerror}", '$', 'load_descriptor')
    return parse_descriptor(data)


# ==================== 序列化 ====================

def _mixed_to_json(numbers: Dict[Monomial, Fraction]) -> dict:
    return {monomial.key: _encode_rational(value) for monomial, value in numbers.items()}


def _manifold_to_json(M: ManifoldDescriptor) -> dict:
    obj = {
        'name': M.name,
        'dimension': M.dim,
        'spin': M.spin,
        'pontryagin_numbers': {p.key: int(v) for p, v in M.pontryagin_numbers.items()},
    }
    for key, value in (('signature', M.signature),
                       ('cohomology_vanishing_r', M.cohomology_vanishing_r),
                       ('connectivity', M.connectivity),
                       ('description', M.description)):
        if value is not None:
            obj[key] = value
    return obj


def _component_to_json(Y: FixedComponentDescriptor) -> dict:
    return {
        'name': Y.name,
        'dimension': Y.dim,
        'orientation_sign': Y.orientation_sign,
        'rotation_numbers': [{'k': r.k, 'multiplicity': r.multiplicity} for r in Y.rotation],
        'mixed_char_numbers': _mixed_to_json(Y.mixed_char_numbers),
    }


def _sigma_to_json(F: SigmaComponentDescriptor) -> dict:
    return {
        'name': F.name,
        'dimension': F.dim,
        'codimension': F.codim,
        'orientation_sign': F.orientation_sign,
        'euler_class_zero': F.euler_class_zero,
        'mixed_char_numbers': _mixed_to_json(F.mixed_char_numbers),
    }


def descriptor_to_json(desc: Descriptor) -> dict:
    """描述 → 可 json.dumps 的对象"""
    if isinstance(desc, ManifoldDescriptor):
        return _manifold_to_json(desc)
    obj = _manifold_to_json(desc.underlying)
    action = {
        'lifts_to_spin': desc.lifts_to_spin,
        'fixed_components': [_component_to_json(Y) for Y in desc.components],
    }
    if desc.sigma_components is not None:
        action['sigma_components'] = [_sigma_to_json(F) for F in desc.sigma_components]
    obj['s1_action'] = action
    return obj


def serialize(desc: Descriptor) -> bytes:
    """
    规范格式：键排序、两格缩进、非 ASCII 原样输出、结尾换行
    """
    text = json.dumps(descriptor_to_json(desc), indent=2, sort_keys=True, ensure_ascii=False)
    return (text + "\n").encode('utf-8')


# ==================== 内置示例 ====================

def is_negative_control(name: str) -> bool:
    """故意损坏的反例条目，刚性检验应当失败"""
    return name.endswith(NEGATIVE_CONTROL_SUFFIX)


def catalog(directory: Optional[Union[str, Path]] = None) -> Dict[str, Descriptor]:
    """
    读取内置示例，按名称排序

    Args:
        directory: 示例目录，缺省为 config.CATALOG_DIR

    Returns:
        {名称: 描述}
    """
    directory = Path(directory) if directory is not None else CATALOG_DIR
    entries = {}
    for path in sorted(directory.glob('*.json')):
        try:
            desc = load_descriptor(path)
        except (DescriptorError, BookkeepingError) as e:
            raise DescriptorError(f"{path.name}: {e}", '$', 'catalog')
        if desc.name in entries:
            raise DescriptorError(f"名称 {desc.name} 重复", '$.name', 'catalog')
        entries[desc.name] = desc
    logger.debug("catalog: %d 个条目（%s）", len(entries), directory)
    return dict(sorted(entries.items()))


def catalog_names(directory: Optional[Union[str, Path]] = None) -> List[str]:
    return list(catalog(directory))


def catalog_entry(name: str, directory: Optional[Union[str, Path]] = None) -> Descriptor:
    """按名称取内置示例，不存在时抛 DescriptorError"""
    entries = catalog(directory)
    if name not in entries:
        raise DescriptorError(f"内置示例中没有 {name!r}，可选: {', '.join(entries)}",
                              '$.name', 'catalog')
    return entries[name]


if __name__ == '__main__':
    for entry_name, entry in catalog().items():
        kind = 'S1' if isinstance(entry, S1ManifoldDescriptor) else '--'
        print(f"{kind} {entry_name:28s} dim {entry.dim}")
