# coding = utf-8
"""
椭圆亏格工具 - 命令行入口
子命令：genus / expand / rigidity / local-data / m-number / verdict / catalog / validate
结果写到 stdout，进度与诊断写到 stderr
退出码：0 成功；2 输入或校验错误；3 判定与计算不符（数据有误）
"""

import argparse
import logging
import os
import sys
from typing import List, Optional

# 添加当前目录到路径
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from bundles import parse_bundle
from catalog_io import catalog, catalog_entry, load_descriptor
from config import DEFAULT_FORMAT, DEFAULT_TRUNCATE, setup_logging
from equivariant import (S1ManifoldDescriptor, evaluate_at_torsion, is_isolated_for, lefschetz_sum,
                         local_datum, m_number_global, rigidity_check, sigma_codim_bound)
from errors import BookkeepingError, DescriptorError, EllipticGenusError
from genera import CUSPS, AHAT_CUSP, genus_series, twisted_index, verify_signature
from involution import has_sigma_data, involution_identity
from report_renderer import (catalog_to_dict, expansion_to_dict, genus_to_dict, local_data_to_dict,
                             m_number_to_dict, render, rigidity_to_dict, twisted_index_to_dict,
                             validate_to_dict, verdicts_to_dict)
from theorems import component_details, verdict_cohomology, verdicts_for

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INCONSISTENT = 3


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"需要正整数，得到 {text}")
    return value


def _non_negative_int(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"需要非负整数，得到 {text}")
    return value


def _order(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"阶 o 必须 ≥ 2，得到 {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    source = common.add_mutually_exclusive_group()
    source.add_argument('--input', metavar='FILE', help='描述文件（JSON）')
    source.add_argument('--catalog', metavar='NAME', help='内置示例名称')
    common.add_argument('--truncate', type=_positive_int, default=DEFAULT_TRUNCATE, metavar='N',
                        help=f'q 阶（默认 {DEFAULT_TRUNCATE}）')
    common.add_argument('--format', choices=('text', 'json'), default=DEFAULT_FORMAT)
    common.add_argument('--verbose', action='store_true', help='输出调试日志')

    parser = argparse.ArgumentParser(prog='ellgenus', description='精确算术的椭圆亏格工具')
    sub = parser.add_subparsers(dest='command', required=True)

    genus = sub.add_parser('genus', parents=[common], help='两个尖点处的亏格展开 / 扭曲指标')
    genus.add_argument('--cusp', choices=CUSPS, default=AHAT_CUSP)
    genus.add_argument('--bundle', metavar='EXPR', help='只算一个扭曲指标，如 "TM"、"L2+1"')
    genus.add_argument('--q-power', type=_non_negative_int, default=0, help='带 q 权重的丛取 q^N 的系数')

    expand = sub.add_parser('expand', parents=[common], help='等变展开（Lefschetz 和）')
    expand.add_argument('--order', type=_order, help='在 λ = ζ_o^P 处求值')
    expand.add_argument('--power', type=int, default=1)

    sub.add_parser('rigidity', parents=[common], help='刚性检验')
    sub.add_parser('local-data', parents=[common], help='逐个不动点分支的局部数据')

    m_number = sub.add_parser('m-number', parents=[common], help='旋转数不变量 m_o')
    m_number.add_argument('--order', type=_order, default=2)

    verdict = sub.add_parser('verdict', parents=[common], help='消失定理判定')
    verdict.add_argument('--order', type=_order, help='循环子群的阶；缺省时使用上同调规则')
    verdict.add_argument('--r', type=_non_negative_int, help='极点阶界中的 r')
    verdict.add_argument('--nontrivial-action', action='store_true',
                         help='声明 M 有非平凡 S¹ 作用（描述不带 s1_action 时使用）')

    sub.add_parser('catalog', parents=[common], help='列出内置示例')
    sub.add_parser('validate', parents=[common], help='校验描述文件')
    return parser


def _load(args):
    if args.input:
        return load_descriptor(args.input)
    if args.catalog:
        return catalog_entry(args.catalog)
    raise DescriptorError("需要 --input FILE 或 --catalog NAME 之一", '$', args.command)


def _require_action(desc, command: str) -> S1ManifoldDescriptor:
    if not isinstance(desc, S1ManifoldDescriptor):
        raise DescriptorError(f"{command} 需要带 s1_action 的描述", '$.s1_action', command)
    return desc


def _underlying(desc):
    return desc.underlying if isinstance(desc, S1ManifoldDescriptor) else desc


# ==================== 子命令 ====================

def cmd_genus(args, desc):
    M = _underlying(desc)
    if args.bundle:
        index = twisted_index(M, parse_bundle(args.bundle), args.cusp, args.q_power)
        return render(twisted_index_to_dict(M.name, index, args.q_power), args.format, 'twisted'), EXIT_OK
    warning = verify_signature(M)
    if warning:
        print(f"⚠️  {warning}", file=sys.stderr)
    expansion = genus_series(M, args.cusp, args.truncate)
    return render(genus_to_dict(M.name, expansion, warning), args.format), EXIT_OK


def cmd_expand(args, desc):
    M = _require_action(desc, 'expand')
    expansion = lefschetz_sum(M, args.truncate)
    evaluation = None
    if args.order:
        evaluation = evaluate_at_torsion(expansion, args.order, args.power)
    payload = expansion_to_dict(M.name, expansion, evaluation, args.order, args.power)
    return render(payload, args.format), EXIT_OK


def cmd_rigidity(args, desc):
    M = _require_action(desc, 'rigidity')
    report = rigidity_check(M, args.truncate)
    code = EXIT_OK
    if report.passed:
        print(f"✅ {M.name}: 刚性检验通过", file=sys.stderr)
    elif report.asserted:
        print(f"❌ {M.name}: 刚性检验失败（数据与 Spin 提升的假设不符）", file=sys.stderr)
        code = EXIT_INCONSISTENT
    else:
        print(f"⚠️  {M.name}: 作用不提升到 Spin 结构，刚性不作要求", file=sys.stderr)
    return render(rigidity_to_dict(report), args.format), code


def cmd_local_data(args, desc):
    M = _require_action(desc, 'local-data')
    data = [(Y, local_datum(Y, M.dim, args.truncate)) for Y in M.components]
    return render(local_data_to_dict(M.name, data), args.format), EXIT_OK


def cmd_m_number(args, desc):
    M = _require_action(desc, 'm-number')
    o = args.order
    payload = m_number_to_dict(M.name, o, component_details(M, o), m_number_global(M, o),
                               sigma_codim_bound(M, o), is_isolated_for(M, o))
    return render(payload, args.format), EXIT_OK


def cmd_verdict(args, desc):
    if isinstance(desc, S1ManifoldDescriptor):
        reports = verdicts_for(desc, args.order, args.r, args.truncate)
    elif args.order is not None:
        raise DescriptorError('--order 需要带 s1_action 的描述', '$.s1_action', 'verdict')
    else:
        reports = [verdict_cohomology(desc, args.nontrivial_action, args.truncate, r=args.r)]
    code = EXIT_OK
    for report in reports:
        if report.inconsistent:
            print(f"❌ {report.rule}: 计算出的极点阶与判定不符", file=sys.stderr)
            code = EXIT_INCONSISTENT
        elif report.fired and not report.resolved:
            print(f"⚠️  {report.rule}: 截断太浅，无法完全检验上界", file=sys.stderr)
    return render(verdicts_to_dict(desc.name, reports), args.format), code


def cmd_catalog(args, desc=None):
    return render(catalog_to_dict(catalog()), args.format), EXIT_OK


def cmd_validate(args, desc):
    problems: List[str] = []
    M = _underlying(desc)
    warning = verify_signature(M)
    if warning:
        problems.append(warning)
    if isinstance(desc, S1ManifoldDescriptor) and desc.sigma_components is not None \
            and has_sigma_data(desc):
        identity = involution_identity(desc, args.truncate)
        if not identity.holds:
            problems.append(f"{desc.name}: σ 不动点的局部数据之和与 Witten 级数不符")
    code = EXIT_INVALID if problems else EXIT_OK
    return render(validate_to_dict(M.name, problems), args.format), code


HANDLERS = {
    'genus': cmd_genus,
    'expand': cmd_expand,
    'rigidity': cmd_rigidity,
    'local-data': cmd_local_data,
    'm-number': cmd_m_number,
    'verdict': cmd_verdict,
    'catalog': cmd_catalog,
    'validate': cmd_validate,
}


def run(argv: Optional[List[str]] = None) -> int:
    """
    执行一次命令

    Args:
        argv: 命令行参数（缺省取 sys.argv）

    Returns:
        int: 退出码
    """
    args = build_parser().parse_args(argv)
    setup_logging('DEBUG' if args.verbose else None)
    try:
        desc = None if args.command == 'catalog' else _load(args)
        output, code = HANDLERS[args.command](args, desc)
    except (DescriptorError, BookkeepingError) as e:
        print(f"❌ 描述数据无效: {e}", file=sys.stderr)
        return EXIT_INVALID
    except EllipticGenusError as e:
        print(f"❌ 计算失败: {e}", file=sys.stderr)
        return EXIT_INVALID
    print(output)
    return code


def main() -> int:
    return run()


if __name__ == '__main__':
    sys.exit(main())
