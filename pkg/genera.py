# coding = utf-8
"""
非等变亏格
1. ManifoldDescriptor：维数、Spin、Pontryagin 数
2. 符号差尖点的 Witten 级数 sign(q, ℒM)
3. Â 尖点展开 Φ₀(M) = q^{-dim/8}(Â(M) − Â(M,TM) q + …)
4. 扭曲指标 Â(M,E) / sign(M,E)
5. 极点阶分析
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional

from bundles import BundleExpression, TrivialBundle, bundle_chern_character
from char_classes import (ONE, GradedPolynomial, Monomial, Partition, ahat_series,
                          multiplicative_class, multiplicative_power_class,
                          partitions_of, signature_base_series, to_elementary,
                          witten_characteristic_series, x_over_f_bracket)
from coefficient_rings import QQ_RING
from config import series_denominator
from errors import DescriptorError
from series_core import PuiseuxSeries

logger = logging.getLogger(__name__)

SIGNATURE_CUSP = 'sign'
AHAT_CUSP = 'ahat'
CUSPS = (SIGNATURE_CUSP, AHAT_CUSP)


@dataclass
class ManifoldDescriptor:
    """
    非等变输入：闭流形的有理示性数据

    Args:
        name: 名称
        dim: 维数
        spin: 是否 Spin
        pontryagin_numbers: {Partition: 整数}，缺省的 Pontryagin 数按 0 处理
        signature: 声明的符号差（可选，用来交叉校验）
        cohomology_vanishing_r: 声明 H^{4*}(M;ℚ) = 0（0 < * ≤ r）
        connectivity: 声明 M 是 k-连通的
    """
    name: str
    dim: int
    spin: bool = True
    pontryagin_numbers: Dict[Partition, int] = field(default_factory=dict)
    signature: Optional[int] = None
    cohomology_vanishing_r: Optional[int] = None
    connectivity: Optional[int] = None
    description: Optional[str] = None

    def __post_init__(self):
        if self.dim < 1:
            raise DescriptorError(f"维数必须为正整数，得到 {self.dim}", "$.dimension")
        if self.dim % 4 and self.pontryagin_numbers:
            raise DescriptorError("维数不被 4 整除时不能给出 Pontryagin 数", "$.pontryagin_numbers")
        for partition in self.pontryagin_numbers:
            if partition.weight != self.dim // 4:
                raise DescriptorError(
                    f"分拆 {partition.key} 的权为 {partition.weight}，应为 {self.dim // 4}",
                    f"$.pontryagin_numbers.{partition.key}")
        for label, value in (('cohomology_vanishing_r', self.cohomology_vanishing_r),
                             ('connectivity', self.connectivity)):
            if value is not None and value < 0:
                raise DescriptorError(f"{label} 必须非负", f"$.{label}")

    @property
    def n_roots(self) -> int:
        """形式根个数 dim/2"""
        return self.dim // 2

    @property
    def weight(self) -> int:
        return self.dim // 4

    def number_table(self, family: str = 'p') -> Dict[Monomial, Fraction]:
        """完整的 Pontryagin 数表（以 family 族生成元为键）"""
        if self.dim % 4:
            return {}
        table = {}
        for partition in partitions_of(self.weight):
            table[partition.monomial(family)] = Fraction(self.pontryagin_numbers.get(partition, 0))
        return table

    @property
    def effective_vanishing_r(self) -> Optional[int]:
        """
        上同调消失的层数 r：取声明值与 ⌊k/4⌋（k-连通）中较大者
        """
        candidates = []
        if self.cohomology_vanishing_r is not None:
            candidates.append(self.cohomology_vanishing_r)
        if self.connectivity is not None:
            candidates.append(self.connectivity // 4)
        return max(candidates) if candidates else None

    def disjoint_union(self, other: 'ManifoldDescriptor', name: Optional[str] = None) -> 'ManifoldDescriptor':
        """形式不交并：示性数相加"""
        if other.dim != self.dim:
            raise DescriptorError("不交并要求两者维数相同", "$.dimension", "disjoint_union")
        numbers = dict(self.pontryagin_numbers)
        for partition, value in other.pontryagin_numbers.items():
            numbers[partition] = numbers.get(partition, 0) + value
        signature = None
        if self.signature is not None and other.signature is not None:
            signature = self.signature + other.signature
        return ManifoldDescriptor(name or f"{self.name}+{other.name}", self.dim,
                                  self.spin and other.spin, numbers, signature)


@dataclass
class GenusExpansion:
    """某个尖点处的亏格展开"""
    cusp: str
    series: PuiseuxSeries
    q_trunc: int
    spin: bool = True

    @property
    def precision(self) -> Fraction:
        return self.series.precision

    @property
    def integral(self) -> bool:
        """所有已知系数是否为整数"""
        return all(Fraction(c).denominator == 1 for _, c in self.series.terms())

    def coefficient(self, exponent) -> Fraction:
        return self.series.coefficient(exponent)


@dataclass
class TwistedIndex:
    value: Fraction
    cusp: str
    bundle: str
    expected_integer: bool

    @property
    def integral(self) -> bool:
        return self.value.denominator == 1


@dataclass
class PoleOrder:
    """
    极点阶：vanishes 为 True 表示在 precision 以下全为零，此时 order 为 None
    """
    vanishes: bool
    order: Optional[Fraction]
    precision: Fraction

    def __str__(self):
        if self.vanishes:
            return f"vanishes (to q^{self.precision})"
        return str(self.order)


def _check_q_trunc(q_trunc: int):
    if q_trunc < 1:
        raise ValueError("q_trunc 必须 ≥ 1")


def _finish(series, shift, precision) -> PuiseuxSeries:
    """统一的收尾：平移、截断、换到公共分母"""
    if shift:
        series = series.shift(shift)
    return series.truncate(precision).rescale(series_denominator())


def _pair_genus(M: ManifoldDescriptor, Q, q_trunc: int):
    """⟨∏ Q(x_i), [M]⟩ = a₀^n · ⟨K(Q/a₀)⟩"""
    poly = multiplicative_class(Q, 'p', M.dim, rank=M.n_roots)
    value = poly.pair(M.number_table(), component=M.name, operation='genus_pairing')
    if not isinstance(value, PuiseuxSeries):
        value = PuiseuxSeries.monomial(value, 0, q_trunc)
    return value * Q.leading ** M.n_roots


def witten_series(M: ManifoldDescriptor, q_trunc: int) -> GenusExpansion:
    """
    符号差尖点：sign(q, ℒM) = sign(M) + 2·sign(M,TM)·q + …

    Args:
        M: 流形描述
        q_trunc: 级数模 q^{q_trunc} 已知

    Returns:
        GenusExpansion
    """
    _check_q_trunc(q_trunc)
    if M.dim % 4:
        series = PuiseuxSeries.zero(QQ_RING, series_denominator(), q_trunc)
        return GenusExpansion(SIGNATURE_CUSP, series, q_trunc, M.spin)
    Q = witten_characteristic_series(q_trunc, M.dim // 2)
    series = _pair_genus(M, Q, q_trunc)
    logger.debug("witten_series(%s): %s", M.name, series)
    return GenusExpansion(SIGNATURE_CUSP, _finish(series, 0, q_trunc), q_trunc, M.spin)


def ahat_cusp_series(M: ManifoldDescriptor, q_trunc: int) -> GenusExpansion:
    """
    Â 尖点：Φ₀(M) = q^{-dim/8}·(Â(M) − Â(M,TM)·q + Â(M,Λ²TM+TM)·q² − …)
    """
    _check_q_trunc(q_trunc)
    shift = Fraction(-M.dim, 8)
    precision = q_trunc + shift
    if M.dim % 4:
        series = PuiseuxSeries.zero(QQ_RING, series_denominator(), precision)
        return GenusExpansion(AHAT_CUSP, series, q_trunc, M.spin)
    Q = x_over_f_bracket(q_trunc, M.dim // 2)
    series = _pair_genus(M, Q, q_trunc)
    logger.debug("ahat_cusp_series(%s): %s", M.name, series)
    return GenusExpansion(AHAT_CUSP, _finish(series, shift, precision), q_trunc, M.spin)


def genus_series(M: ManifoldDescriptor, cusp: str, q_trunc: int) -> GenusExpansion:
    if cusp == SIGNATURE_CUSP:
        return witten_series(M, q_trunc)
    if cusp == AHAT_CUSP:
        return ahat_cusp_series(M, q_trunc)
    raise ValueError(f"未知的尖点: {cusp}")


def cusp_base_class(cusp: str, family: str, n_roots: int, top_degree: int) -> GradedPolynomial:
    """
    尖点对应的（有理）乘法类，停留在幂和生成元上
    Â 尖点用 x/(2 sinh(x/2))，符号差尖点用 x·coth(x/2)（含 a₀ = 2 的因子 2^n）
    """
    x_order = max(2, top_degree // 2)
    if cusp == AHAT_CUSP:
        return multiplicative_power_class(ahat_series(x_order), family, top_degree)
    if cusp == SIGNATURE_CUSP:
        base = multiplicative_power_class(signature_base_series(x_order), family, top_degree)
        return base.scale(2 ** n_roots)
    raise ValueError(f"未知的尖点: {cusp}")


def twisted_series(M: ManifoldDescriptor, expr: BundleExpression, cusp: str,
                   q_trunc: int) -> PuiseuxSeries:
    """
    ⟨ch(E⊗ℂ)·(尖点乘法类), [M]⟩，E 带 q 权重时得到 q 级数（不含 q^{-dim/8}）
    """
    _check_q_trunc(q_trunc)
    if M.dim % 4:
        return PuiseuxSeries.zero(QQ_RING, 1, q_trunc)
    ch = bundle_chern_character(expr, M.n_roots, M.dim // 2, q_trunc)
    integrand = ch * cusp_base_class(cusp, 'p', M.n_roots, M.dim)
    value = to_elementary(integrand, {'p': M.n_roots}).pair(
        M.number_table(), component=M.name, operation='twisted_index')
    if isinstance(value, PuiseuxSeries):
        return value.truncate(q_trunc)
    return PuiseuxSeries.monomial(value, 0, q_trunc)


def twisted_index(M: ManifoldDescriptor, expr: BundleExpression = None, cusp: str = AHAT_CUSP,
                  q_power: int = 0) -> TwistedIndex:
    """
    单个扭曲指标：Â(M, E) 或 sign(M, E)

    Args:
        M: 流形描述
        expr: 丛表达式，缺省为平凡线丛
        cusp: 'ahat' 或 'sign'
        q_power: 取 q^{q_power} 的系数（E 带 q 权重时使用）

    Returns:
        TwistedIndex（Spin 流形的 Â 指标和任意符号差指标应为整数）
    """
    expr = expr if expr is not None else TrivialBundle(1)
    series = twisted_series(M, expr, cusp, q_power + 1)
    value = Fraction(series.coefficient(q_power))
    expected = M.spin if cusp == AHAT_CUSP else True
    return TwistedIndex(value, cusp, str(expr), expected)


def signature_from_classes(M: ManifoldDescriptor) -> Fraction:
    """由 L 类算出的符号差（Witten 级数的常数项）"""
    return Fraction(witten_series(M, 1).coefficient(0))


def verify_signature(M: ManifoldDescriptor) -> Optional[str]:
    """声明的符号差与计算值不符时返回错误信息"""
    if M.signature is None:
        return None
    computed = signature_from_classes(M)
    if computed != M.signature:
        return f"{M.name}: 声明的符号差 {M.signature} 与 L 类计算值 {computed} 不符"
    return None


def pole_order(g) -> PoleOrder:
    """
    极点阶 = −(最低非零指数)；全零到截断时返回 vanishes

    Args:
        g: GenusExpansion 或 PuiseuxSeries
    """
    series = g.series if isinstance(g, GenusExpansion) else g
    valuation = series.valuation()
    if valuation is None:
        return PoleOrder(True, None, series.precision)
    return PoleOrder(False, -valuation, series.precision)


if __name__ == '__main__':
    k3 = ManifoldDescriptor("K3_type", 4, True, {Partition((1,)): -48}, signature=-16)
    print("sign(q, LM) =", witten_series(k3, 3).series)
    print("Phi_0(M)    =", ahat_cusp_series(k3, 3).series)
    print("pole order  =", pole_order(ahat_cusp_series(k3, 3)))
