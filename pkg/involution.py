# coding = utf-8
"""
对合 σ（S¹ 中 2 阶元）的 Lefschetz 不动点公式
1. σ 不动分支 F：切向 pF、法向 pN、Euler 类 e(ν_F)
2. 局部数据 a_{F,E}（扭曲符号差）与 Witten 丛的 q 级数
3. 自交 F∘F 的椭圆亏格读法
4. 两条消失规则：Euler 类为零；H^{codim F}(M;ℚ) = 0
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from bundles import BundleExpression, RootFamily, WittenBundle, bundle_chern_character
from char_classes import (ONE, GradedPolynomial, Monomial, chern_family, elementary_generator,
                          euler_generator, multiplicative_power_class, power_sum_generator,
                          signature_base_series, to_elementary, witten_characteristic_series)
from coefficient_rings import QQ_RING
from config import series_denominator
from equivariant import FixedComponentDescriptor, S1ManifoldDescriptor
from errors import BookkeepingError, EllipticGenusError
from genera import SIGNATURE_CUSP, ManifoldDescriptor, cusp_base_class, witten_series
from series_core import PuiseuxSeries

logger = logging.getLogger(__name__)

EULER_CLASS_ZERO = 'euler-class-zero'
COHOMOLOGY_VANISHING = 'cohomology-vanishing'


@dataclass
class SigmaComponentDescriptor:
    """
    σ 不动点集的一个连通分支 F

    Args:
        name: 名称
        dim: dim F
        codim: 法丛 ν_F 的秩
        orientation_sign: F 与 ν_F 相容定向相对于参考定向的符号
        euler_class_zero: 声明 e(ν_F) 为零（或挠元）
        mixed_char_numbers: {单项式: 数}，生成元 pF_j、pN_j、e
        derived_from: 由 S¹ 不动分支推出时记录来源分支
    """
    name: str
    dim: int
    codim: int
    orientation_sign: int = 1
    euler_class_zero: bool = False
    mixed_char_numbers: Dict[Monomial, Fraction] = field(default_factory=dict)
    derived_from: Optional[FixedComponentDescriptor] = None

    def __post_init__(self):
        if self.dim < 0 or self.codim < 0 or self.codim % 2:
            raise BookkeepingError(self.name, f"维数 {self.dim} / 余维数 {self.codim} 不合法")
        if self.orientation_sign not in (1, -1):
            raise BookkeepingError(self.name, "orientation_sign 必须为 ±1")
        if self.euler_class_zero and self.codim == 0:
            raise BookkeepingError(self.name, "余维数为 0 时 Euler 类不可能为零")
        for monomial, value in self.mixed_char_numbers.items():
            if monomial.degree != self.dim:
                raise BookkeepingError(
                    self.name, f"示性数 {monomial.key} 的次数 {monomial.degree} ≠ dim F = {self.dim}")
            families = {gen.family for gen, _ in monomial.factors}
            if not families <= {'pF', 'pN', 'e'}:
                raise BookkeepingError(self.name, f"{monomial.key} 只能含 pF_j、pN_j 与 e")
            if self.euler_class_zero and 'e' in families and value:
                raise BookkeepingError(self.name, f"Euler 类为零，但 {monomial.key} = {value}")

    @property
    def n_tangent(self) -> int:
        return self.dim // 2

    @property
    def n_normal(self) -> int:
        return self.codim // 2

    def check_bookkeeping(self, ambient_dim: int):
        if self.dim + self.codim != ambient_dim:
            raise BookkeepingError(
                self.name, f"dim F + codim F = {self.dim + self.codim} ≠ dim M = {ambient_dim}")

    def number_table(self) -> Dict[Monomial, Fraction]:
        if self.dim == 0:
            return {ONE: Fraction(1)}
        return {m: Fraction(v) for m, v in self.mixed_char_numbers.items()}

    def pair(self, poly: GradedPolynomial, operation: str = 'sigma_local_datum'):
        """
        与 [F] 配对；poly 用 pF / pN 的幂和以及 e 表示。
        推导出的分支把 pF、pN、e 换成来源分支 Y 上的 pY 与 c_j(ν_k) 再配对。
        """
        if self.derived_from is None:
            ranks = {'pF': self.n_tangent, 'pN': self.n_normal}
            return to_elementary(poly, ranks).pair(
                self.number_table(), component=self.name, operation=operation)
        Y = self.derived_from
        top = poly.top_degree
        mapping = {}
        for gen in poly.generators():
            if gen.family == 'pF':
                mapping[gen] = GradedPolynomial.generator(power_sum_generator('pY', gen.index), top)
            elif gen.family == 'pN':
                image = GradedPolynomial({}, top)
                for datum in Y.rotation:
                    image = image + GradedPolynomial.generator(
                        power_sum_generator(chern_family(datum.k), 2 * gen.index), top)
                mapping[gen] = image
            elif gen.family == 'e':
                image = GradedPolynomial.constant(1, top)
                for datum in Y.rotation:
                    top_chern = elementary_generator(chern_family(datum.k), datum.multiplicity)
                    image = image * GradedPolynomial.generator(top_chern, top)
                mapping[gen] = image
        ranks = {'pY': Y.dim // 2}
        ranks.update({chern_family(r.k): r.multiplicity for r in Y.rotation})
        return to_elementary(poly.substitute(mapping), ranks).pair(
            Y.number_table(), component=self.name, operation=operation)


def derive_sigma_component(Y: FixedComponentDescriptor) -> SigmaComponentDescriptor:
    """
    Y 上的旋转数全为奇数时，σ = −1 恰好作用在整个 ν 上，过 Y 的 σ 不动分支就是 Y
    """
    if any(r.k % 2 == 0 for r in Y.rotation):
        raise EllipticGenusError(
            f"分支 {Y.name} 含偶旋转数，σ 不动分支不能只由 S¹ 数据确定", "derive_sigma_components")
    return SigmaComponentDescriptor(Y.name, Y.dim, Y.codim, Y.orientation_sign,
                                    derived_from=Y)


def sigma_components(M: S1ManifoldDescriptor) -> List[SigmaComponentDescriptor]:
    """提供了 σ 数据时直接使用，否则从 S¹ 不动点数据推出"""
    if M.sigma_components is not None:
        return list(M.sigma_components)
    if not M.components:
        raise EllipticGenusError(f"{M.name} 既没有 σ 数据也没有 S¹ 不动点数据",
                                 "derive_sigma_components")
    return [derive_sigma_component(Y) for Y in M.components]


def has_sigma_data(M: S1ManifoldDescriptor) -> bool:
    try:
        sigma_components(M)
    except EllipticGenusError:
        return False
    return True


def _zero(q_trunc: int) -> PuiseuxSeries:
    return PuiseuxSeries.zero(QQ_RING, series_denominator(), q_trunc)


def _as_series(value, q_trunc: int) -> PuiseuxSeries:
    if not isinstance(value, PuiseuxSeries):
        value = PuiseuxSeries.monomial(value, 0, q_trunc)
    return value.truncate(q_trunc).rescale(series_denominator())


def _euler_factor(F: SigmaComponentDescriptor, top: int):
    if F.codim == 0:
        return GradedPolynomial.constant(1, top)
    return GradedPolynomial.generator(euler_generator(F.codim), top)


def sigma_local_series(F: SigmaComponentDescriptor, E: BundleExpression, q_trunc: int) -> PuiseuxSeries:
    """
    a_{F,E} = ⟨∏ x_i(1+e^{−x_i})/(1−e^{−x_i}) · ∏ (y_j(1+e^{−y_j})/(1−e^{−y_j}))^{−1}
              · ch(E|F)(σ) · e(ν_F), [F]⟩
    σ 在法向根上的特征值为 −1；E 带 q 权重时逐层得到 q 级数
    """
    if F.euler_class_zero:
        return _zero(q_trunc)
    top = F.dim
    families = [RootFamily('pF', F.n_tangent, 1), RootFamily('pN', F.n_normal, -1)]
    ch = bundle_chern_character(E, F.n_tangent, top // 2, q_trunc, families)
    tangent = cusp_base_class(SIGNATURE_CUSP, 'pF', F.n_tangent, top)
    normal_series = signature_base_series(max(2, top // 2)).invert()
    normal = multiplicative_power_class(normal_series, 'pN', top).scale(
        normal_series.leading ** F.n_normal)
    integrand = ch * tangent * normal * _euler_factor(F, top)
    value = F.pair(integrand) * F.orientation_sign
    return _as_series(value, q_trunc)


def sigma_local_datum(F: SigmaComponentDescriptor, E: BundleExpression, layer: int = 0) -> Fraction:
    """a_{F,E} 在 q^{layer} 层的值"""
    return Fraction(sigma_local_series(F, E, layer + 1).coefficient(layer))


def self_intersection_series(F: SigmaComponentDescriptor, q_trunc: int) -> PuiseuxSeries:
    """
    sign(q, ℒ(F∘F))：⟨∏ Q(x_i) · ∏ Q(y_j)^{−1} · e(ν_F), [F]⟩，Q 为 Witten 特征级数
    F 为孤立点（dim M > 0）或 codim F > dim F 时配对为零
    """
    if F.euler_class_zero:
        return _zero(q_trunc)
    top = F.dim
    x_order = max(2, 2 * (top // 4))
    Q = witten_characteristic_series(q_trunc, x_order)
    tangent = multiplicative_power_class(Q, 'pF', top).scale(Q.leading ** F.n_tangent)
    Q_inv = Q.invert()
    normal = multiplicative_power_class(Q_inv, 'pN', top).scale(Q_inv.leading ** F.n_normal)
    integrand = tangent * normal * _euler_factor(F, top)
    value = F.pair(integrand, operation='self_intersection_series') * F.orientation_sign
    return _as_series(value, q_trunc)


def supported_vanishing_r(M: ManifoldDescriptor, r: Optional[int] = None) -> Optional[int]:
    """
    描述能支撑的 r：未给 r 时取声明值；给出的 r 超过声明值时不被支撑，返回 None
    """
    declared = M.effective_vanishing_r
    if r is None:
        return declared
    if declared is None or r > declared:
        return None
    return r


def vanishing_rule(F: SigmaComponentDescriptor, M: ManifoldDescriptor,
                   r: Optional[int] = None) -> Optional[str]:
    """
    消失规则：e(ν_F) = 0 ⇒ a_F = 0；H^{codim F}(M;ℚ) = 0 ⇒ a_F = 0

    Args:
        r: 采用的上同调消失层数，不能超过 M 的声明值
    """
    if F.euler_class_zero:
        return EULER_CLASS_ZERO
    r = supported_vanishing_r(M, r)
    if r and F.codim % 4 == 0 and 0 < F.codim <= 4 * r:
        return COHOMOLOGY_VANISHING
    return None


@dataclass
class SigmaContribution:
    component: SigmaComponentDescriptor
    series: PuiseuxSeries
    self_intersection: PuiseuxSeries
    rule: Optional[str] = None

    @property
    def rule_holds(self) -> bool:
        """规则触发时计算值必须为零"""
        return self.rule is None or self.series.is_zero()

    @property
    def paths_agree(self) -> bool:
        return self.series == self.self_intersection


def sigma_contributions(M: S1ManifoldDescriptor, q_trunc: int) -> List[SigmaContribution]:
    """逐个 σ 不动分支的 Witten 丛局部数据"""
    bundle = WittenBundle()
    result = []
    for F in sigma_components(M):
        series = sigma_local_series(F, bundle, q_trunc)
        result.append(SigmaContribution(F, series, self_intersection_series(F, q_trunc),
                                        vanishing_rule(F, M.underlying)))
        logger.debug("a_F(%s) = %s", F.name, series)
    return result


def sigma_series_sum(M: S1ManifoldDescriptor, q_trunc: int) -> PuiseuxSeries:
    """Σ_F a_F；数据自洽时等于 witten_series(M)"""
    total = _zero(q_trunc)
    for contribution in sigma_contributions(M, q_trunc):
        total = total + contribution.series
    return total


@dataclass
class InvolutionIdentityReport:
    name: str
    local_sum: PuiseuxSeries
    self_intersection_sum: PuiseuxSeries
    expected: PuiseuxSeries
    contributions: List[SigmaContribution]

    @property
    def holds(self) -> bool:
        return (self.local_sum == self.expected
                and self.self_intersection_sum == self.expected
                and all(c.rule_holds for c in self.contributions))


def involution_identity(M: S1ManifoldDescriptor, q_trunc: int) -> InvolutionIdentityReport:
    """sign(q, ℒM) = Σ_F a_F = Σ_F sign(q, ℒ(F∘F))"""
    contributions = sigma_contributions(M, q_trunc)
    local_sum = _zero(q_trunc)
    si_sum = _zero(q_trunc)
    for c in contributions:
        local_sum = local_sum + c.series
        si_sum = si_sum + c.self_intersection
    expected = witten_series(M.underlying, q_trunc).series
    return InvolutionIdentityReport(M.name, local_sum, si_sum, expected, contributions)
