# coding = utf-8
"""
圆周作用的不动点数据
1. 旋转数、不动点分支、S¹ 流形描述
2. 旋转数不变量：α_k / k̃ 规范化、m_o(Y)、σ 不动集余维数上界
3. Lefschetz 局部数据 μ_Y 与求和
4. 刚性检验、在挠点处求值
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from char_classes import (ONE, Monomial, chern_family, exponential_sum, multiplicative_class,
                          theta_quotient, x_over_f_bracket)
from coefficient_rings import (QMU_RING, QQ_RING, cyclotomic_field, mu_power,
                               ratfn_eval_cyclotomic, ratfn_is_constant)
from config import series_denominator
from errors import BookkeepingError, EmptyFixedSetError, RotationDatumError
from genera import ManifoldDescriptor, ahat_cusp_series
from series_core import PuiseuxSeries

logger = logging.getLogger(__name__)


# ==================== 数据模型 ====================

@dataclass(frozen=True)
class RotationDatum:
    """旋转数 k 与法丛分量 ν_k 的复维数 d_k"""
    k: int
    multiplicity: int

    def __post_init__(self):
        if self.k == 0:
            raise RotationDatumError("旋转数不能为 0", "RotationDatum")
        if self.multiplicity < 1:
            raise RotationDatumError(f"旋转数 {self.k} 的重数必须为正", "RotationDatum")


@dataclass
class FixedComponentDescriptor:
    """
    S¹ 不动点集的一个连通分支 Y

    Args:
        name: 名称
        dim: dim Y
        rotation: 旋转数据（每个 k 至多出现一次）
        orientation_sign: Y 的定向相对于"与 M 的定向和 ν 的复结构相容"的定向的符号
        mixed_char_numbers: {单项式: 数}，生成元为 Y 的 Pontryagin 类 pY_j 与 c_j(ν_k)
    """
    name: str
    dim: int
    rotation: Tuple[RotationDatum, ...] = ()
    orientation_sign: int = 1
    mixed_char_numbers: Dict[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        self.rotation = tuple(sorted(self.rotation, key=lambda r: (abs(r.k), r.k)))
        if self.dim < 0:
            raise BookkeepingError(self.name, "维数不能为负")
        if self.orientation_sign not in (1, -1):
            raise BookkeepingError(self.name, "orientation_sign 必须为 ±1")
        ks = [r.k for r in self.rotation]
        if len(set(ks)) != len(ks):
            raise BookkeepingError(self.name, f"旋转数重复: {ks}")
        families = {chern_family(k) for k in ks}
        for monomial in self.mixed_char_numbers:
            if monomial.degree != self.dim:
                raise BookkeepingError(
                    self.name, f"示性数 {monomial.key} 的次数 {monomial.degree} ≠ dim Y = {self.dim}")
            for gen, _ in monomial.factors:
                if gen.family.startswith('c(') and gen.family not in families:
                    raise BookkeepingError(self.name, f"{monomial.key} 引用了不存在的法丛分量")
                if gen.family not in ('pY',) and not gen.family.startswith('c('):
                    raise BookkeepingError(self.name, f"{monomial.key} 只能含 pY_j 与 c_j(nu_k)")

    @property
    def normal_rank(self) -> int:
        """法丛复维数 Σ d_k"""
        return sum(r.multiplicity for r in self.rotation)

    @property
    def codim(self) -> int:
        return 2 * self.normal_rank

    def number_table(self) -> Dict[Monomial, Fraction]:
        if self.dim == 0:
            return {ONE: Fraction(1)}
        return {m: Fraction(v) for m, v in self.mixed_char_numbers.items()}

    def check_bookkeeping(self, ambient_dim: int):
        """Σ 2·d_k + dim Y = dim M"""
        if self.codim + self.dim != ambient_dim:
            raise BookkeepingError(
                self.name, f"Σ 2·d_k + dim Y = {self.codim + self.dim} ≠ dim M = {ambient_dim}")


@dataclass
class S1ManifoldDescriptor:
    """带圆周作用的流形：非等变数据 + 不动点分支（+ 可选的 σ 不动点数据）"""
    underlying: ManifoldDescriptor
    lifts_to_spin: bool = True
    components: List[FixedComponentDescriptor] = field(default_factory=list)
    sigma_components: Optional[list] = None

    def __post_init__(self):
        for component in self.components:
            component.check_bookkeeping(self.underlying.dim)
        names = [c.name for c in self.components]
        if len(set(names)) != len(names):
            raise BookkeepingError(names[0], "不动点分支名称重复")
        for sigma in self.sigma_components or []:
            sigma.check_bookkeeping(self.underlying.dim)

    @property
    def name(self) -> str:
        return self.underlying.name

    @property
    def dim(self) -> int:
        return self.underlying.dim

    @property
    def rigidity_asserted(self) -> bool:
        return self.lifts_to_spin and self.underlying.spin

    @property
    def has_nontrivial_action(self) -> bool:
        """不动点集不是整个流形"""
        if not self.components:
            return True
        return any(c.rotation for c in self.components)


# ==================== 旋转数不变量 ====================

def normalize_rotation(k: int, o: int) -> Tuple[int, int]:
    """
    选 α_k ∈ {±1} 使 α_k·k ≡ k̃ (mod o)，0 ≤ k̃ ≤ ⌊o/2⌋；两种符号都可行时取 +1

    Returns:
        (α_k, k̃)
    """
    if o < 2:
        raise RotationDatumError(f"阶 o = {o} 必须 ≥ 2", "normalize_rotation")
    if k == 0:
        raise RotationDatumError("旋转数不能为 0", "normalize_rotation")
    residue = k % o
    if residue <= o // 2:
        return 1, residue
    return -1, o - residue


def m_number(Y: FixedComponentDescriptor, o: int) -> Fraction:
    """m_o(Y) = (Σ_k d_k·k̃)/o"""
    total = sum(r.multiplicity * normalize_rotation(r.k, o)[1] for r in Y.rotation)
    return Fraction(total, o)


def m_number_global(M: S1ManifoldDescriptor, o: int) -> Fraction:
    """m_o = min_Y m_o(Y)"""
    if not M.components:
        raise EmptyFixedSetError(f"{M.name} 没有不动点分支", "m_number_global")
    return min(m_number(Y, o) for Y in M.components)


def sigma_codim_at(Y: FixedComponentDescriptor, o: int) -> int:
    """过 Y 的 M^σ 分支的余维数：2·Σ_{k̃≠0} d_k"""
    return 2 * sum(r.multiplicity for r in Y.rotation if normalize_rotation(r.k, o)[1])


def sigma_codim_bound(M: S1ManifoldDescriptor, o: int) -> int:
    """
    codim M^σ 的上界：只看得到与 M^{S¹} 相交的 σ 不动分支
    """
    if not M.components:
        raise EmptyFixedSetError(f"{M.name} 没有不动点分支", "sigma_codim_bound")
    return min(sigma_codim_at(Y, o) for Y in M.components)


def is_isolated_for(M: S1ManifoldDescriptor, o: int) -> bool:
    """σ = e^{2πi/o} 在可见部分只有孤立不动点"""
    return bool(M.components) and all(sigma_codim_at(Y, o) == M.dim for Y in M.components)


def factor_pole_bounds(Y: FixedComponentDescriptor, o: int) -> List[Tuple[int, Fraction]]:
    """每个法向根的极点阶上界 1/4 − k̃/o（β = 0）"""
    return [(r.k, Fraction(1, 4) - Fraction(normalize_rotation(r.k, o)[1], o))
            for r in Y.rotation]


# ==================== 局部数据 ====================

def twisted_theta_inverse(k: int, q_trunc: int, x_order: int):
    """
    q^{1/4}/f(q, y + k·z₀)，作为 y 的级数，系数在 ℚ(μ) 上（e^{k z₀/2} = μ^k）
    """
    twist = mu_power(2 * k)
    theta = theta_quotient(twist, QMU_RING, q_trunc, x_order)
    sinh_part = exponential_sum([(mu_power(k), Fraction(1, 2)), (-mu_power(-k), Fraction(-1, 2))],
                                QMU_RING, q_trunc, x_order)
    return theta / sinh_part


def _to_mu(series):
    return series.change_ring(QMU_RING) if isinstance(series, PuiseuxSeries) else series


def local_datum(Y: FixedComponentDescriptor, ambient_dim: int, q_trunc: int) -> PuiseuxSeries:
    """
    μ_Y = ⟨∏_i x_i/f(q,x_i) · ∏_{k,j} 1/f(q, y_{k,j} + k·z₀), [Y]⟩

    Args:
        Y: 不动点分支
        ambient_dim: dim M
        q_trunc: 模 q^{q_trunc − dim M/8} 已知

    Returns:
        PuiseuxSeries，系数为 μ 的有理函数
    """
    Y.check_bookkeeping(ambient_dim)
    top = Y.dim
    n_tangent = Y.dim // 2
    x_order = max(2, 2 * (top // 4)) if top else 0

    prefactor = PuiseuxSeries.one(QMU_RING, 1, q_trunc)
    integrand = None
    if top:
        bracket = x_over_f_bracket(q_trunc, 2 * (top // 4))
        integrand = multiplicative_class(bracket, 'pY', top, rank=n_tangent).map_coefficients(_to_mu)
        prefactor = prefactor * bracket.leading.change_ring(QMU_RING) ** n_tangent

    for datum in Y.rotation:
        g = twisted_theta_inverse(datum.k, q_trunc, max(x_order, top // 2))
        prefactor = prefactor * g.leading ** datum.multiplicity
        if top:
            family = chern_family(datum.k)
            normal = multiplicative_class(g, family, top, rank=datum.multiplicity)
            integrand = integrand * normal

    if integrand is None:
        value = prefactor
    else:
        paired = integrand.pair(Y.number_table(), component=Y.name, operation='local_datum')
        if not isinstance(paired, PuiseuxSeries):
            paired = PuiseuxSeries.monomial(paired, 0, q_trunc, QMU_RING)
        value = paired * prefactor

    shift = Fraction(-ambient_dim, 8)
    value = value.scale(Y.orientation_sign).shift(shift)
    result = value.truncate(q_trunc + shift).rescale(series_denominator())
    logger.debug("local_datum(%s): %d 项", Y.name, len(result.coeffs))
    return result


# ==================== 求和与刚性 ====================

@dataclass
class CoefficientFlag:
    exponent: Fraction
    constant: bool
    value: Optional[Fraction]


@dataclass
class EquivariantExpansion:
    """Φ_{0,S¹}(M)：系数为 μ 有理函数的级数，以及逐系数的常数性标记"""
    series: PuiseuxSeries
    flags: List[CoefficientFlag] = field(default_factory=list)

    def check_constancy(self) -> List[CoefficientFlag]:
        self.flags = []
        for exponent, coeff in self.series.terms():
            constant, value = ratfn_is_constant(coeff)
            self.flags.append(CoefficientFlag(exponent, constant, value))
        return self.flags

    @property
    def is_constant(self) -> bool:
        return all(flag.constant for flag in self.flags)


def lefschetz_sum(M: S1ManifoldDescriptor, q_trunc: int) -> EquivariantExpansion:
    """Σ_Y μ_Y，不动点集为空时为零级数"""
    shift = Fraction(-M.dim, 8)
    total = PuiseuxSeries.zero(QMU_RING, series_denominator(), q_trunc + shift)
    for Y in M.components:
        total = total + local_datum(Y, M.dim, q_trunc)
    expansion = EquivariantExpansion(total)
    expansion.check_constancy()
    return expansion


@dataclass
class RigidityReport:
    """刚性检验结果"""
    name: str
    asserted: bool
    constant: bool
    expected: PuiseuxSeries
    constant_series: Optional[PuiseuxSeries] = None
    matches: bool = False
    first_failure: Optional[Tuple[Fraction, str]] = None
    expansion: Optional[EquivariantExpansion] = None

    @property
    def passed(self) -> bool:
        return self.constant and self.matches


def constant_part(expansion: EquivariantExpansion) -> PuiseuxSeries:
    """把 μ 常数的展开转回有理数系数"""
    return expansion.series.change_ring(QQ_RING, lambda c: ratfn_is_constant(c)[1])


def rigidity_check(M: S1ManifoldDescriptor, q_trunc: int) -> RigidityReport:
    """
    逐系数检查 Lefschetz 和是否为 μ 的常数，并与非等变 Â 尖点展开比较

    Returns:
        RigidityReport；失败时 first_failure 给出第一个非常数系数
    """
    expected = ahat_cusp_series(M.underlying, q_trunc).series
    expansion = lefschetz_sum(M, q_trunc)
    report = RigidityReport(M.name, M.rigidity_asserted, expansion.is_constant, expected,
                            expansion=expansion)
    if not report.constant:
        bad = next(flag for flag in expansion.flags if not flag.constant)
        report.first_failure = (bad.exponent,
                                QMU_RING.render(expansion.series.coefficient(bad.exponent)))
        logger.debug("rigidity_check(%s): q^%s 处非常数", M.name, bad.exponent)
        return report
    report.constant_series = constant_part(expansion)
    report.matches = report.constant_series == expected
    return report


def evaluate_at_torsion(e, o: int, power: int = 1) -> PuiseuxSeries:
    """
    把 λ 代成 ζ_o^{power}（即 μ ↦ ζ_{2o}^{power}），在 ℚ(ζ_{2o}) 中精确求值

    Args:
        e: EquivariantExpansion 或 ℚ(μ) 上的级数
        o: 元素的阶
        power: 幂次

    Raises:
        PoleAtTorsionPointError: 某个非常数系数的分母在该点为零
    """
    series = e.series if isinstance(e, EquivariantExpansion) else e
    order = 2 * o
    field_ = cyclotomic_field(order)

    def evaluate(coeff):
        constant, value = ratfn_is_constant(coeff)
        if constant:
            return field_.from_fraction(value)
        return ratfn_eval_cyclotomic(coeff, order, power)

    return series.change_ring(field_, evaluate)


if __name__ == '__main__':
    from char_classes import Partition
    sphere = ManifoldDescriptor("S4", 4, True, {Partition((1,)): 0})
    north = FixedComponentDescriptor("N", 0, (RotationDatum(1, 2),), 1)
    south = FixedComponentDescriptor("S", 0, (RotationDatum(1, 2),), -1)
    report = rigidity_check(S1ManifoldDescriptor(sphere, True, [north, south]), 3)
    print("rigid:", report.passed, report.constant_series)
