# coding = utf-8
"""
消失定理判定引擎
把描述数据中的假设（Spin、提升、余维数、m_o、上同调消失）与计算出的极点阶对照：
1. 对合余维数规则：codim M^σ > 4r ⇒ Φ₀ 的极点阶 < dim/8 − r
2. 循环群规则：m_o > r ⇒ 同上；codim M^σ > 2·o·r 的余维数路线
3. 上同调规则：H^{4*}(M;ℚ) = 0（0 < * ≤ r）且作用非平凡 ⇒ 同上
4. 推论：o = 3、4 与孤立不动点的特殊情形
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from equivariant import (S1ManifoldDescriptor, factor_pole_bounds, is_isolated_for, m_number,
                         m_number_global, normalize_rotation, sigma_codim_at, sigma_codim_bound)
from errors import PrecisionError
from genera import (GenusExpansion, ManifoldDescriptor, PoleOrder, ahat_cusp_series, pole_order,
                    signature_from_classes, witten_series)
from involution import has_sigma_data, sigma_contributions, supported_vanishing_r, vanishing_rule

logger = logging.getLogger(__name__)

RULE_INVOLUTION = 'involution-codimension'
RULE_CYCLIC = 'cyclic-rotation-number'
RULE_CYCLIC_CODIM = 'cyclic-codimension'
RULE_COHOMOLOGY = 'cohomology-vanishing'

QUOTES = {
    RULE_INVOLUTION: "If codim M^σ > 4r then the Â-cusp expansion has a pole of order less than dim M/8 − r",
    RULE_CYCLIC: "If m_o > r then the Â-cusp expansion has a pole of order less than dim M/8 − r",
    RULE_CYCLIC_CODIM: "If codim M^σ > 2·o·r then the Â-cusp expansion has a pole of order less than dim M/8 − r",
    RULE_COHOMOLOGY: ("If H^{4*}(M;Q) = 0 for 0 < * ≤ r and M admits a non-trivial S¹-action then "
                      "the Â-cusp expansion has a pole of order less than dim M/8 − r"),
}


@dataclass
class Hypothesis:
    name: str
    passed: bool
    detail: str = ''


@dataclass
class ComponentDetail:
    """单个不动点分支的旋转数明细"""
    name: str
    m_o: Fraction
    codim: int
    k_tilde: List[Tuple[int, int, int]]
    factor_bounds: List[Tuple[int, Fraction]]


@dataclass
class SubVerdict:
    """推论形式的子判定：假设成立时结论必须在计算结果上成立"""
    tag: str
    claim: str
    applies: bool
    holds: Optional[bool] = None
    detail: str = ''


@dataclass
class VerdictReport:
    rule: str
    quote: str
    hypotheses: List[Hypothesis]
    predicted_bound: Optional[Fraction]
    computed: PoleOrder
    r: int = 0
    order: Optional[int] = None
    components: List[ComponentDetail] = field(default_factory=list)
    sub_verdicts: List[SubVerdict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def fired(self) -> bool:
        return all(h.passed for h in self.hypotheses)

    @property
    def consistent(self) -> Optional[bool]:
        """极点阶 < 预测上界；未触发时为 None"""
        if not self.fired:
            return None
        if self.computed.vanishes:
            return True
        return self.computed.order < self.predicted_bound

    @property
    def resolved(self) -> bool:
        """截断是否覆盖到 q^{−bound}，即结论能被完整检验"""
        if self.predicted_bound is None:
            return False
        return self.computed.precision > -self.predicted_bound

    @property
    def inconsistent(self) -> bool:
        if self.consistent is False:
            return True
        return any(s.applies and s.holds is False for s in self.sub_verdicts)


def _expansion_pole(M: ManifoldDescriptor, q_trunc: int,
                    expansion: Union[GenusExpansion, None]) -> PoleOrder:
    return pole_order(expansion if expansion is not None else ahat_cusp_series(M, q_trunc))


def _spin_hypotheses(M: S1ManifoldDescriptor) -> List[Hypothesis]:
    return [
        Hypothesis('spin', M.underlying.spin, 'M is Spin'),
        Hypothesis('lifts_to_spin', M.lifts_to_spin, 'the action lifts to the Spin structure'),
    ]


def component_details(M: S1ManifoldDescriptor, o: int) -> List[ComponentDetail]:
    details = []
    for Y in M.components:
        k_tilde = [(r.k, *normalize_rotation(r.k, o)) for r in Y.rotation]
        details.append(ComponentDetail(Y.name, m_number(Y, o), sigma_codim_at(Y, o),
                                       k_tilde, factor_pole_bounds(Y, o)))
    return details


def _sigma_codimension(M: S1ManifoldDescriptor) -> Tuple[Optional[int], str]:
    """codim M^σ：优先用提供的 σ 数据，否则用 S¹ 数据给出的上界 4·m₂"""
    if M.sigma_components:
        return min(F.codim for F in M.sigma_components), 'supplied σ-fixed data'
    if M.components:
        return sigma_codim_bound(M, 2), ('bound from components meeting M^{S¹} '
                                         '(equals 4·m₂(Y) at every Y)')
    return None, 'no fixed-point data'


def _coefficient_zero(series, exponent) -> Optional[bool]:
    try:
        return not series.coefficient(exponent)
    except PrecisionError:
        return None


def _codimension_sub_verdicts(M: S1ManifoldDescriptor, codim: int, q_trunc: int) -> List[SubVerdict]:
    dim = M.dim
    witten = witten_series(M.underlying, q_trunc).series
    vanish = SubVerdict('codim-above-half', 'sign(q, LM) vanishes identically', 2 * codim > dim)
    if vanish.applies:
        vanish.holds = witten.is_zero()
    constant = SubVerdict('codim-half', 'sign(q, LM) equals sign(M)', 2 * codim == dim)
    if constant.applies:
        signature = signature_from_classes(M.underlying)
        constant.holds = witten.is_zero() if signature == 0 else \
            witten.terms() == [(Fraction(0), signature)]
        constant.detail = f"sign(M) = {signature}"
    return [vanish, constant]


def verdict_involution(M: S1ManifoldDescriptor, r: int, q_trunc: int,
                       expansion: Optional[GenusExpansion] = None) -> VerdictReport:
    """
    σ ∈ S¹ 为 2 阶元：codim M^σ > 4r ⇒ 极点阶 < dim/8 − r

    Args:
        M: S¹ 流形描述
        r: 非负整数
        q_trunc: 计算 Φ₀ 用的 q 阶
        expansion: 可直接给出 Φ₀ 展开（测试用）

    Returns:
        VerdictReport
    """
    hypotheses = _spin_hypotheses(M)
    codim, source = _sigma_codimension(M)
    if codim is None:
        hypotheses.append(Hypothesis('codim_available', False, source))
    else:
        hypotheses.append(Hypothesis('codim', codim > 4 * r,
                                     f"codim M^σ = {codim} > 4r = {4 * r} ({source})"))
    bound = Fraction(M.dim, 8) - r
    report = VerdictReport(RULE_INVOLUTION, QUOTES[RULE_INVOLUTION], hypotheses, bound,
                           _expansion_pole(M.underlying, q_trunc, expansion), r=r, order=2)
    if M.components:
        report.components = component_details(M, 2)
    if codim is not None and report.fired:
        report.sub_verdicts = _codimension_sub_verdicts(M, codim, q_trunc)
    if not report.fired:
        report.predicted_bound = None
    logger.debug("verdict_involution(%s, r=%d): fired=%s", M.name, r, report.fired)
    return report


def _corollary_sub_verdicts(M: S1ManifoldDescriptor, o: int, codim: int,
                            q_trunc: int, expansion: Optional[GenusExpansion]) -> List[SubVerdict]:
    dim = M.dim
    phi = (expansion or ahat_cusp_series(M.underlying, q_trunc)).series
    lead = Fraction(-dim, 8)
    isolated = is_isolated_for(M, o)

    def ahat_zero():
        return _coefficient_zero(phi, lead)

    def ahat_and_tm_zero():
        first, second = _coefficient_zero(phi, lead), _coefficient_zero(phi, lead + 1)
        if first is None or second is None:
            return None
        return first and second

    subs = []
    if o in (3, 4):
        subs.append(SubVerdict(f'order-{o}-positive-codim', 'Â(M) = 0', codim > 0))
        if subs[-1].applies:
            subs[-1].holds = ahat_zero()
        limit = 2 * o
        subs.append(SubVerdict(f'order-{o}-codim-above-{limit}', 'Â(M) = Â(M,TM) = 0', codim > limit))
        if subs[-1].applies:
            subs[-1].holds = ahat_and_tm_zero()
    if o == 3:
        sub = SubVerdict('order-3-isolated', 'Φ(M) vanishes identically', isolated)
        if isolated:
            sub.holds = phi.is_zero() and witten_series(M.underlying, q_trunc).series.is_zero()
        subs.append(sub)
    if o == 4:
        sub = SubVerdict('order-4-isolated', 'Φ(M) equals the signature', isolated)
        if isolated:
            signature = signature_from_classes(M.underlying)
            witten = witten_series(M.underlying, q_trunc).series
            sub.holds = witten.is_zero() if signature == 0 else \
                witten.terms() == [(Fraction(0), signature)]
            sub.detail = f"sign(M) = {signature}"
        subs.append(sub)
    small = SubVerdict('small-order-isolated', 'Â(M) = Â(M,TM) = 0', isolated and 2 * o < dim)
    if small.applies:
        small.holds = ahat_and_tm_zero()
    subs.append(small)
    return subs


def verdict_cyclic(M: S1ManifoldDescriptor, o: int, r: int, q_trunc: int,
                   expansion: Optional[GenusExpansion] = None) -> VerdictReport:
    """
    σ ∈ S¹ 为 o 阶元：m_o > r ⇒ 极点阶 < dim/8 − r；另报告余维数路线与推论
    """
    if o < 2:
        raise ValueError("阶 o 必须 ≥ 2")
    hypotheses = _spin_hypotheses(M)
    bound = Fraction(M.dim, 8) - r
    report = VerdictReport(RULE_CYCLIC, QUOTES[RULE_CYCLIC], hypotheses, bound,
                           _expansion_pole(M.underlying, q_trunc, expansion), r=r, order=o)
    if not M.components:
        hypotheses.append(Hypothesis('fixed_points', False, 'M^{S¹} is empty or unknown'))
        report.predicted_bound = None
        return report

    m_o = m_number_global(M, o)
    codim = sigma_codim_bound(M, o)
    hypotheses.append(Hypothesis('m_o', m_o > r, f"m_{o} = {m_o} > r = {r}"))
    report.components = component_details(M, o)
    codim_route = codim > 2 * o * r
    report.notes.append(
        f"{RULE_CYCLIC_CODIM}: codim M^σ ≤ {codim} (components meeting M^{{S¹}}); "
        f"{'fires' if codim_route else 'does not fire'} for 2·o·r = {2 * o * r}")
    if codim_route and not m_o > r:
        report.notes.append("codimension route fired without m_o > r: inconsistent rotation data")
    if all(h.passed for h in hypotheses[:2]):
        report.sub_verdicts = _corollary_sub_verdicts(M, o, codim, q_trunc, expansion)
    if not report.fired:
        report.predicted_bound = None
    logger.debug("verdict_cyclic(%s, o=%d, r=%d): fired=%s", M.name, o, r, report.fired)
    return report


def verdict_cohomology(M: Union[ManifoldDescriptor, S1ManifoldDescriptor],
                       has_nontrivial_action: Optional[bool] = None, q_trunc: int = 4,
                       expansion: Optional[GenusExpansion] = None,
                       r: Optional[int] = None) -> VerdictReport:
    """
    H^{4*}(M;ℚ) = 0（0 < * ≤ r）且有非平凡 S¹ 作用 ⇒ 极点阶 < dim/8 − r
    k-连通（k ≥ 4r）是特例：r = ⌊k/4⌋

    Args:
        M: 流形描述（或 S¹ 流形描述，此时作用是否非平凡由不动点数据判断）
        has_nontrivial_action: 用户声明
        q_trunc: q 阶
        expansion: 可直接给出 Φ₀ 展开
        r: 采用的 r；超过描述声明值时上同调假设不成立
    """
    s1 = M if isinstance(M, S1ManifoldDescriptor) else None
    base = s1.underlying if s1 else M
    if has_nontrivial_action is None:
        has_nontrivial_action = s1.has_nontrivial_action if s1 else False
    declared_r = base.effective_vanishing_r
    r = declared_r if r is None else r
    supported = supported_vanishing_r(base, r) is not None
    if r is None:
        detail = 'no cohomology-vanishing data'
    elif supported:
        detail = f"H^{{4*}}(M;Q) = 0 for 0 < * ≤ {r}"
    else:
        detail = (f"H^{{4*}}(M;Q) = 0 for 0 < * ≤ {r} not supported by the descriptor "
                  f"(declared r = {declared_r})")
    hypotheses = [
        Hypothesis('spin', base.spin, 'M is Spin'),
        Hypothesis('cohomology', supported, detail),
        Hypothesis('nontrivial_action', bool(has_nontrivial_action), 'M admits a non-trivial S¹-action'),
    ]
    r_value = r or 0
    bound = Fraction(base.dim, 8) - r_value
    report = VerdictReport(RULE_COHOMOLOGY, QUOTES[RULE_COHOMOLOGY], hypotheses, bound,
                           _expansion_pole(base, q_trunc, expansion), r=r_value)
    if base.connectivity is not None:
        report.notes.append(f"{base.connectivity}-connected ⇒ r ≥ {base.connectivity // 4}")
    if r is not None and not supported:
        report.notes.append(f"r = {r} exceeds the declared cohomology vanishing; no prediction")
    if s1 is not None and r and supported and has_sigma_data(s1):
        for contribution in sigma_contributions(s1, q_trunc):
            F = contribution.component
            rule = vanishing_rule(F, base, r)
            if rule is None:
                continue
            report.sub_verdicts.append(SubVerdict(
                f'{rule}:{F.name}', f"a_F vanishes for F = {F.name} (codim {F.codim})",
                True, contribution.series.is_zero()))
    if not report.fired:
        report.predicted_bound = None
    return report


def verdicts_for(M: S1ManifoldDescriptor, o: Optional[int], r: Optional[int], q_trunc: int) -> List[VerdictReport]:
    """CLI 的 auto 规则：o = 2 给出对合与循环两条路线，o > 2 只给循环路线，未给 o 时用上同调规则"""
    if o is None:
        return [verdict_cohomology(M, q_trunc=q_trunc, r=r)]
    r = 0 if r is None else r
    reports = []
    if o == 2:
        reports.append(verdict_involution(M, r, q_trunc))
    reports.append(verdict_cyclic(M, o, r, q_trunc))
    return reports
