# coding = utf-8
"""
示性类计算
1. 生成元 / 单项式 / 分次多项式：Pontryagin 类 p_j、法丛 Chern 类 c_j(ν_k)、Euler 类 e
2. 特征幂级数 Q(x)：系数是 q 级数（或有理数）
3. 乘法序列：log → 幂和 → Newton 恒等式 → 初等对称函数
4. 具体的特征级数：x/f(q,x)、Witten 级数、Â 级数、L 级数
"""

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Dict, Iterator, List, Optional, Tuple

from coefficient_rings import QQ_RING
from errors import (MissingCharacteristicNumberError, NonTruncatingBundleError,
                    NotInvertibleError, PrecisionError)
from series_core import PuiseuxSeries

logger = logging.getLogger(__name__)

EVEN_FAMILIES = ('p', 'pY', 'pF', 'pN')


# ==================== 生成元与单项式 ====================

def family_unit_degree(family: str) -> int:
    """族中第 1 个生成元的上同调次数：Pontryagin 族 4，Chern 族 2"""
    return 2 if family.startswith('c(') else 4


def chern_family(k: int) -> str:
    return f"c(nu_{k})"


def _family_rank(family: str):
    if family in EVEN_FAMILIES:
        return (EVEN_FAMILIES.index(family), 0)
    if family.startswith('c(nu_'):
        return (4, int(family[5:-1]))
    if family == 'e':
        return (5, 0)
    return (6, 0)


@dataclass(frozen=True)
class Generator:
    """
    分次多项式环的一个生成元

    Args:
        family: 'p' / 'pY' / 'pF' / 'pN' / 'c(nu_k)' / 'e'
        index: 生成元下标 j
        degree: 上同调次数
        power_sum: True 表示幂和 Σ x^{m}（内部计算用），False 表示初等对称函数
    """
    family: str
    index: int
    degree: int
    power_sum: bool = False

    @property
    def key(self) -> str:
        if self.power_sum:
            return f"s{self.index}[{self.family}]"
        if self.family == 'e':
            return 'e'
        if self.family.startswith('c('):
            return f"c{self.index}{self.family[1:]}"
        return f"{self.family}{self.index}"

    def sort_key(self):
        return (_family_rank(self.family), self.power_sum, self.index)


def elementary_generator(family: str, j: int) -> Generator:
    return Generator(family, j, j * family_unit_degree(family))


def power_sum_generator(family: str, m: int) -> Generator:
    return Generator(family, m, m * family_unit_degree(family), power_sum=True)


def euler_generator(codim: int) -> Generator:
    """法丛的 Euler 类，次数等于余维数"""
    return Generator('e', 1, codim)


@dataclass(frozen=True)
class Monomial:
    """生成元的幂积，factors 按族顺序排列"""
    factors: Tuple[Tuple[Generator, int], ...] = ()

    @classmethod
    def of(cls, powers: Dict[Generator, int]) -> 'Monomial':
        items = [(g, e) for g, e in powers.items() if e]
        return cls(tuple(sorted(items, key=lambda item: item[0].sort_key())))

    @property
    def degree(self) -> int:
        return sum(g.degree * e for g, e in self.factors)

    @property
    def key(self) -> str:
        if not self.factors:
            return '1'
        return '.'.join(g.key + (f"^{e}" if e > 1 else '') for g, e in self.factors)

    def __mul__(self, other: 'Monomial') -> 'Monomial':
        powers = dict(self.factors)
        for g, e in other.factors:
            powers[g] = powers.get(g, 0) + e
        return Monomial.of(powers)

    def __str__(self):
        return self.key


ONE = Monomial()

_FACTOR_RE = re.compile(r'^(?:(pY|pF|pN|p)(\d+)|c(\d+)\(nu_(-?\d+)\)|(e))(?:\^(\d+))?$')


def parse_monomial_key(key: str, euler_degree: Optional[int] = None) -> Monomial:
    """
    解析 "pY1^2.c1(nu_1)^2" / "p1.p1.p2" / "pF1.e" 形式的单项式键

    Args:
        key: 单项式键，因子之间用 '.' 分隔，重复因子会累加指数
        euler_degree: 'e' 的次数（余维数），键中出现 'e' 时必须给出

    Returns:
        Monomial
    """
    powers: Dict[Generator, int] = {}
    if key == '1':
        return ONE
    for part in key.split('.'):
        m = _FACTOR_RE.match(part)
        if not m:
            raise ValueError(f"无法识别的单项式因子: {part!r}")
        exponent = int(m.group(6)) if m.group(6) else 1
        if exponent < 1:
            raise ValueError(f"指数必须为正: {part!r}")
        if m.group(1):
            index = int(m.group(2))
            if index < 1:
                raise ValueError(f"下标必须为正: {part!r}")
            gen = elementary_generator(m.group(1), index)
        elif m.group(3):
            index, k = int(m.group(3)), int(m.group(4))
            if index < 1 or k == 0:
                raise ValueError(f"Chern 类下标非法: {part!r}")
            gen = elementary_generator(chern_family(k), index)
        else:
            if euler_degree is None:
                raise ValueError("单项式含 e，但没有给出法丛的余维数")
            gen = euler_generator(euler_degree)
        powers[gen] = powers.get(gen, 0) + exponent
    return Monomial.of(powers)


# ==================== 分拆 ====================

@dataclass(frozen=True)
class Partition:
    """降序排列的正整数，用来给 Pontryagin 数编号"""
    parts: Tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("分拆的部分必须为正整数")
        if list(self.parts) != sorted(self.parts, reverse=True):
            object.__setattr__(self, 'parts', tuple(sorted(self.parts, reverse=True)))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    @property
    def key(self) -> str:
        """"p1.p1.p2"：下标弱递增"""
        return '.'.join(f"p{j}" for j in sorted(self.parts)) or '1'

    @classmethod
    def from_key(cls, key: str) -> 'Partition':
        parts = []
        for part in key.split('.'):
            m = re.fullmatch(r'p(\d+)', part)
            if not m or int(m.group(1)) < 1:
                raise ValueError(f"无法识别的分拆键: {key!r}")
            parts.append(int(m.group(1)))
        if parts != sorted(parts):
            raise ValueError(f"分拆键的下标必须弱递增: {key!r}")
        return cls(tuple(parts))

    def monomial(self, family: str = 'p') -> Monomial:
        powers: Dict[Generator, int] = {}
        for j in self.parts:
            g = elementary_generator(family, j)
            powers[g] = powers.get(g, 0) + 1
        return Monomial.of(powers)


def partitions_of(n: int, largest: Optional[int] = None) -> Iterator[Partition]:
    """n 的全部分拆（降序）"""
    if largest is None:
        largest = n
    if n == 0:
        yield Partition(())
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest.parts)


# ==================== 分次多项式 ====================

def is_zero_coefficient(c) -> bool:
    if isinstance(c, PuiseuxSeries):
        return c.is_zero()
    return not c


def _inverse(c):
    if isinstance(c, PuiseuxSeries):
        return c.invert()
    if not c:
        raise NotInvertibleError("常数项为零", "invert")
    return 1 / Fraction(c)


class GradedPolynomial:
    """
    生成元上的多项式，系数是 Fraction 或 PuiseuxSeries
    只保留上同调次数 ≤ top_degree 的项，零系数不存
    """

    __slots__ = ('terms', 'top_degree')

    def __init__(self, terms: Dict[Monomial, object], top_degree: int):
        self.top_degree = top_degree
        self.terms = {m: c for m, c in terms.items()
                      if m.degree <= top_degree and not is_zero_coefficient(c)}

    @classmethod
    def constant(cls, value, top_degree: int) -> 'GradedPolynomial':
        return cls({ONE: value}, top_degree)

    @classmethod
    def generator(cls, gen: Generator, top_degree: int, coeff=1) -> 'GradedPolynomial':
        return cls({Monomial.of({gen: 1}): coeff}, top_degree)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, GradedPolynomial):
            other = GradedPolynomial.constant(other, self.top_degree)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms[m] + c if m in terms else c
        return GradedPolynomial(terms, min(self.top_degree, other.top_degree))

    __radd__ = __add__

    def __neg__(self):
        return GradedPolynomial({m: -c for m, c in self.terms.items()}, self.top_degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> 'GradedPolynomial':
        return GradedPolynomial({m: x * c for m, x in self.terms.items()}, self.top_degree)

    def __mul__(self, other):
        if not isinstance(other, GradedPolynomial):
            return self.scale(other)
        top = min(self.top_degree, other.top_degree)
        terms: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                if m1.degree + m2.degree > top:
                    continue
                m = m1 * m2
                prod = c1 * c2
                terms[m] = terms[m] + prod if m in terms else prod
        return GradedPolynomial(terms, top)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = GradedPolynomial.constant(1, self.top_degree)
        for _ in range(n):
            result = result * self
        return result

    def homogeneous(self, degree: int) -> 'GradedPolynomial':
        """次数恰为 degree 的部分"""
        return GradedPolynomial({m: c for m, c in self.terms.items() if m.degree == degree},
                                self.top_degree)

    def constant_term(self):
        return self.terms.get(ONE, Fraction(0))

    def generators(self):
        return {g for m in self.terms for g, _ in m.factors}

    def map_coefficients(self, fn) -> 'GradedPolynomial':
        return GradedPolynomial({m: fn(c) for m, c in self.terms.items()}, self.top_degree)

    def layer(self, exponent) -> 'GradedPolynomial':
        """取每个 q 级数系数在 q^{exponent} 处的值，得到有理系数多项式"""
        return self.map_coefficients(
            lambda c: c.coefficient(exponent) if isinstance(c, PuiseuxSeries) else c)

    def substitute(self, mapping: Dict[Generator, 'GradedPolynomial']) -> 'GradedPolynomial':
        """把生成元替换成多项式，未出现在 mapping 中的生成元保持不变"""
        result = GradedPolynomial({}, self.top_degree)
        for m, c in self.terms.items():
            term = GradedPolynomial.constant(c, self.top_degree)
            for g, e in m.factors:
                image = mapping.get(g)
                if image is None:
                    image = GradedPolynomial.generator(g, self.top_degree)
                term = term * image ** e
            result = result + term
        return result

    def exp(self) -> 'GradedPolynomial':
        """
        exp(S)，要求 S 的常数项是 q 赋值为正的级数（或为零），
        这样 S^k 随 k 增长在上同调次数或 q 阶上越过截断
        """
        c0 = self.terms.get(ONE)
        if c0 is not None:
            valuation = c0.valuation() if isinstance(c0, PuiseuxSeries) else None
            if valuation is None or valuation <= 0:
                raise NonTruncatingBundleError("常数项没有正的 q 权重，指数级数不截断", "exp")
        # 乘积的截断会随赋值上升，这里统一钳到 S 自身的精度
        series = [c for c in self.terms.values() if isinstance(c, PuiseuxSeries)]
        cap = min((c.precision for c in series), default=None)

        def clip(c):
            return c.truncate(cap) if cap is not None and isinstance(c, PuiseuxSeries) else c

        result = GradedPolynomial.constant(1, self.top_degree)
        term = GradedPolynomial.constant(1, self.top_degree)
        k = 0
        while True:
            k += 1
            term = (term * self).scale(Fraction(1, k)).map_coefficients(clip)
            if term.is_zero():
                return result
            result = result + term

    def pair(self, table: Dict[Monomial, object], degree: Optional[int] = None,
             component: Optional[str] = None, operation: str = 'pair'):
        """
        与基本类配对：取次数 degree（缺省 top_degree）的部分，逐项乘以示性数求和

        Raises:
            MissingCharacteristicNumberError: 某个系数非零的单项式在表里没有
        """
        degree = self.top_degree if degree is None else degree
        total = Fraction(0)
        for m, c in self.homogeneous(degree).terms.items():
            if m not in table:
                raise MissingCharacteristicNumberError(m.key, component, operation)
            value = table[m]
            if value:
                total = c * value + total
        return total

    def __eq__(self, other):
        if not isinstance(other, GradedPolynomial):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda mc: (mc[0].degree, mc[0].key))
        return " + ".join(f"({c})*{m.key}" for m, c in items)


# ==================== Newton 恒等式 ====================

def newton_power_sums(family: str, top_index: int, top_degree: int,
                      rank: Optional[int] = None) -> Dict[int, GradedPolynomial]:
    """
    幂和 P_m 用初等对称函数表示
    P_m = Σ_{i<m} (−1)^{i−1} e_i P_{m−i} + (−1)^{m−1} m e_m，rank 以上的 e_j 取零
    """
    def e(j):
        if rank is not None and j > rank:
            return GradedPolynomial({}, top_degree)
        return GradedPolynomial.generator(elementary_generator(family, j), top_degree)

    table: Dict[int, GradedPolynomial] = {}
    for m in range(1, top_index + 1):
        acc = e(m).scale((-1) ** (m - 1) * m)
        for i in range(1, m):
            acc = acc + (e(i) * table[m - i]).scale((-1) ** (i - 1))
        table[m] = acc
    return table


def newton_elementary(family: str, top_index: int, top_degree: int) -> Dict[int, GradedPolynomial]:
    """初等对称函数 e_j 用幂和表示：j e_j = Σ_{i=1}^{j} (−1)^{i−1} e_{j−i} P_i"""
    table = {0: GradedPolynomial.constant(1, top_degree)}
    for j in range(1, top_index + 1):
        acc = GradedPolynomial({}, top_degree)
        for i in range(1, j + 1):
            p_i = GradedPolynomial.generator(power_sum_generator(family, i), top_degree)
            acc = acc + (table[j - i] * p_i).scale((-1) ** (i - 1))
        table[j] = acc.scale(Fraction(1, j))
    return table


def to_elementary(poly: GradedPolynomial, ranks: Optional[Dict[str, int]] = None) -> GradedPolynomial:
    """把多项式中所有幂和生成元换成同族的初等对称函数"""
    ranks = ranks or {}
    needed: Dict[str, int] = {}
    for g in poly.generators():
        if g.power_sum:
            needed[g.family] = max(needed.get(g.family, 0), g.index)
    if not needed:
        return poly
    mapping = {}
    for family, top_index in needed.items():
        table = newton_power_sums(family, top_index, poly.top_degree, ranks.get(family))
        for m, image in table.items():
            mapping[power_sum_generator(family, m)] = image
    return poly.substitute(mapping)


def to_power_sums(poly: GradedPolynomial) -> GradedPolynomial:
    """初等对称函数换成幂和（Euler 类不动）"""
    needed: Dict[str, int] = {}
    for g in poly.generators():
        if not g.power_sum and g.family != 'e':
            needed[g.family] = max(needed.get(g.family, 0), g.index)
    mapping = {}
    for family, top_index in needed.items():
        table = newton_elementary(family, top_index, poly.top_degree)
        for j in range(1, top_index + 1):
            mapping[elementary_generator(family, j)] = table[j]
    return poly.substitute(mapping)


# ==================== 特征幂级数 ====================

class CharacteristicPowerSeries:
    """
    形式根 x 的截断幂级数 Σ a_j t^j

    step = 2 时 t = x²（偶级数，配 Pontryagin 生成元）；
    step = 1 时 t = x（配法丛的 Chern 生成元，也用作中间的 x 级数）。
    系数 a_j 是 PuiseuxSeries 或 Fraction。
    """

    __slots__ = ('coeffs', 'step')

    def __init__(self, coeffs, step: int = 2):
        if not coeffs:
            raise ValueError("特征级数至少需要常数项")
        self.coeffs = tuple(coeffs)
        self.step = step

    @property
    def t_order(self) -> int:
        return len(self.coeffs) - 1

    @property
    def x_order(self) -> int:
        return self.t_order * self.step

    @property
    def leading(self):
        """a₀"""
        return self.coeffs[0]

    def x_coefficient(self, m: int):
        """x^m 的系数"""
        if m > self.x_order:
            raise PrecisionError(f"x^{m} 超出截断 x^{self.x_order}", "x_coefficient")
        if m % self.step:
            return Fraction(0)
        return self.coeffs[m // self.step]

    def __mul__(self, other):
        if not isinstance(other, CharacteristicPowerSeries):
            return CharacteristicPowerSeries([c * other for c in self.coeffs], self.step)
        if other.step != self.step:
            raise ValueError("两个特征级数的变量不同")
        n = min(len(self.coeffs), len(other.coeffs))
        out = []
        for k in range(n):
            acc = self.coeffs[0] * other.coeffs[k]
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return CharacteristicPowerSeries(out, self.step)

    __rmul__ = __mul__

    def invert(self) -> 'CharacteristicPowerSeries':
        inv0 = _inverse(self.coeffs[0])
        out = [inv0]
        for n in range(1, len(self.coeffs)):
            acc = self.coeffs[1] * out[n - 1]
            for i in range(2, n + 1):
                acc = acc + self.coeffs[i] * out[n - i]
            out.append(-(acc * inv0))
        return CharacteristicPowerSeries(out, self.step)

    def __truediv__(self, other):
        return self * other.invert()

    def normalized(self) -> 'CharacteristicPowerSeries':
        """Q / a₀"""
        inv0 = _inverse(self.coeffs[0])
        return CharacteristicPowerSeries(
            [Fraction(1)] + [c * inv0 for c in self.coeffs[1:]], self.step)

    def log_normalized(self) -> List:
        """
        log(Q/a₀) 的系数 [0, l_1, l_2, ...]
        l_n = a_n − (1/n) Σ_{i<n} i·l_i·a_{n−i}（a 为归一化后的系数）
        """
        a = self.normalized().coeffs
        logs = [Fraction(0)]
        for n in range(1, len(a)):
            acc = a[n]
            for i in range(1, n):
                acc = acc - (logs[i] * a[n - i]) * Fraction(i, n)
            logs.append(acc)
        return logs

    def even_part(self) -> 'CharacteristicPowerSeries':
        """x 级数 → x² 级数，奇次系数必须恰为零"""
        if self.step == 2:
            return self
        for m in range(1, len(self.coeffs), 2):
            if not is_zero_coefficient(self.coeffs[m]):
                raise ValueError(f"x^{m} 的系数不为零，级数不是偶函数")
        return CharacteristicPowerSeries(self.coeffs[0::2], 2)

    def map_coefficients(self, fn) -> 'CharacteristicPowerSeries':
        return CharacteristicPowerSeries([fn(c) for c in self.coeffs], self.step)

    def layer(self, exponent) -> 'CharacteristicPowerSeries':
        return self.map_coefficients(
            lambda c: c.coefficient(exponent) if isinstance(c, PuiseuxSeries) else c)

    def __repr__(self):
        var = 'x^2' if self.step == 2 else 'x'
        return " + ".join(f"({c})*{var}^{j}" for j, c in enumerate(self.coeffs))


# ==================== 乘法序列 ====================

def multiplicative_class(Q: CharacteristicPowerSeries, family: str, top_degree: int,
                         rank: Optional[int] = None) -> GradedPolynomial:
    """
    ∏_i (Q/a₀)(x_i) 表示成初等对称函数（族 family）的多项式，截断到 top_degree

    Args:
        Q: 特征级数；Pontryagin 族要求偶级数，Chern 族要求 x 级数
        family: 生成元族
        top_degree: 保留的最高上同调次数
        rank: 根的个数，rank 以上的初等对称函数为零

    Returns:
        GradedPolynomial
    """
    return to_elementary(multiplicative_power_class(Q, family, top_degree), {family: rank})


def multiplicative_power_class(Q: CharacteristicPowerSeries, family: str,
                               top_degree: int) -> GradedPolynomial:
    """同上，但停留在幂和生成元：exp(Σ_m l_m P_m)"""
    unit = family_unit_degree(family)
    expected_step = 1 if unit == 2 else 2
    if Q.step != expected_step:
        raise ValueError(f"族 {family} 需要 step={expected_step} 的特征级数")
    top_index = top_degree // unit
    if Q.t_order < top_index:
        raise PrecisionError(f"特征级数只展开到 t^{Q.t_order}，需要 t^{top_index}",
                             "multiplicative_sequence")
    logs = Q.log_normalized()
    total = GradedPolynomial({}, top_degree)
    for m in range(1, top_index + 1):
        total = total + GradedPolynomial.generator(power_sum_generator(family, m), top_degree, logs[m])
    return total.exp()


def multiplicative_sequence(Q: CharacteristicPowerSeries, top_weight: int,
                            family: str = 'p', rank: Optional[int] = None) -> List[GradedPolynomial]:
    """
    Hirzebruch 乘法序列 [K_0, K_1, ..., K_top]，K_j 是权 j 的齐次部分（K_0 = 1）
    """
    unit = family_unit_degree(family)
    full = multiplicative_class(Q, family, top_weight * unit, rank)
    return [full.homogeneous(j * unit) for j in range(top_weight + 1)]


# ==================== x 级数构造 ====================

def _const_series(value, ring, q_trunc):
    return PuiseuxSeries.monomial(value, 0, q_trunc, ring)


def exponential_sum(pairs, ring, q_trunc: int, x_order: int) -> CharacteristicPowerSeries:
    """Σ c·e^{a x}，pairs = [(c, a)]，c 是环元素，a 是有理数"""
    coeffs = []
    for m in range(x_order + 1):
        acc = ring.zero
        for c, a in pairs:
            acc = acc + ring.convert(c) * ring.from_fraction(Fraction(a) ** m / factorial(m))
        coeffs.append(_const_series(acc, ring, q_trunc))
    return CharacteristicPowerSeries(coeffs, step=1)


def divided_difference(a, b, ring, q_trunc: int, x_order: int) -> CharacteristicPowerSeries:
    """(e^{a x} − e^{b x}) / x"""
    coeffs = []
    for m in range(x_order + 1):
        value = (Fraction(a) ** (m + 1) - Fraction(b) ** (m + 1)) / factorial(m + 1)
        coeffs.append(_const_series(value, ring, q_trunc))
    return CharacteristicPowerSeries(coeffs, step=1)


def loop_factor(n: int, sign: int, twist, ring, q_trunc: int, x_order: int) -> CharacteristicPowerSeries:
    """
    (1 + sign·q^n·τ·e^x)(1 + sign·q^n·τ^{-1}·e^{-x})，τ = twist
    = 1 + sign·q^n (τ e^x + τ^{-1} e^{-x}) + q^{2n}
    """
    if n < 1:
        raise NonTruncatingBundleError(f"q 的幂次 {n} 必须为正", "loop_factor")
    twist = ring.convert(twist)
    inv = ring.inverse(twist)
    coeffs = []
    for m in range(x_order + 1):
        inv_fact = ring.from_fraction(Fraction(1, factorial(m)))
        linear = (twist + (inv if m % 2 == 0 else -inv)) * inv_fact
        terms = {n: linear * sign}
        if m == 0:
            terms[0] = ring.one
            terms[2 * n] = ring.one
        coeffs.append(PuiseuxSeries.from_terms(terms, q_trunc, ring))
    return CharacteristicPowerSeries(coeffs, step=1)


def _one(ring, q_trunc, x_order):
    return CharacteristicPowerSeries(
        [_const_series(1 if m == 0 else 0, ring, q_trunc) for m in range(x_order + 1)], step=1)


def theta_quotient(twist, ring, q_trunc: int, x_order: int) -> CharacteristicPowerSeries:
    """
    ∏_{n 奇}(1 − q^n τ e^x)(1 − q^n τ^{-1} e^{-x}) / ∏_{n 偶}(同上)，n ≤ q_trunc
    """
    numerator = _one(ring, q_trunc, x_order)
    denominator = _one(ring, q_trunc, x_order)
    for n in range(1, q_trunc + 1):
        factor = loop_factor(n, -1, twist, ring, q_trunc, x_order)
        if n % 2:
            numerator = numerator * factor
        else:
            denominator = denominator * factor
    return numerator / denominator


def x_over_f_bracket(q_trunc: int, x_order: int, ring=QQ_RING) -> CharacteristicPowerSeries:
    """q^{1/4}·x/f(q,x)，偶级数，系数是整数次幂的 q 级数"""
    sinh_part = divided_difference(Fraction(1, 2), Fraction(-1, 2), ring, q_trunc, x_order)
    return (theta_quotient(1, ring, q_trunc, x_order) / sinh_part).even_part()


def taylor_x_over_f(q_trunc: int, x_order: int = 8) -> CharacteristicPowerSeries:
    """
    Q(x) = x/f(q,x)，f(q,x) = (e^{x/2}−e^{−x/2})·q^{1/4}·∏_{n 偶}(1−q^n e^x)(1−q^n e^{−x}) / ∏_{n 奇}(…)

    Args:
        q_trunc: q 阶（相对 q^{-1/4} 保留的系数个数）
        x_order: x 的最高次数

    Returns:
        CharacteristicPowerSeries（偶），a₀ = q^{-1/4}(1 + O(q))
    """
    if q_trunc < 1:
        raise ValueError("q_trunc 必须 ≥ 1")
    bracket = x_over_f_bracket(q_trunc, x_order)
    return bracket.map_coefficients(lambda c: c.shift(Fraction(-1, 4)))


def witten_characteristic_series(q_trunc: int, x_order: int, ring=QQ_RING) -> CharacteristicPowerSeries:
    """
    x·(1+e^{−x})/(1−e^{−x}) · ∏_{n≥1} (1+q^n e^x)(1+q^n e^{−x}) / ((1−q^n e^x)(1−q^n e^{−x}))
    """
    cosh_part = exponential_sum([(1, Fraction(1, 2)), (1, Fraction(-1, 2))], ring, q_trunc, x_order)
    sinh_part = divided_difference(Fraction(1, 2), Fraction(-1, 2), ring, q_trunc, x_order)
    result = cosh_part / sinh_part
    for n in range(1, q_trunc + 1):
        plus = loop_factor(n, 1, 1, ring, q_trunc, x_order)
        minus = loop_factor(n, -1, 1, ring, q_trunc, x_order)
        result = result * plus / minus
    return result.even_part()


def _rational(series: CharacteristicPowerSeries) -> CharacteristicPowerSeries:
    return series.layer(0)


def ahat_series(x_order: int = 8) -> CharacteristicPowerSeries:
    """x / (2 sinh(x/2)) = 1 − x²/24 + 7x⁴/5760 − …"""
    sinh_part = divided_difference(Fraction(1, 2), Fraction(-1, 2), QQ_RING, 1, x_order)
    return _rational(sinh_part.invert().even_part())


def l_series(x_order: int = 8) -> CharacteristicPowerSeries:
    """x / tanh(x) = 1 + x²/3 − x⁴/45 + …"""
    cosh_part = exponential_sum([(1, 1), (1, -1)], QQ_RING, 1, x_order)
    sinh_part = divided_difference(1, -1, QQ_RING, 1, x_order)
    return _rational((cosh_part / sinh_part).even_part())


def signature_base_series(x_order: int = 8) -> CharacteristicPowerSeries:
    """x·(1+e^{−x})/(1−e^{−x}) = x·coth(x/2) = 2 + x²/6 − …，Witten 级数的 q⁰ 层"""
    return _rational(witten_characteristic_series(1, x_order))


if __name__ == '__main__':
    # 简单演示：K3 型流形的 Â 亏格与符号差
    k3 = {Partition((1,)).monomial(): -48}
    ahat = multiplicative_sequence(ahat_series(4), 1)
    ell = multiplicative_sequence(l_series(4), 1)
    print("Â_1 =", ahat[1], " → Â(K3) =", ahat[1].pair(k3))
    print("L_1 =", ell[1], " → sign(K3) =", ell[1].pair(k3))
