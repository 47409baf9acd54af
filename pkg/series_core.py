# coding = utf-8
"""
截断 Laurent–Puiseux 级数
q 的指数是 min_exp/denom 这样的有理数，系数取自 coefficient_rings 中的精确环。
级数只在 q^{trunc/denom} 以下已知，所有运算都悲观地追踪截断位置。
"""

import logging
from fractions import Fraction
from math import ceil, lcm
from typing import Dict, List, Tuple

from coefficient_rings import QQ_RING, CoefficientRing
from errors import NotInvertibleError, PrecisionError, RingMismatchError

logger = logging.getLogger(__name__)


def _exponent_numerator(exponent, denom, operation):
    """把有理指数换成以 1/denom 为单位的整数，不整除时报错"""
    value = Fraction(exponent) * denom
    if value.denominator != 1:
        raise PrecisionError(f"指数 {exponent} 不是 1/{denom} 的整数倍", operation)
    return value.numerator


class PuiseuxSeries:
    """
    q 的截断 Puiseux 级数

    coeffs[i] 是 q^{(min_exp + i)/denom} 的系数，级数在 q^{trunc/denom} 处截断。
    规范形：首个存储系数非零；零级数的 min_exp 等于 trunc，coeffs 为空。
    """

    __slots__ = ('ring', 'denom', 'min_exp', 'coeffs', 'trunc')

    def __init__(self, ring: CoefficientRing, denom: int, min_exp: int, coeffs, trunc: int):
        if denom < 1:
            raise ValueError("级数分母必须为正整数")
        lifted = [self._lift(ring, c) for c in coeffs]
        # 超出截断的部分不保留，不足的补零
        length = max(0, trunc - min_exp)
        lifted = lifted[:length] + [ring.zero] * (length - len(lifted))
        start = 0
        while start < len(lifted) and ring.is_zero(lifted[start]):
            start += 1
        self.ring = ring
        self.denom = denom
        self.min_exp = min(min_exp + start, trunc)
        self.coeffs = tuple(lifted[start:])
        self.trunc = trunc

    @staticmethod
    def _lift(ring, c):
        if isinstance(c, (int, Fraction)):
            return ring.from_fraction(Fraction(c))
        return c

    # ==================== 构造 ====================

    @classmethod
    def zero(cls, ring=QQ_RING, denom=1, precision=0):
        """零级数，已知到 q^{precision}"""
        trunc = _exponent_numerator(precision, denom, "zero")
        return cls(ring, denom, trunc, (), trunc)

    @classmethod
    def monomial(cls, coeff, exponent, precision, ring=QQ_RING, denom=1):
        """c·q^{exponent} + O(q^{precision})"""
        num = _exponent_numerator(exponent, denom, "monomial")
        trunc = _exponent_numerator(precision, denom, "monomial")
        return cls(ring, denom, num, [coeff], trunc)

    @classmethod
    def one(cls, ring=QQ_RING, denom=1, precision=1):
        return cls.monomial(1, 0, precision, ring, denom)

    @classmethod
    def from_terms(cls, terms: Dict, precision, ring=QQ_RING, denom=1):
        """
        由 {指数: 系数} 构造级数

        Args:
            terms: 有理指数到系数的映射
            precision: 截断指数
            ring: 系数环
            denom: 指数公共分母

        Returns:
            PuiseuxSeries
        """
        trunc = _exponent_numerator(precision, denom, "from_terms")
        nums = {_exponent_numerator(e, denom, "from_terms"): c for e, c in terms.items()}
        nums = {n: c for n, c in nums.items() if n < trunc}
        if not nums:
            return cls(ring, denom, trunc, (), trunc)
        start = min(nums)
        coeffs = [ring.zero] * (trunc - start)
        for n, c in nums.items():
            coeffs[n - start] = cls._lift(ring, c)
        return cls(ring, denom, start, coeffs, trunc)

    # ==================== 基本属性 ====================

    @property
    def precision(self) -> Fraction:
        """截断指数：级数模 q^{precision} 已知"""
        return Fraction(self.trunc, self.denom)

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self):
        """最低非零项的指数，零级数返回 None"""
        if not self.coeffs:
            return None
        return Fraction(self.min_exp, self.denom)

    def coefficient(self, exponent):
        """
        q^{exponent} 的系数

        Raises:
            PrecisionError: exponent 不在已知范围内
        """
        value = Fraction(exponent) * self.denom
        if value >= self.trunc:
            raise PrecisionError(
                f"q^{exponent} 超出截断 q^{self.precision}", "coefficient")
        if value.denominator != 1 or value < self.min_exp:
            return self.ring.zero
        return self.coeffs[value.numerator - self.min_exp]

    def terms(self) -> List[Tuple[Fraction, object]]:
        """非零项 [(指数, 系数)]，按指数升序"""
        return [(Fraction(self.min_exp + i, self.denom), c)
                for i, c in enumerate(self.coeffs) if not self.ring.is_zero(c)]

    # ==================== 分母与环 ====================

    def rescale(self, new_denom: int) -> 'PuiseuxSeries':
        """换到更细的指数分母（new_denom 必须是 denom 的倍数）"""
        if new_denom == self.denom:
            return self
        if new_denom % self.denom:
            raise ValueError(f"分母 {new_denom} 不是 {self.denom} 的倍数")
        m = new_denom // self.denom
        coeffs = [self.ring.zero] * (len(self.coeffs) * m)
        for i, c in enumerate(self.coeffs):
            coeffs[i * m] = c
        return PuiseuxSeries(self.ring, new_denom, self.min_exp * m, coeffs, self.trunc * m)

    def change_ring(self, ring: CoefficientRing, fn=None) -> 'PuiseuxSeries':
        """逐系数映射到另一个环，fn 缺省时用 ring.convert"""
        fn = fn or ring.convert
        return PuiseuxSeries(ring, self.denom, self.min_exp,
                             [fn(c) for c in self.coeffs], self.trunc)

    def truncate(self, precision) -> 'PuiseuxSeries':
        """降低精度到 q^{precision}（不会提高精度）"""
        trunc = min(self.trunc, ceil(Fraction(precision) * self.denom))
        return PuiseuxSeries(self.ring, self.denom, self.min_exp, self.coeffs, trunc)

    def _align(self, other, operation):
        if not isinstance(other, PuiseuxSeries):
            raise TypeError(f"无法与 {type(other).__name__} 运算")
        if self.ring != other.ring:
            raise RingMismatchError(
                f"系数环不一致: {self.ring.tag} vs {other.ring.tag}", operation)
        d = lcm(self.denom, other.denom)
        return self.rescale(d), other.rescale(d)

    # ==================== 运算 ====================

    def __add__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return self + self._constant(other)
        a, b = self._align(other, "series_add")
        trunc = min(a.trunc, b.trunc)
        start = min(a.min_exp, b.min_exp, trunc)
        coeffs = [a.ring.zero] * (trunc - start)
        for s in (a, b):
            for i, c in enumerate(s.coeffs):
                n = s.min_exp + i
                if n >= trunc:
                    break
                coeffs[n - start] = coeffs[n - start] + c
        return PuiseuxSeries(a.ring, a.denom, start, coeffs, trunc)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.ring, self.denom, self.min_exp,
                             [-c for c in self.coeffs], self.trunc)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _constant(self, value):
        """把标量看成精度无限的常数级数（只保留到本级数的截断）"""
        trunc = max(self.trunc, 1)
        return PuiseuxSeries(self.ring, self.denom, 0, [self._lift(self.ring, value)], trunc)

    def scale(self, c) -> 'PuiseuxSeries':
        """乘以环中的常数"""
        c = self._lift(self.ring, c)
        return PuiseuxSeries(self.ring, self.denom, self.min_exp,
                             [c * x for x in self.coeffs], self.trunc)

    def __mul__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return self.scale(other)
        a, b = self._align(other, "series_mul")
        trunc = min(a.min_exp + b.trunc, b.min_exp + a.trunc)
        start = a.min_exp + b.min_exp
        if start >= trunc or not a.coeffs or not b.coeffs:
            return PuiseuxSeries(a.ring, a.denom, trunc, (), trunc)
        length = trunc - start
        coeffs = [a.ring.zero] * length
        zero = a.ring.is_zero
        for i, x in enumerate(a.coeffs[:length]):
            if zero(x):
                continue
            for j, y in enumerate(b.coeffs[:length - i]):
                coeffs[i + j] = coeffs[i + j] + x * y
        return PuiseuxSeries(a.ring, a.denom, start, coeffs, trunc)

    __rmul__ = __mul__

    def invert(self) -> 'PuiseuxSeries':
        """
        乘法逆，相对精度保持不变

        Raises:
            NotInvertibleError: 零级数或首项系数不可逆
        """
        if not self.coeffs:
            raise NotInvertibleError("零级数不可逆", "series_invert")
        lead = self.coeffs[0]
        if not self.ring.is_unit(lead):
            raise NotInvertibleError(f"首项系数 {self.ring.render(lead)} 不是单位", "series_invert")
        inv_lead = self.ring.inverse(lead)
        length = len(self.coeffs)
        out = [inv_lead]
        for n in range(1, length):
            acc = self.ring.zero
            for i in range(1, n + 1):
                c = self.coeffs[i]
                if not self.ring.is_zero(c):
                    acc = acc + c * out[n - i]
            out.append(-(inv_lead * acc))
        return PuiseuxSeries(self.ring, self.denom, -self.min_exp, out, -self.min_exp + length)

    def __truediv__(self, other):
        if isinstance(other, PuiseuxSeries):
            return self * other.invert()
        return self.scale(self.ring.inverse(self._lift(self.ring, other)))

    def __rtruediv__(self, other):
        return self.invert().scale(other)

    def __pow__(self, n: int):
        if n < 0:
            return self.invert() ** (-n)
        result = PuiseuxSeries(self.ring, self.denom, 0, [self.ring.one],
                               max(1, len(self.coeffs)))
        base = self
        first = True
        while n:
            if n & 1:
                result = base if first else result * base
                first = False
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, exponent) -> 'PuiseuxSeries':
        """乘以 q^{exponent}"""
        d = lcm(self.denom, Fraction(exponent).denominator)
        s = self.rescale(d)
        k = _exponent_numerator(exponent, d, "shift")
        return PuiseuxSeries(s.ring, d, s.min_exp + k, s.coeffs, s.trunc + k)

    # ==================== 比较 ====================

    def agrees_with(self, other: 'PuiseuxSeries') -> bool:
        """在两者共同的截断以下系数相同"""
        a, b = self._align(other, "agrees_with")
        trunc = min(a.trunc, b.trunc)
        for n in range(min(a.min_exp, b.min_exp), trunc):
            if a._at(n) != b._at(n):
                return False
        return True

    def _at(self, n):
        if n < self.min_exp:
            return self.ring.zero
        return self.coeffs[n - self.min_exp]

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        if self.ring != other.ring:
            return False
        a, b = self._align(other, "series_eq")
        return a.trunc == b.trunc and a.agrees_with(b)

    __hash__ = None

    def __repr__(self):
        parts = [f"{self.ring.render(c)}*q^({e})" for e, c in self.terms()]
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(q^({self.precision}))"
