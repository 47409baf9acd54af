# coding = utf-8
"""
系数环
PuiseuxSeries 的系数可以取自三种精确环：
1. 有理数 ℚ（Fraction）
2. 圆变量 μ 的有理函数域 ℚ(μ)，μ = λ^{1/2}（sympy 有理函数域）
3. 分圆域 ℚ(ζ_n)，多项式模第 n 个分圆多项式
"""

from fractions import Fraction
from functools import lru_cache

from sympy import cyclotomic_poly, totient
from sympy.polys.domains import QQ
from sympy.polys.fields import field
from sympy.polys.rings import ring

from errors import NotInvertibleError, PoleAtTorsionPointError


def to_fraction(value):
    """sympy QQ / int / Fraction 统一转成 Fraction"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    return Fraction(int(value.numerator), int(value.denominator))


def to_qq(value):
    value = to_fraction(value)
    return QQ(value.numerator, value.denominator)


class CoefficientRing:
    """系数环接口（这里的环都是域）"""

    tag = "abstract"

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        return self.from_fraction(Fraction(n))

    def from_fraction(self, value):
        raise NotImplementedError

    def is_zero(self, a):
        return not a

    def is_unit(self, a):
        return not self.is_zero(a)

    def inverse(self, a):
        if self.is_zero(a):
            raise NotInvertibleError(f"{self.tag} 中 0 不可逆", "inverse")
        return self.one / a

    def convert(self, a):
        """把 int / Fraction 嵌入本环，已是本环元素则原样返回"""
        if isinstance(a, (int, Fraction)):
            return self.from_fraction(Fraction(a))
        return a

    def render(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, CoefficientRing) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"<{self.__class__.__name__} {self.tag}>"


class RationalField(CoefficientRing):
    """有理数域，元素为 Fraction"""

    tag = "QQ"

    def from_fraction(self, value):
        return Fraction(value)

    def inverse(self, a):
        if a == 0:
            raise NotInvertibleError("有理数 0 不可逆", "inverse")
        return 1 / Fraction(a)

    def render(self, a):
        return str(Fraction(a))


QQ_RING = RationalField()


# ==================== ℚ(μ) ====================

MU_FIELD, MU = field("mu", QQ)
_MU_POLY_RING = MU_FIELD.ring


class MuFunctionField(CoefficientRing):
    """
    μ 的有理函数域
    元素是 sympy FracElement，构造时已约去公因子；
    对外给出分子分母时把分母化成首一
    """

    tag = "QQ(mu)"

    def from_fraction(self, value):
        return MU_FIELD.ground_new(to_qq(value))

    def inverse(self, a):
        if not a:
            raise NotInvertibleError("有理函数 0 不可逆", "inverse")
        return 1 / a

    def convert(self, a):
        if isinstance(a, (int, Fraction)):
            return self.from_fraction(Fraction(a))
        return MU_FIELD.field_new(a)

    def render(self, a):
        numer, denom = monic_parts(a)
        if denom == 1:
            return str(numer.as_expr())
        return f"({numer.as_expr()})/({denom.as_expr()})"


QMU_RING = MuFunctionField()


def mu_power(k):
    """μ^k，k 可以为负"""
    if k >= 0:
        return MU ** k
    return 1 / MU ** (-k)


def ratfn(numerator_coeffs, denominator_coeffs=(1,)):
    """
    用系数表构造有理函数（升幂排列）

    Args:
        numerator_coeffs: 分子系数 [a0, a1, ...]
        denominator_coeffs: 分母系数

    Returns:
        FracElement
    """
    def build(coeffs):
        poly = _MU_POLY_RING.zero
        for i, c in enumerate(coeffs):
            if c:
                poly += _MU_POLY_RING.ground_new(to_qq(c)) * _MU_POLY_RING.gens[0] ** i
        return poly
    return MU_FIELD.new(build(numerator_coeffs), build(denominator_coeffs))


def monic_parts(r):
    """分子、分母（分母首一）"""
    lc = r.denom.LC
    return r.numer.quo_ground(lc), r.denom.quo_ground(lc)


def poly_terms(poly):
    """多项式的 (指数, Fraction 系数) 列表"""
    return [(monom[0], to_fraction(coeff)) for monom, coeff in poly.terms()]


def mu_exponents(r):
    """分子分母中出现的 μ 指数"""
    numer, denom = monic_parts(r)
    return [e for e, _ in poly_terms(numer)] + [e for e, _ in poly_terms(denom)]


def ratfn_is_constant(r):
    """
    刚性判据：有理函数是否为常数

    Args:
        r: ℚ(μ) 中的元素

    Returns:
        (bool, Fraction|None): 是否为常数，以及常数值
    """
    numer, denom = monic_parts(r)
    if not denom.is_ground:
        return False, None
    if not numer.is_ground:
        return False, None
    value = to_fraction(numer.const()) / to_fraction(denom.const())
    return True, value


def _horner(poly, point, ring_):
    result = ring_.zero
    for exp, coeff in poly_terms(poly):
        result = result + ring_.from_fraction(coeff) * point ** exp
    return result


def ratfn_eval_rational(r, t):
    """在有理点 μ = t 处求值，分母为零时抛 PoleAtTorsionPointError"""
    t = Fraction(t)
    numer, denom = monic_parts(r)
    den_value = _horner(denom, t, QQ_RING)
    if den_value == 0:
        raise PoleAtTorsionPointError(f"分母在 μ = {t} 处为零", "ratfn_eval_rational")
    return _horner(numer, t, QQ_RING) / den_value


def ratfn_eval_cyclotomic(r, n, power):
    """
    把 μ 代成 ζ_n^power，在分圆域 ℚ(ζ_n) 中精确求值

    Args:
        r: ℚ(μ) 中的元素
        n: 分圆域的阶
        power: ζ_n 的幂次

    Returns:
        CyclotomicElement
    """
    field_ = cyclotomic_field(n)
    point = field_.zeta() ** power
    numer, denom = monic_parts(r)
    den_value = _horner(denom, point, field_)
    if field_.is_zero(den_value):
        raise PoleAtTorsionPointError(
            f"分母在 μ = ζ_{n}^{power} 处为零，请先对各不动点分支求和（刚性）后再求值",
            "ratfn_eval_cyclotomic")
    return _horner(numer, point, field_) * den_value.inverse()


# ==================== 分圆域 ====================

_ZETA_RING, _ZETA = ring("zeta", QQ)


class CyclotomicElement:
    """ℚ(ζ_n) 中的元素，代表元次数 < φ(n)"""

    __slots__ = ('order', 'poly')

    def __init__(self, order, poly):
        self.order = order
        self.poly = poly.rem(cyclotomic_field(order).modulus)

    @property
    def coords(self):
        """长度 φ(n) 的有理坐标（升幂）"""
        degree = cyclotomic_field(self.order).degree
        coords = [Fraction(0)] * degree
        for exp, coeff in poly_terms(self.poly):
            coords[exp] = coeff
        return coords

    def _coerce(self, other):
        if isinstance(other, CyclotomicElement):
            if other.order != self.order:
                raise ValueError(f"分圆域阶不一致: {self.order} vs {other.order}")
            return other.poly
        return _ZETA_RING.ground_new(to_qq(other))

    def __add__(self, other):
        return CyclotomicElement(self.order, self.poly + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return CyclotomicElement(self.order, self.poly - self._coerce(other))

    def __rsub__(self, other):
        return CyclotomicElement(self.order, self._coerce(other) - self.poly)

    def __neg__(self):
        return CyclotomicElement(self.order, -self.poly)

    def __mul__(self, other):
        return CyclotomicElement(self.order, self.poly * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, CyclotomicElement):
            other = CyclotomicElement(self.order, self._coerce(other))
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CyclotomicElement(self.order, self._coerce(other)) * self.inverse()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CyclotomicElement(self.order, _ZETA_RING.one)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self):
        if not self.poly:
            raise NotInvertibleError(f"ℚ(ζ_{self.order}) 中 0 不可逆", "inverse")
        s, _, h = self.poly.gcdex(cyclotomic_field(self.order).modulus)
        return CyclotomicElement(self.order, s.quo_ground(h.LC))

    def is_rational(self):
        return self.poly.is_ground

    def rational_value(self):
        """若是有理数则返回 Fraction，否则 None"""
        if not self.poly.is_ground:
            return None
        return to_fraction(self.poly.const()) if self.poly else Fraction(0)

    def __bool__(self):
        return bool(self.poly)

    def __eq__(self, other):
        if isinstance(other, CyclotomicElement):
            return self.order == other.order and self.poly == other.poly
        if isinstance(other, (int, Fraction)):
            return self.poly == _ZETA_RING.ground_new(to_qq(other))
        return NotImplemented

    def __hash__(self):
        return hash((self.order, tuple(self.coords)))

    def __repr__(self):
        return f"CyclotomicElement({self.order}, {self.poly.as_expr()})"


class CyclotomicField(CoefficientRing):
    """分圆域 ℚ(ζ_n)"""

    def __init__(self, order):
        if order < 1:
            raise ValueError("分圆域的阶必须为正整数")
        self.order = order
        self.tag = f"QQ(zeta_{order})"
        coeffs = cyclotomic_poly(order, polys=True).all_coeffs()
        self.modulus = _ZETA_RING.from_list([QQ(int(c)) for c in coeffs])
        self.degree = int(totient(order))

    def from_fraction(self, value):
        return CyclotomicElement(self.order, _ZETA_RING.ground_new(to_qq(value)))

    def convert(self, a):
        if isinstance(a, CyclotomicElement):
            return a
        return self.from_fraction(Fraction(a))

    def zeta(self):
        return CyclotomicElement(self.order, _ZETA)

    def is_zero(self, a):
        return not a

    def inverse(self, a):
        return a.inverse()

    def render(self, a):
        value = a.rational_value()
        if value is not None:
            return str(value)
        return str(a.poly.as_expr()).replace('zeta', f'ζ{self.order}')


@lru_cache(maxsize=None)
def cyclotomic_field(order):
    return CyclotomicField(order)
