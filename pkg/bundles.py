# coding = utf-8
"""
向量丛表达式与 Chern 特征
由 TM、Λ^k TM、S^k TM、Λ_t / S_t（t = ±q^n）、常数丛经直和、张量积构成。
Chern 特征在形式根上计算，全程停留在 x² 的幂和上，最后再换成 Pontryagin 类。
"""

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Optional, Sequence

from char_classes import (GradedPolynomial, chern_family, power_sum_generator)
from errors import DescriptorError, NonTruncatingBundleError
from series_core import PuiseuxSeries

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootFamily:
    """
    一组形式根 ±x_1, …, ±x_n，σ 在上面的特征值为 eigenvalue（±1）

    family 是 Pontryagin 族（'p'、'pF'、'pN'）时，x² 的幂和就是该族的幂和生成元；
    family 是 Chern 族 'c(nu_k)' 时，x² 的幂和是 Chern 根的偶次幂和。
    """
    family: str
    n_roots: int
    eigenvalue: int = 1

    def even_power_sum(self, m: int, top_degree: int) -> GradedPolynomial:
        """Σ_i x_i^{2m}"""
        if self.family.startswith('c('):
            gen = power_sum_generator(self.family, 2 * m)
        else:
            gen = power_sum_generator(self.family, m)
        return GradedPolynomial.generator(gen, top_degree)


class ChernContext:
    """一次 Chern 特征计算的上下文：根族、上同调截断、q 阶"""

    def __init__(self, families: Sequence[RootFamily], top_degree: int, q_trunc: int):
        self.families = tuple(families)
        self.top_degree = top_degree
        self.q_trunc = q_trunc
        self._adams = {}

    def adams(self, r: int) -> GradedPolynomial:
        """
        ψ^r(TM⊗ℂ) 的 Chern 特征 = Σ_族 ε^r (2n + Σ_m 2 r^{2m} s_m / (2m)!)
        """
        if r not in self._adams:
            total = GradedPolynomial({}, self.top_degree)
            for fam in self.families:
                sign = fam.eigenvalue ** r
                part = GradedPolynomial.constant(2 * fam.n_roots, self.top_degree)
                for m in range(1, self.top_degree // 4 + 1):
                    coeff = Fraction(2 * r ** (2 * m), factorial(2 * m))
                    part = part + fam.even_power_sum(m, self.top_degree).scale(coeff)
                total = total + part.scale(sign)
            self._adams[r] = total
        return self._adams[r]

    def q_power(self, n: int, coeff=1) -> PuiseuxSeries:
        return PuiseuxSeries.monomial(coeff, n, self.q_trunc)

    def one(self) -> GradedPolynomial:
        return GradedPolynomial.constant(1, self.top_degree)


# ==================== 表达式树 ====================

class BundleExpression:
    """丛表达式基类"""

    def character(self, ctx: ChernContext) -> GradedPolynomial:
        raise NotImplementedError

    def is_graded(self) -> bool:
        """是否带 q 权重"""
        return False

    def __add__(self, other):
        return BundleSum(self, _as_bundle(other))

    __radd__ = __add__

    def __mul__(self, other):
        return BundleTensor(self, _as_bundle(other))

    __rmul__ = __mul__

    def q_shift(self, n: int) -> 'BundleExpression':
        return QShift(self, n)


def _as_bundle(value) -> BundleExpression:
    if isinstance(value, BundleExpression):
        return value
    if isinstance(value, int):
        return TrivialBundle(value)
    raise TypeError(f"无法把 {value!r} 当作向量丛")


@dataclass(frozen=True)
class TrivialBundle(BundleExpression):
    rank: int = 1

    def character(self, ctx):
        return GradedPolynomial.constant(self.rank, ctx.top_degree)

    def __str__(self):
        return str(self.rank)


@dataclass(frozen=True)
class TangentBundle(BundleExpression):
    def character(self, ctx):
        return ctx.adams(1)

    def __str__(self):
        return "TM"


def _newton_powers(ctx: ChernContext, k: int, alternating: bool) -> GradedPolynomial:
    """k·Λ^k = Σ (−1)^{r−1} ψ^r Λ^{k−r}；k·S^k = Σ ψ^r S^{k−r}"""
    table = [ctx.one()]
    for j in range(1, k + 1):
        acc = GradedPolynomial({}, ctx.top_degree)
        for r in range(1, j + 1):
            sign = (-1) ** (r - 1) if alternating else 1
            acc = acc + (ctx.adams(r) * table[j - r]).scale(sign)
        table.append(acc.scale(Fraction(1, j)))
    return table[k]


@dataclass(frozen=True)
class ExteriorPower(BundleExpression):
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("外幂次数必须非负")

    def character(self, ctx):
        return _newton_powers(ctx, self.k, alternating=True)

    def __str__(self):
        return f"L{self.k}"


@dataclass(frozen=True)
class SymmetricPower(BundleExpression):
    k: int

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("对称幂次数必须非负")

    def character(self, ctx):
        return _newton_powers(ctx, self.k, alternating=False)

    def __str__(self):
        return f"S{self.k}"


def _log_lambda(ctx: ChernContext, n: int, sign: int) -> GradedPolynomial:
    """log ch(Λ_t TM) = Σ_r (−1)^{r−1} t^r ψ^r / r，t = sign·q^n"""
    total = GradedPolynomial({}, ctx.top_degree)
    r = 1
    while n * r < ctx.q_trunc:
        coeff = Fraction((-1) ** (r - 1) * sign ** r, r)
        total = total + ctx.adams(r).scale(ctx.q_power(n * r, coeff))
        r += 1
    return total


def _log_sym(ctx: ChernContext, n: int, sign: int) -> GradedPolynomial:
    """log ch(S_t TM) = Σ_r t^r ψ^r / r"""
    total = GradedPolynomial({}, ctx.top_degree)
    r = 1
    while n * r < ctx.q_trunc:
        total = total + ctx.adams(r).scale(ctx.q_power(n * r, Fraction(sign ** r, r)))
        r += 1
    return total


@dataclass(frozen=True)
class LambdaT(BundleExpression):
    """Λ_{±q^n} TM"""
    n: int
    sign: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise NonTruncatingBundleError(f"Λ_t 的 t = ±q^{self.n} 没有正的 q 权重", "LambdaT")

    def character(self, ctx):
        return _log_lambda(ctx, self.n, self.sign).exp()

    def is_graded(self):
        return True

    def __str__(self):
        return f"Lambda[{'-' if self.sign < 0 else ''}q^{self.n}]"


@dataclass(frozen=True)
class SymT(BundleExpression):
    """S_{±q^n} TM"""
    n: int
    sign: int = 1

    def __post_init__(self):
        if self.n < 1:
            raise NonTruncatingBundleError(f"S_t 的 t = ±q^{self.n} 没有正的 q 权重", "SymT")

    def character(self, ctx):
        return _log_sym(ctx, self.n, self.sign).exp()

    def is_graded(self):
        return True

    def __str__(self):
        return f"Sym[{'-' if self.sign < 0 else ''}q^{self.n}]"


@dataclass(frozen=True)
class WittenBundle(BundleExpression):
    """⊗_{n≥1} S_{q^n}TM ⊗ ⊗_{n≥1} Λ_{q^n}TM（符号差尖点）"""

    def character(self, ctx):
        total = GradedPolynomial({}, ctx.top_degree)
        for n in range(1, ctx.q_trunc):
            total = total + _log_sym(ctx, n, 1) + _log_lambda(ctx, n, 1)
        return total.exp()

    def is_graded(self):
        return True

    def __str__(self):
        return "W"


@dataclass(frozen=True)
class AhatCuspBundle(BundleExpression):
    """⊗_{n 奇} Λ_{−q^n}TM ⊗ ⊗_{n 偶} S_{q^n}TM（Â 尖点）"""

    def character(self, ctx):
        total = GradedPolynomial({}, ctx.top_degree)
        for n in range(1, ctx.q_trunc):
            total = total + (_log_lambda(ctx, n, -1) if n % 2 else _log_sym(ctx, n, 1))
        return total.exp()

    def is_graded(self):
        return True

    def __str__(self):
        return "A"


@dataclass(frozen=True)
class BundleSum(BundleExpression):
    left: BundleExpression
    right: BundleExpression

    def character(self, ctx):
        return self.left.character(ctx) + self.right.character(ctx)

    def is_graded(self):
        return self.left.is_graded() or self.right.is_graded()

    def __str__(self):
        return f"{self.left} + {self.right}"


@dataclass(frozen=True)
class BundleTensor(BundleExpression):
    left: BundleExpression
    right: BundleExpression

    def character(self, ctx):
        return self.left.character(ctx) * self.right.character(ctx)

    def is_graded(self):
        return self.left.is_graded() or self.right.is_graded()

    def __str__(self):
        def wrap(e):
            return f"({e})" if isinstance(e, BundleSum) else str(e)
        return f"{wrap(self.left)} * {wrap(self.right)}"


@dataclass(frozen=True)
class QShift(BundleExpression):
    """q^n · E"""
    inner: BundleExpression
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise NonTruncatingBundleError("q 平移必须非负", "q_shift")

    def character(self, ctx):
        return self.inner.character(ctx).scale(ctx.q_power(self.n))

    def is_graded(self):
        return self.n > 0 or self.inner.is_graded()

    def __str__(self):
        return f"q^{self.n}*({self.inner})"


def bundle_chern_character(expr: BundleExpression, n_roots: int, x_trunc: int, q_trunc: int,
                           families: Optional[List[RootFamily]] = None) -> GradedPolynomial:
    """
    丛表达式的 Chern 特征（复化），以 x² 的幂和表示

    Args:
        expr: 丛表达式
        n_roots: 切丛形式根个数 dim/2（families 缺省时使用）
        x_trunc: x 的最高次数，对应上同调次数 2·x_trunc
        q_trunc: q 阶
        families: 根族列表，缺省为 [RootFamily('p', n_roots)]

    Returns:
        GradedPolynomial（幂和生成元，系数为 Fraction 或 q 级数）
    """
    families = families or [RootFamily('p', n_roots)]
    ctx = ChernContext(families, 2 * x_trunc, q_trunc)
    result = expr.character(ctx)
    logger.debug("ch(%s): %d 项", expr, len(result.terms))
    return result


# ==================== 文本形式 ====================

_TOKEN_RE = re.compile(r'\s*(TM|L\d+|S\d+|W|A|\d+|[()+*])')


@lru_cache(maxsize=128)
def parse_bundle(text: str) -> BundleExpression:
    """
    解析丛表达式文本

    语法：
        expr   := term ('+' term)*
        term   := factor ('*' factor)*
        factor := 'TM' | 'L'k | 'S'k | 'W' | 'A' | 整数 | '(' expr ')'
    例如 "L2 + TM"、"TM * TM"、"1"
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise DescriptorError(f"无法识别的字符: {text[pos:]!r}", "--bundle", "parse_bundle")
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise DescriptorError("空的丛表达式", "--bundle", "parse_bundle")

    position = [0]

    def peek():
        return tokens[position[0]] if position[0] < len(tokens) else None

    def take():
        token = peek()
        position[0] += 1
        return token

    def parse_expr():
        node = parse_term()
        while peek() == '+':
            take()
            node = BundleSum(node, parse_term())
        return node

    def parse_term():
        node = parse_factor()
        while peek() == '*':
            take()
            node = BundleTensor(node, parse_factor())
        return node

    def parse_factor():
        token = take()
        if token is None:
            raise DescriptorError("表达式意外结束", "--bundle", "parse_bundle")
        if token == '(':
            node = parse_expr()
            if take() != ')':
                raise DescriptorError("括号不匹配", "--bundle", "parse_bundle")
            return node
        if token == 'TM':
            return TangentBundle()
        if token == 'W':
            return WittenBundle()
        if token == 'A':
            return AhatCuspBundle()
        if token[0] == 'L':
            return ExteriorPower(int(token[1:]))
        if token[0] == 'S':
            return SymmetricPower(int(token[1:]))
        if token.isdigit():
            return TrivialBundle(int(token))
        raise DescriptorError(f"意外的符号 {token!r}", "--bundle", "parse_bundle")

    node = parse_expr()
    if peek() is not None:
        raise DescriptorError(f"多余的符号 {peek()!r}", "--bundle", "parse_bundle")
    return node


if __name__ == '__main__':
    ch = bundle_chern_character(parse_bundle("TM"), n_roots=2, x_trunc=2, q_trunc=1)
    print("ch(TM) on a 4-manifold:", ch)
