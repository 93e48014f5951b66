#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
单项式运算模块
变量优先级、单项式序（lex / deglex / 权重矩阵）、锥与极小生成元

约定：
- 指数向量按变量下标 1..n 存储，优先级只是元数据，不会重新排列指数
- 默认优先级 x_n > x_{n-1} > ... > x_1
"""
import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

from src.errors import ContextMismatchError, MonomialOverflowError, NotDivisibleError

MAX_EXPONENT = 2 ** 63 - 1


@dataclass(frozen=True)
class VariableContext:
    """变量上下文：变量名与优先级（precedence 为 0 基下标，从高到低）"""
    names: Tuple[str, ...]
    precedence: Tuple[int, ...] = ()

    def __post_init__(self):
        names = tuple(self.names)
        if not names:
            raise ContextMismatchError("变量个数必须为正")
        if len(set(names)) != len(names):
            raise ContextMismatchError("变量名必须唯一", {"names": list(names)})
        precedence = tuple(self.precedence) if self.precedence else tuple(range(len(names) - 1, -1, -1))
        if sorted(precedence) != list(range(len(names))):
            raise ContextMismatchError("优先级必须是变量下标的一个排列", {"precedence": list(precedence)})
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "precedence", precedence)

    @classmethod
    def standard(cls, n: int, prefix: str = "x", precedence: Optional[Sequence[int]] = None) -> "VariableContext":
        """构造 x1..xn 上下文"""
        return cls(tuple(f"{prefix}{i}" for i in range(1, n + 1)), tuple(precedence or ()))

    @property
    def n(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        """变量名 -> 0 基下标"""
        try:
            return self.names.index(name)
        except ValueError:
            raise ContextMismatchError(f"未声明的变量: {name}", {"name": name})

    def rank(self, i: int) -> int:
        """变量 i 在优先级中的位置（0 为最高）"""
        return self.precedence.index(i)

    def with_precedence(self, names_high_to_low: Sequence[str]) -> "VariableContext":
        """按给定变量名顺序（从高到低）重设优先级"""
        return VariableContext(self.names, tuple(self.index_of(name) for name in names_high_to_low))

    def sort_variables(self, indices: Iterable[int]) -> List[int]:
        """按优先级从高到低排列变量下标"""
        return sorted(indices, key=self.rank)


@dataclass(frozen=True)
class Monomial:
    """单项式 x^α，α 为非负整数向量"""
    exponents: Tuple[int, ...]

    def __post_init__(self):
        exponents = tuple(self.exponents)
        for e in exponents:
            if not isinstance(e, int) or e < 0:
                raise ValueError(f"指数必须为非负整数: {exponents}")
            if e > MAX_EXPONENT:
                raise MonomialOverflowError("指数溢出", {"exponents": list(exponents)})
        object.__setattr__(self, "exponents", exponents)

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def variable(cls, n: int, i: int, power: int = 1) -> "Monomial":
        """第 i 个变量（0 基）的幂"""
        exps = [0] * n
        exps[i] = power
        return cls(tuple(exps))

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    @property
    def is_one(self) -> bool:
        return not any(self.exponents)

    def __getitem__(self, i: int) -> int:
        return self.exponents[i]

    def _check_arity(self, other: "Monomial"):
        if self.n != other.n:
            raise ContextMismatchError("单项式变量个数不一致", {"left": self.n, "right": other.n})

    def __mul__(self, other: "Monomial") -> "Monomial":
        self._check_arity(other)
        exps = tuple(a + b for a, b in zip(self.exponents, other.exponents))
        if any(e > MAX_EXPONENT for e in exps):
            raise MonomialOverflowError("单项式乘法溢出", {"left": list(self.exponents), "right": list(other.exponents)})
        return Monomial(exps)

    def times_variable(self, i: int, power: int = 1) -> "Monomial":
        return self * Monomial.variable(self.n, i, power)

    def divides(self, other: "Monomial") -> bool:
        self._check_arity(other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def lcm(self, other: "Monomial") -> "Monomial":
        self._check_arity(other)
        return Monomial(tuple(max(a, b) for a, b in zip(self.exponents, other.exponents)))

    def gcd(self, other: "Monomial") -> "Monomial":
        self._check_arity(other)
        return Monomial(tuple(min(a, b) for a, b in zip(self.exponents, other.exponents)))

    def support(self) -> List[int]:
        """指数为正的变量下标"""
        return [i for i, e in enumerate(self.exponents) if e > 0]

    def to_text(self, context: Optional[VariableContext] = None) -> str:
        """文本形式，如 x3^3*x1^2；按优先级从高到低输出变量"""
        context = context or VariableContext.standard(self.n)
        parts = []
        for i in context.precedence:
            e = self.exponents[i]
            if e == 1:
                parts.append(context.names[i])
            elif e > 1:
                parts.append(f"{context.names[i]}^{e}")
        return "*".join(parts) if parts else "1"

    def __str__(self) -> str:
        return self.to_text()


def quotient(u: Monomial, w: Monomial) -> Monomial:
    """返回 v 使得 w = u·v"""
    if not u.divides(w):
        raise NotDivisibleError(
            f"{u} 不整除 {w}",
            {"divisor": list(u.exponents), "dividend": list(w.exponents)},
        )
    return Monomial(tuple(b - a for a, b in zip(u.exponents, w.exponents)))


@dataclass(frozen=True)
class WeightMatrix:
    """权重矩阵，rows[k][i] 为变量 x_{i+1} 在第 k 行的权重"""
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(c) for c in row) for row in self.rows)
        if not rows:
            raise ValueError("权重矩阵至少需要一行")
        width = len(rows[0])
        for row in rows:
            if len(row) != width:
                raise ValueError("权重矩阵各行长度必须一致")
            if any(c < 0 for c in row):
                raise ValueError("权重必须为非负整数")
        object.__setattr__(self, "rows", rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])

    def weights(self, u: Monomial) -> Tuple[int, ...]:
        """Γ_k(u) = Σ_i α_i C_{k,i}"""
        if u.n != self.n:
            raise ContextMismatchError("权重矩阵与单项式变量个数不一致", {"weights": self.n, "monomial": u.n})
        return tuple(sum(a * c for a, c in zip(u.exponents, row)) for row in self.rows)


class OrderKind(str, Enum):
    """单项式序类型"""
    LEX = "lex"
    DEGLEX = "deglex"
    WEIGHT = "weight"


class Comparison(IntEnum):
    """比较结果"""
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class MonomialOrder:
    """单项式序；weight 序先比较总次数，再比较各行权重，最后用 deglex 决胜"""
    context: VariableContext
    kind: OrderKind = OrderKind.DEGLEX
    weights: Optional[WeightMatrix] = None
    _cache: Dict[Monomial, tuple] = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if isinstance(self.kind, str) and not isinstance(self.kind, OrderKind):
            object.__setattr__(self, "kind", OrderKind(self.kind.lower()))
        if self.kind == OrderKind.WEIGHT:
            if self.weights is None:
                raise ValueError("weight 序需要权重矩阵")
            if self.weights.n != self.context.n:
                raise ContextMismatchError("权重矩阵列数与变量个数不一致",
                                           {"weights": self.weights.n, "variables": self.context.n})

    def lex_key(self, u: Monomial) -> Tuple[int, ...]:
        return tuple(u.exponents[i] for i in self.context.precedence)

    def key(self, u: Monomial) -> tuple:
        """排序键：键越大单项式越大"""
        cached = self._cache.get(u)
        if cached is not None:
            return cached
        if u.n != self.context.n:
            raise ContextMismatchError("单项式与序的变量个数不一致", {"order": self.context.n, "monomial": u.n})
        if self.kind == OrderKind.LEX:
            result = self.lex_key(u)
        elif self.kind == OrderKind.DEGLEX:
            result = (u.degree,) + self.lex_key(u)
        else:
            result = (u.degree,) + self.weights.weights(u) + self.lex_key(u)
        self._cache[u] = result
        return result

    def sorted(self, monomials: Iterable[Monomial], descending: bool = False) -> List[Monomial]:
        return sorted(monomials, key=self.key, reverse=descending)

    def max(self, monomials: Iterable[Monomial]) -> Monomial:
        return max(monomials, key=self.key)

    def min(self, monomials: Iterable[Monomial]) -> Monomial:
        return min(monomials, key=self.key)


def compare(order: MonomialOrder, u: Monomial, v: Monomial) -> Comparison:
    """按给定单项式序比较 u 与 v"""
    ku, kv = order.key(u), order.key(v)
    if ku < kv:
        return Comparison.LESS
    if ku > kv:
        return Comparison.GREATER
    return Comparison.EQUAL


def gamma(n: int, p: int) -> int:
    """n 个变量的 p 次单项式个数 Γ_n^p"""
    if n < 1:
        raise ValueError("变量个数必须为正")
    if p < 0:
        return 0
    return math.comb(p + n - 1, n - 1)


def monomials_of_degree(n: int, p: int) -> Iterator[Monomial]:
    """枚举 n 个变量的全部 p 次单项式"""
    if p < 0:
        return
    if n == 1:
        yield Monomial((p,))
        return
    for first in range(p, -1, -1):
        for rest in monomials_of_degree(n - 1, p - first):
            yield Monomial((first,) + rest.exponents)


def monomials_up_to_degree(n: int, d: int) -> Iterator[Monomial]:
    """枚举次数不超过 d 的全部单项式"""
    for p in range(d + 1):
        yield from monomials_of_degree(n, p)


def minimal_generators(U: Iterable[Monomial]) -> FrozenSet[Monomial]:
    """极小生成元：去掉所有是其它元素倍式的单项式"""
    kept: List[Monomial] = []
    for u in sorted(set(U), key=lambda m: (m.degree, m.exponents)):
        if not any(v.divides(u) for v in kept):
            kept.append(u)
    return frozenset(kept)


def cone_contains(U: Iterable[Monomial], w: Monomial) -> bool:
    """w 是否属于 U 生成的锥（单项式理想）"""
    return any(u.divides(w) for u in U)


def stratified_cone_contains(U: Iterable[Monomial], w: Monomial, context: VariableContext) -> bool:
    """
    按最高优先级变量分层的归纳构造判定锥成员，作为 cone_contains 的独立对照

    对最高变量 y，记 d 为 U 中 y 的最高次数；w 中 y 的次数截断为 k = min(deg_y(w), d)，
    再在其余变量上对 U'_k = {u : deg_y(u) <= k} 递归判定
    """
    return _stratified(list(U), w, context.precedence)


def _stratified(U: List[Monomial], w: Monomial, variables: Tuple[int, ...]) -> bool:
    if not U:
        return False
    if not variables:
        return True
    y, rest = variables[0], variables[1:]
    d = max(u[y] for u in U)
    k = min(w[y], d)
    return _stratified([u for u in U if u[y] <= k], w, rest)
