#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
导数与单项式的对应，以及导数上的序
D^α φ^r 记作 DerivativeKey(alpha, r)，r 为未知函数的 0 基下标
"""
import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence, Tuple

from src.algebra.monomials import Comparison, Monomial, MonomialOrder, VariableContext, WeightMatrix
from src.errors import ContextMismatchError, ParseError


@dataclass(frozen=True)
class DerivativeKey:
    """导数 D^α φ^r"""
    alpha: Monomial
    r: int = 0

    @property
    def order(self) -> int:
        return self.alpha.degree

    def shifted(self, gamma: Monomial) -> "DerivativeKey":
        return DerivativeKey(self.alpha * gamma, self.r)

    def to_text(self, unknowns: Sequence[str]) -> str:
        """d[a1,...,an] u 形式"""
        return f"d[{','.join(str(a) for a in self.alpha.exponents)}] {unknowns[self.r]}"

    def jet_name(self, unknowns: Sequence[str]) -> str:
        """p 记号：p211 表示对 x2 一次、x1 两次求导（变量多于 9 个时退回 d[...] 形式）"""
        if self.alpha.n > 9:
            return self.to_text(unknowns)
        digits = "".join(str(i + 1) * self.alpha[i] for i in range(self.alpha.n - 1, -1, -1))
        name = f"p{digits}" if digits else unknowns[self.r]
        if len(unknowns) > 1 and digits:
            return f"{unknowns[self.r]}_{name}"
        return name


class DerivativeOrderKind(str, Enum):
    """导数序类型"""
    JANET_DEGLEX = "janet_deglex"
    WEIGHT = "weight"
    CANONICAL_WEIGHT = "canonical_weight"


@dataclass(frozen=True)
class DerivativeOrderSpec:
    """
    导数上的序

    - janet_deglex：先比阶数，再按优先级比较 α_n−β_n, α_{n−1}−β_{n−1}, …，最后比函数下标
    - weight：先比阶数，再比 Γ_k(α) + T_k^{(r)}，再 deglex 决胜
    - canonical_weight：阶数行、函数下标行，其后按优先级的单位行
    """
    context: VariableContext
    n_functions: int = 1
    kind: DerivativeOrderKind = DerivativeOrderKind.JANET_DEGLEX
    weights: Optional[WeightMatrix] = None
    function_weights: Tuple[Tuple[int, ...], ...] = ()

    def __post_init__(self):
        if isinstance(self.kind, str) and not isinstance(self.kind, DerivativeOrderKind):
            object.__setattr__(self, "kind", DerivativeOrderKind(self.kind))
        if self.n_functions < 1:
            raise ValueError("未知函数个数必须为正")
        if self.kind == DerivativeOrderKind.WEIGHT:
            if self.weights is None:
                raise ValueError("weight 导数序需要权重矩阵")
            if self.weights.n != self.context.n:
                raise ContextMismatchError("权重矩阵列数与变量个数不一致",
                                           {"weights": self.weights.n, "variables": self.context.n})
            rows = len(self.weights.rows)
            fw = tuple(tuple(row) for row in self.function_weights) or tuple((0,) * rows for _ in range(self.n_functions))
            if len(fw) != self.n_functions or any(len(row) != rows for row in fw):
                raise ValueError("函数权重必须为每个未知函数给出与权重矩阵行数相同的权重")
            object.__setattr__(self, "function_weights", fw)

    def key(self, k: DerivativeKey) -> tuple:
        alpha = k.alpha
        lex = tuple(alpha[i] for i in self.context.precedence)
        if self.kind == DerivativeOrderKind.JANET_DEGLEX:
            return (alpha.degree,) + lex + (k.r,)
        if self.kind == DerivativeOrderKind.WEIGHT:
            gammas = tuple(g + t for g, t in zip(self.weights.weights(alpha), self.function_weights[k.r]))
            return (alpha.degree,) + gammas + lex + (k.r,)
        return (alpha.degree, k.r + 1) + lex

    def monomial_order(self) -> MonomialOrder:
        """只看 α 时使用的单项式序"""
        if self.kind == DerivativeOrderKind.WEIGHT:
            return MonomialOrder(self.context, "weight", self.weights)
        return MonomialOrder(self.context, "deglex")


def compare_derivatives(spec: DerivativeOrderSpec, k1: DerivativeKey, k2: DerivativeKey) -> Comparison:
    if k1.alpha.n != k2.alpha.n:
        raise ContextMismatchError("导数的变量个数不一致", {"left": k1.alpha.n, "right": k2.alpha.n})
    a, b = spec.key(k1), spec.key(k2)
    if a < b:
        return Comparison.LESS
    if a > b:
        return Comparison.GREATER
    return Comparison.EQUAL


IDENTITY_OPERATOR = "id"


def phi(u: Monomial, context: VariableContext) -> str:
    """x^α -> ∂^{|α|}/∂x^α，变量按下标顺序书写"""
    if u.is_one:
        return IDENTITY_OPERATOR
    parts = []
    for i in range(u.n):
        e = u[i]
        if e == 1:
            parts.append(f"∂{context.names[i]}")
        elif e > 1:
            parts.append(f"∂{context.names[i]}^{e}")
    head = "∂" if u.degree == 1 else f"∂^{u.degree}"
    return f"{head}/{''.join(parts)}"


_OPERATOR = re.compile(r"^∂(?:\^(\d+))?/(.+)$")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*?)(?:\^(\d+))?$")


def phi_inv(text: str, context: VariableContext) -> Monomial:
    """phi 的逆"""
    text = text.strip()
    if text == IDENTITY_OPERATOR:
        return Monomial.one(context.n)
    match = _OPERATOR.match(text)
    if not match:
        raise ParseError(f"无法解析的导数算子: {text}", text=text)
    exps = [0] * context.n
    pieces = match.group(2).split("∂")
    if pieces[0] != "":
        raise ParseError(f"无法解析的导数算子: {text}", text=text)
    for piece in pieces[1:]:
        factor = _FACTOR.match(piece)
        if not factor or factor.group(1) not in context.names:
            raise ParseError(f"无法解析的求导变量: {piece}", text=text)
        exps[context.names.index(factor.group(1))] += int(factor.group(2) or 1)
    u = Monomial(tuple(exps))
    declared = int(match.group(1) or 1)
    if u.is_one or declared != u.degree:
        raise ParseError(f"导数阶数与变量次数不符: {text}", text=text)
    return u
