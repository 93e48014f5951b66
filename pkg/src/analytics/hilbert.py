#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
特征函数 χ(p) = Γ_n^p − dim I_p
单项式理想按锥计数，齐次多项式理想按 p 次分量系数矩阵的精确秩计算；
尾部 n 阶差分为零后用 sympy 插值得到稳定多项式，并读出 (λ, μ)
"""
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from loguru import logger
from sympy import Poly, Rational, Symbol, interpolate

from src.algebra.linear import span_rank
from src.algebra.monomials import (Monomial, MonomialOrder, VariableContext, cone_contains, gamma,
                                   minimal_generators, monomials_of_degree)
from src.algebra.polynomials import Polynomial, PolynomialRing
from src.errors import EmptyInputError, NotHomogeneousError, RangeTooSmallError
from src.involutive.divisions import JanetDivision
from src.involutive.monomial_completion import complementary_monomials, complete_set

Generator = Union[Monomial, Polynomial]
P = Symbol("p")


def as_monomials(gens: Sequence[Generator]) -> Optional[List[Monomial]]:
    """生成元全为单项式（或单项多项式）时返回单项式列表，否则 None"""
    result = []
    for g in gens:
        if isinstance(g, Monomial):
            result.append(g)
        elif g.is_zero():
            continue
        elif g.is_monomial():
            result.append(g.LM)
        else:
            return None
    return result


def _check_homogeneous(gens: Sequence[Polynomial]) -> List[Polynomial]:
    kept = []
    for g in gens:
        if g.is_zero():
            continue
        if not g.is_homogeneous():
            raise NotHomogeneousError(f"生成元不是齐次多项式: {g.to_text()}", {"generator": g.to_text()})
        kept.append(g)
    return kept


def component_vectors(gens: Sequence[Polynomial], n: int, p: int) -> List[Dict[Monomial, Fraction]]:
    """张成 I_p 的向量：所有 u·g，deg u = p − deg g"""
    vectors = []
    for g in _check_homogeneous(gens):
        d = g.degree
        if d > p:
            continue
        for u in monomials_of_degree(n, p - d):
            vectors.append(g.mul_term(u).as_dict())
    return vectors


def component_dimension(gens: Sequence[Generator], n: int, p: int) -> int:
    """dim I_p"""
    monos = as_monomials(gens)
    if monos is not None:
        mins = minimal_generators(monos)
        return sum(1 for w in monomials_of_degree(n, p) if cone_contains(mins, w))
    return span_rank(component_vectors(gens, n, p), list(monomials_of_degree(n, p)))


def rank_dimension(gens: Sequence[Generator], n: int, p: int) -> int:
    """dim I_p，总是走秩计算（单项式生成元也一样）"""
    polys = [g for g in gens if isinstance(g, Polynomial)]
    for g in gens:
        if isinstance(g, Monomial):
            polys.append(PolynomialRing.standard(n).monomial(g))
    return span_rank(component_vectors(polys, n, p), list(monomials_of_degree(n, p)))


@dataclass
class CharacteristicProfile:
    """χ(p) 的取值、稳定多项式与 (λ, μ)"""
    n: int
    values: Dict[int, int]
    dimensions: Dict[int, int]
    stabilized: Optional[Poly] = None
    stable_from: Optional[int] = None
    lambda_: int = 0
    mu: int = 0

    def polynomial_text(self) -> Optional[str]:
        if self.stabilized is None:
            return None
        return str(self.stabilized.as_expr())

    def evaluate(self, p: int) -> int:
        if self.stabilized is None:
            raise RangeTooSmallError("尚未得到稳定多项式")
        return int(self.stabilized.eval(p))

    def to_dict(self) -> Dict[str, object]:
        return {
            "values": {str(p): v for p, v in sorted(self.values.items())},
            "dimensions": {str(p): v for p, v in sorted(self.dimensions.items())},
            "stabilized": self.polynomial_text(),
            "stable_from": self.stable_from,
            "lambda": self.lambda_,
            "mu": self.mu,
        }


def _finite_difference(values: Sequence[int], order: int, start: int) -> int:
    return sum((-1) ** (order - k) * math.comb(order, k) * values[start + k] for k in range(order + 1))


def _stabilize(values: Dict[int, int], n: int, points: int) -> Tuple[Poly, int]:
    """
    找最小的 p0，使得从 p0 起尾部所有 n 阶差分为零且至少有 points 个；
    在 [p0, p_max] 上插值并逐点核对
    """
    ps = sorted(values)
    seq = [values[p] for p in ps]
    last_start = len(seq) - n - 1
    if last_start < 0:
        raise RangeTooSmallError("取值点不足以计算 n 阶差分", {"points": len(seq), "order": n})
    zero = [_finite_difference(seq, n, s) == 0 for s in range(last_start + 1)]
    start = last_start + 1
    while start > 0 and zero[start - 1]:
        start -= 1
    if last_start + 1 - start < points:
        raise RangeTooSmallError(
            f"稳定性无法判定：尾部只有 {last_start + 1 - start} 个零差分，需要 {points} 个",
            {"p_max": ps[-1], "required_points": points},
        )
    tail = [(ps[k], values[ps[k]]) for k in range(start, len(ps))]
    poly = Poly(interpolate([(Rational(p), Rational(v)) for p, v in tail], P), P)
    for p, v in tail:
        if poly.eval(p) != v:
            raise RangeTooSmallError("插值多项式与尾部取值不符", {"p": p})
    return poly, ps[start]


def characteristic_function(gens: Sequence[Generator], n: int, p_max: int = 12,
                            p_min: int = 0, stabilization_points: int = 3) -> CharacteristicProfile:
    """
    χ(p)，p ∈ [p_min, p_max]

    Raises:
        NotHomogeneousError: 多项式生成元不齐次
        RangeTooSmallError: 范围内无法判定稳定
    """
    if n < 1:
        raise EmptyInputError("变量个数必须为正")
    values: Dict[int, int] = {}
    dims: Dict[int, int] = {}
    for p in range(p_min, p_max + 1):
        dims[p] = component_dimension(gens, n, p)
        values[p] = gamma(n, p) - dims[p]
    poly, stable_from = _stabilize(values, n, stabilization_points)
    profile = CharacteristicProfile(n, values, dims, poly, stable_from)
    if not poly.is_zero:
        degree = poly.degree()
        profile.lambda_ = degree + 1
        profile.mu = int(poly.LC() * math.factorial(degree))
    logger.debug(f"χ 稳定于 p>={stable_from}: {profile.polynomial_text()}，λ={profile.lambda_}，μ={profile.mu}")
    return profile


def _completed(U: Sequence[Monomial], context: VariableContext) -> FrozenSet[Monomial]:
    mins = minimal_generators(U)
    if not mins:
        return mins
    return complete_set(JanetDivision(context), mins, MonomialOrder(context)).monomials


def generality_from_complementary(U: Sequence[Monomial], context: VariableContext) -> Tuple[int, int]:
    """由完备化后的补单项式读出 (λ, μ)：最大补乘性变量个数及达到它的补单项式个数"""
    completed = _completed(U, context)
    if not completed:
        return context.n, 1
    return complementary_monomials(completed, context).generality()


def complementary_count(U: Sequence[Monomial], context: VariableContext, p: int) -> int:
    """补锥中 p 次单项式个数 Σ_c C(p − deg c + k − 1, k − 1)，k 为补乘性变量个数"""
    completed = _completed(U, context)
    if not completed:
        return gamma(context.n, p)
    total = 0
    for c, part in complementary_monomials(completed, context).assignments.items():
        k = len(part.mult)
        rest = p - c.degree
        if rest < 0:
            continue
        if k == 0:
            total += rest == 0
        else:
            total += math.comb(rest + k - 1, k - 1)
    return total
