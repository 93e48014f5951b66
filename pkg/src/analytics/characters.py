#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
齐次分量 I_p 的特征数 σ_h 与对合判定

σ_1+…+σ_h = dim(I_p + Σ_{i≤h} K[x]_{p−1}·y_i) − dim I_p，
y_1, y_2, … 为按优先级从高到低排列的变量；
σ′、σ″ 为导出系统 J_{p+1} = K[x]_1·I_p、J_{p+2} = K[x]_2·I_p 的特征数
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from loguru import logger

from src.algebra.linear import span_rank
from src.algebra.monomials import Monomial, VariableContext, gamma, monomials_of_degree
from src.algebra.polynomials import Polynomial, PolynomialRing
from src.analytics.hilbert import Generator, component_vectors
from src.errors import EmptyInputError


def _as_polynomials(gens: Sequence[Generator], context: VariableContext) -> List[Polynomial]:
    ring = PolynomialRing.standard(context.n)
    return [ring.monomial(g) if isinstance(g, Monomial) else g for g in gens]


def _characters_of_space(vectors: List[Dict[Monomial, Fraction]], context: VariableContext,
                         p: int) -> Tuple[int, Tuple[int, ...]]:
    """(dim V, (σ_1..σ_n))，V 为 p 次分量中的子空间"""
    basis = list(monomials_of_degree(context.n, p))
    dim = span_rank(vectors, basis)
    sigma = []
    current = list(vectors)
    previous = dim
    for var in context.precedence:
        current.extend({w: Fraction(1)} for w in basis if w[var] > 0)
        rank = span_rank(current, basis)
        sigma.append(rank - previous)
        previous = rank
    return dim, tuple(sigma)


@dataclass
class CharacterVector:
    """p 次分量及其一、二阶导出系统的特征数"""
    p: int
    dimension: int
    sigma: Tuple[int, ...]
    sigma_prime: Tuple[int, ...]
    sigma_second: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.sigma)

    def weighted_sum(self) -> int:
        """σ_1 + 2σ_2 + … + nσ_n"""
        return sum((h + 1) * s for h, s in enumerate(self.sigma))

    def prime_sum(self) -> int:
        return sum(self.sigma_prime)

    def generic_position(self) -> bool:
        """σ 单调不增，且 I_p ≠ 0 时 σ_n = 0"""
        decreasing = all(a >= b for a, b in zip(self.sigma, self.sigma[1:]))
        return decreasing and (self.dimension == 0 or self.sigma[-1] == 0)

    def to_dict(self) -> Dict[str, object]:
        return {
            "p": self.p,
            "dimension": self.dimension,
            "sigma": list(self.sigma),
            "sigma_prime": list(self.sigma_prime),
            "sigma_second": list(self.sigma_second),
            "generic_position": self.generic_position(),
        }


def _derived_vectors(base: List[Polynomial], n: int, p: int, lam: int) -> List[Dict[Monomial, Fraction]]:
    """K[x]_λ·I_p 的张成向量"""
    vectors = []
    for v in component_vectors(base, n, p):
        for u in monomials_of_degree(n, lam):
            vectors.append({m * u: c for m, c in v.items()})
    return vectors


def characters(gens: Sequence[Generator], context: VariableContext, p: int) -> CharacterVector:
    """
    σ、σ′、σ″

    σ_k 为第 k 步补入含某变量的全部 p 次单项式后秩的增量；变量按优先级从高到低依次补入
    （默认 x_n 在前）。按 x_1 在前的约定计算时，把 context 的优先级反转即可。

    Raises:
        NotHomogeneousError: 生成元不齐次
    """
    if p < 1:
        raise EmptyInputError("特征数需要 p >= 1")
    n = context.n
    polys = _as_polynomials(gens, context)
    dim, sigma = _characters_of_space(component_vectors(polys, n, p), context, p)
    _, sigma_prime = _characters_of_space(_derived_vectors(polys, n, p, 1), context, p + 1)
    _, sigma_second = _characters_of_space(_derived_vectors(polys, n, p, 2), context, p + 2)
    logger.debug(f"p={p} 特征数 σ={sigma} σ′={sigma_prime} σ″={sigma_second}")
    return CharacterVector(p, dim, sigma, sigma_prime, sigma_second)


@dataclass
class InvolutionReport:
    """对合判定：σ′ 之和与 σ 的加权和，以及对合时的两条传递关系"""
    characters: CharacterVector
    prime_sum: int
    weighted_sum: int
    in_involution: bool
    inequality_holds: bool
    second_relation: bool = True
    propagation: bool = True
    notes: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.in_involution

    def to_dict(self) -> Dict[str, object]:
        return {
            "characters": self.characters.to_dict(),
            "prime_sum": self.prime_sum,
            "weighted_sum": self.weighted_sum,
            "in_involution": self.in_involution,
            "inequality_holds": self.inequality_holds,
            "second_relation": self.second_relation,
            "propagation": self.propagation,
        }


def is_in_involution(gens: Sequence[Generator], context: VariableContext, p: int) -> InvolutionReport:
    """σ′_1+…+σ′_n 与 σ_1+2σ_2+…+nσ_n 比较；相等时核对 σ″ 关系与 σ′_h = σ_h+…+σ_n"""
    chars = characters(gens, context, p)
    prime_sum = chars.prime_sum()
    weighted = chars.weighted_sum()
    report = InvolutionReport(chars, prime_sum, weighted, prime_sum == weighted, prime_sum <= weighted)
    if report.in_involution:
        second_sum = sum(chars.sigma_second)
        prime_weighted = sum((h + 1) * s for h, s in enumerate(chars.sigma_prime))
        report.second_relation = second_sum == prime_weighted
        report.propagation = all(chars.sigma_prime[h] == sum(chars.sigma[h:]) for h in range(chars.n))
        if not (report.second_relation and report.propagation):
            report.notes.append("对合时的传递关系不成立")
            logger.warning(f"p={p} 处于对合但传递关系不成立: σ={chars.sigma} σ′={chars.sigma_prime}")
    return report


def predicted_characteristic(chars: CharacterVector, big_p: int) -> int:
    """对合时 χ(P) = Σ_{i<n} C(P−p+i−1, i−1)·σ_i，P ≥ p"""
    if big_p < chars.p:
        raise ValueError("P 必须不小于 p")
    if chars.n == 1:
        return chars.sigma[0]
    return sum(math.comb(big_p - chars.p + i - 1, i - 1) * chars.sigma[i - 1] for i in range(1, chars.n))


def codimension(chars: CharacterVector) -> int:
    """σ 之和即 I_p 的余维数"""
    return gamma(chars.n, chars.p) - chars.dimension
