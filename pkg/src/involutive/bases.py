#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
多项式对合基
对合约化与正规形、对合自约化、对合完备化、对合分解证书、理想成员判定与 Gröbner 认证
"""
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from loguru import logger

from src.algebra.monomials import Monomial, MonomialOrder, quotient
from src.algebra.polynomials import (GroebnerCheck, Polynomial, ReductionStep, ReductionTrace,
                                     _axpy, is_groebner_basis, reducer_order)
from src.errors import CapExceededError, NotInSetError, ZeroPolynomialError
from src.involutive.divisions import DivisionKind, InvolutiveDivision, MultiplicativePartition


def _reorder(polys: Sequence[Polynomial], order: Optional[MonomialOrder]) -> List[Polynomial]:
    polys = list(polys)
    if order is None or not polys or polys[0].ring.order == order:
        return polys
    ring = polys[0].ring.with_order(order)
    return [p.with_ring(ring) for p in polys]


def leading_monomials(G: Iterable[Polynomial]) -> FrozenSet[Monomial]:
    return frozenset(g.LM for g in G if g)


def poly_mult_vars(division: InvolutiveDivision, F: Sequence[Polynomial], f: Polynomial,
                   order: Optional[MonomialOrder] = None) -> MultiplicativePartition:
    """多项式 f 相对 F 的乘性变量：在首单项式上计算"""
    F = _reorder(F, order)
    f = _reorder([f], order)[0]
    if not f:
        raise ZeroPolynomialError("零多项式没有乘性变量")
    if f not in F:
        raise NotInSetError(f"{f} 不在集合中", {"polynomial": f.to_text()})
    return division.partition(leading_monomials(F), f.LM)


def inv_normal_form(division: InvolutiveDivision, f: Polynomial, G: Sequence[Polynomial],
                    order: Optional[MonomialOrder] = None, selection: str = "greatest",
                    rng: Optional[random.Random] = None) -> ReductionTrace:
    """
    对合正规形

    Args:
        selection: "greatest" 总是先约化序最大的可约项；"random" 随机挑选可约项（用于唯一性检验）

    Returns:
        ReductionTrace，余式相对 G 对合不可约
    """
    G = _reorder(G, order)
    f = _reorder([f], order)[0]
    for g in G:
        if not g:
            raise ZeroPolynomialError("约化子集合中含零多项式")
    U = leading_monomials(G)
    table = division.table(U)
    by_lm: Dict[Monomial, int] = {}
    for k in reducer_order(G):
        by_lm.setdefault(G[k].LM, k)
    key = f.order.key
    acc = f.as_dict()
    remainder: Dict[Monomial, Fraction] = {}
    steps: List[ReductionStep] = []

    def reduce_term(m: Monomial, v: Monomial):
        k = by_lm[v]
        cofactor = quotient(v, m)
        coef = acc[m] / G[k].LC
        _axpy(acc, G[k], cofactor, coef)
        steps.append(ReductionStep(k, cofactor, coef))

    if selection == "greatest":
        while acc:
            m = max(acc, key=key)
            v = division.divisor(U, m, table)
            if v is None:
                remainder[m] = acc.pop(m)
            else:
                reduce_term(m, v)
    elif selection == "random":
        rng = rng or random.Random(0)
        while True:
            reducible = [(m, division.divisor(U, m, table)) for m in sorted(acc, key=key)]
            reducible = [(m, v) for m, v in reducible if v is not None]
            if not reducible:
                break
            m, v = rng.choice(reducible)
            reduce_term(m, v)
        remainder = acc
    else:
        raise ValueError(f"未知的约化策略: {selection}")
    return ReductionTrace(f, steps, Polynomial._raw(f.ring, dict(remainder)))


def _is_reducible_by_others(division: InvolutiveDivision, h_index: int, H: List[Polynomial],
                            table: Dict[Monomial, FrozenSet[int]]) -> bool:
    h = H[h_index]
    others = [g for k, g in enumerate(H) if k != h_index]
    for t in h.monomials():
        for g in others:
            if division.divides(g.LM, t, table[g.LM]):
                return True
    return False


def inv_autoreduce(division: InvolutiveDivision, G: Sequence[Polynomial],
                   order: Optional[MonomialOrder] = None) -> List[Polynomial]:
    """对合自约化：反复用其余元素对可约元素求对合正规形"""
    H = []
    for g in _reorder(G, order):
        if g and g not in H:
            H.append(g)
    while True:
        table = division.table(leading_monomials(H))
        ranked = sorted(range(len(H)), key=lambda k: H[k].sort_key(), reverse=True)
        target = next((k for k in ranked if _is_reducible_by_others(division, k, H, table)), None)
        if target is None:
            return H
        h = H[target]
        rest = [g for k, g in enumerate(H) if k != target]
        reduced = inv_normal_form(division, h, rest).remainder
        logger.debug(f"对合自约化: {h} -> {reduced}")
        H = rest + ([reduced] if reduced and reduced not in rest else [])


def is_involutive_basis(division: InvolutiveDivision, G: Sequence[Polynomial]) -> bool:
    """局部对合性：每个非乘性延拓都对合约化为 0"""
    G = [g for g in G if g]
    table = division.table(leading_monomials(G))
    for g in G:
        for x in range(g.ring.n):
            if x in table[g.LM]:
                continue
            if inv_normal_form(division, g.mul_term(Monomial.variable(g.ring.n, x)), G).remainder:
                return False
    return True


@dataclass
class ProlongationCertificate:
    """非乘性延拓 g·x 对合约化为 0 的证书"""
    generator: int
    variable: int
    trace: ReductionTrace


@dataclass
class InvolutiveBasisResult:
    """对合基及其证书"""
    basis: List[Polynomial]
    division: InvolutiveDivision
    order: MonomialOrder
    certificates: List[ProlongationCertificate] = field(default_factory=list)
    groebner: Optional[GroebnerCheck] = None
    iterations: int = 0

    @property
    def scheme(self) -> DivisionKind:
        return self.division.kind

    def leading_monomials(self) -> FrozenSet[Monomial]:
        return leading_monomials(self.basis)

    def multiplicative_table(self) -> List[MultiplicativePartition]:
        table = self.division.table(self.leading_monomials())
        full = frozenset(range(self.order.context.n))
        return [MultiplicativePartition(g.LM, table[g.LM], full - table[g.LM]) for g in self.basis]

    def verify_certificates(self) -> bool:
        """每个证书精确重放且余式为 0"""
        for cert in self.certificates:
            g = self.basis[cert.generator]
            expected = g.mul_term(Monomial.variable(g.ring.n, cert.variable))
            if cert.trace.source != expected or cert.trace.remainder:
                return False
            if not cert.trace.verify(self.basis):
                return False
        return True


def involutive_completion(F: Sequence[Polynomial], division: InvolutiveDivision,
                          order: Optional[MonomialOrder] = None, max_degree: int = 50,
                          max_iterations: int = 500) -> InvolutiveBasisResult:
    """
    对合完备化：取首单项式最小的非乘性延拓，求对合正规形，非零则加入并自约化

    Raises:
        CapExceededError: 新元素次数或迭代次数超过上限
    """
    F = [f for f in _reorder(F, order) if f]
    if not F:
        ring_order = order
        if ring_order is None:
            raise ValueError("空输入需要显式给出单项式序")
        return InvolutiveBasisResult([], division, ring_order)
    ring = F[0].ring
    context = ring.context
    key = ring.order.key

    current = inv_autoreduce(division, F)
    iterations = 0
    while True:
        iterations += 1
        if iterations > max_iterations:
            raise CapExceededError(f"对合完备化迭代次数超过上限 {max_iterations}",
                                   {"max_iterations": max_iterations})
        table = division.table(leading_monomials(current))
        prolongations: List[Tuple[tuple, Polynomial]] = []
        for idx, g in enumerate(current):
            for x in context.precedence:
                if x in table[g.LM]:
                    continue
                p = g.mul_term(Monomial.variable(context.n, x))
                prolongations.append(((key(p.LM), idx, context.rank(x)), p))
        prolongations.sort(key=lambda item: item[0])
        found = None
        for _, p in prolongations:
            r = inv_normal_form(division, p, current).remainder
            if r:
                found = r
                break
        if found is None:
            break
        if found.LM.degree > max_degree:
            raise CapExceededError(f"对合完备化中新元素次数超过上限 {max_degree}",
                                   {"lm": found.LM.to_text(context), "max_degree": max_degree})
        logger.debug(f"对合完备化第 {iterations} 轮加入 lm={found.LM.to_text(context)}")
        current = inv_autoreduce(division, current + [found])

    basis = sorted((g.monic() for g in current), key=lambda g: key(g.LM), reverse=True)
    table = division.table(leading_monomials(basis))
    certificates = []
    for idx, g in enumerate(basis):
        for x in context.precedence:
            if x in table[g.LM]:
                continue
            trace = inv_normal_form(division, g.mul_term(Monomial.variable(context.n, x)), basis)
            certificates.append(ProlongationCertificate(idx, x, trace))
    result = InvolutiveBasisResult(basis, division, ring.order, certificates,
                                   is_groebner_basis(basis), iterations)
    logger.info(f"对合基计算完成: {len(basis)} 个元素，{iterations} 轮")
    return result


@dataclass
class InvolutiveDecomposition:
    """f = Σ c·v·G[i]，v 只含 G[i] 的乘性变量"""
    source: Polynomial
    generators: List[Polynomial]
    terms: List[Tuple[int, Monomial, Fraction]]

    def replay(self) -> Polynomial:
        total = self.source.ring.zero()
        for i, v, c in self.terms:
            total = total + self.generators[i].mul_term(v, c)
        return total

    def reducers(self) -> List[int]:
        return sorted({i for i, _, _ in self.terms})


def involutive_decomposition(f: Polynomial, G: Sequence[Polynomial], division: InvolutiveDivision,
                             order: Optional[MonomialOrder] = None) -> Optional[InvolutiveDecomposition]:
    """对合正规形为 0 时给出显式分解，否则返回 None"""
    G = _reorder(G, order)
    trace = inv_normal_form(division, f, G, order)
    if trace.remainder:
        return None
    merged: Dict[Tuple[int, Monomial], Fraction] = {}
    for step in trace.steps:
        k = (step.reducer, step.cofactor)
        merged[k] = merged.get(k, Fraction(0)) + step.coefficient
    terms = [(i, v, c) for (i, v), c in merged.items() if c]
    return InvolutiveDecomposition(trace.source, list(G), terms)


def membership(f: Polynomial, B: InvolutiveBasisResult) -> bool:
    """f ∈ ⟨B⟩ 当且仅当对合正规形为 0"""
    if not B.basis:
        return f.is_zero()
    return inv_normal_form(B.division, f, B.basis, B.order).remainder.is_zero()
