#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
稀疏多元多项式模块
有理系数（Fraction）、经典约化及其迹、S-多项式、作为正确性对照的 Buchberger 算法
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

from loguru import logger

from src.algebra.monomials import Monomial, MonomialOrder, VariableContext, quotient
from src.errors import CapExceededError, ContextMismatchError, ZeroInputError, ZeroPolynomialError

Scalar = Union[int, Fraction]


@dataclass(frozen=True)
class PolynomialRing:
    """多项式环 K[x_1..x_n]，带一个单项式序"""
    context: VariableContext
    order: MonomialOrder

    @classmethod
    def standard(cls, n: int, kind: str = "deglex") -> "PolynomialRing":
        context = VariableContext.standard(n)
        return cls(context, MonomialOrder(context, kind))

    @property
    def n(self) -> int:
        return self.context.n

    def zero(self) -> "Polynomial":
        return Polynomial(self)

    def one(self) -> "Polynomial":
        return Polynomial(self, {Monomial.one(self.n): 1})

    def constant(self, c: Scalar) -> "Polynomial":
        return Polynomial(self, {Monomial.one(self.n): c})

    def gen(self, i: int) -> "Polynomial":
        """第 i 个变量（0 基）"""
        return Polynomial(self, {Monomial.variable(self.n, i): 1})

    def monomial(self, m: Monomial, c: Scalar = 1) -> "Polynomial":
        return Polynomial(self, {m: c})

    def with_order(self, order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(order.context, order)


class Polynomial:
    """多项式：单项式 -> 非零有理系数"""
    __slots__ = ("ring", "_terms", "_lm")

    def __init__(self, ring: PolynomialRing, terms: Optional[Mapping[Monomial, Scalar]] = None):
        self.ring = ring
        clean: Dict[Monomial, Fraction] = {}
        for m, c in (terms or {}).items():
            if m.n != ring.n:
                raise ContextMismatchError("项的变量个数与环不一致", {"ring": ring.n, "monomial": m.n})
            c = Fraction(c)
            if c:
                clean[m] = c
        self._terms = clean
        self._lm: Optional[Monomial] = None

    @classmethod
    def _raw(cls, ring: PolynomialRing, terms: Dict[Monomial, Fraction]) -> "Polynomial":
        p = cls.__new__(cls)
        p.ring = ring
        p._terms = terms
        p._lm = None
        return p

    # ---------- 首项数据 ----------

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def LM(self) -> Monomial:
        if not self._terms:
            raise ZeroPolynomialError("零多项式没有首单项式")
        if self._lm is None:
            self._lm = max(self._terms, key=self.order.key)
        return self._lm

    @property
    def LC(self) -> Fraction:
        return self._terms[self.LM]

    @property
    def LT(self) -> Tuple[Monomial, Fraction]:
        m = self.LM
        return m, self._terms[m]

    def terms(self) -> List[Tuple[Monomial, Fraction]]:
        """按当前序从大到小排列的项"""
        return sorted(self._terms.items(), key=lambda t: self.order.key(t[0]), reverse=True)

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.terms()]

    def as_dict(self) -> Dict[Monomial, Fraction]:
        return dict(self._terms)

    def coefficient(self, m: Monomial) -> Fraction:
        return self._terms.get(m, Fraction(0))

    def __len__(self) -> int:
        return len(self._terms)

    @property
    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({m.degree for m in self._terms}) <= 1

    def is_constant(self) -> bool:
        return all(m.is_one for m in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # ---------- 算术 ----------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.n != self.ring.n:
                raise ContextMismatchError("多项式所在环不一致", {"left": self.ring.n, "right": other.ring.n})
            return other
        return self.ring.constant(other)

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            s = terms.get(m, 0) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        return Polynomial._raw(self.ring, terms)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            if not c:
                return self.ring.zero()
            return Polynomial._raw(self.ring, {m: v * c for m, v in self._terms.items()})
        other = self._coerce(other)
        terms: Dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = m1 * m2
                s = terms.get(m, 0) + c1 * c2
                if s:
                    terms[m] = s
                else:
                    terms.pop(m, None)
        return Polynomial._raw(self.ring, terms)

    __rmul__ = __mul__

    def __truediv__(self, c: Scalar) -> "Polynomial":
        return self * (1 / Fraction(c))

    def __pow__(self, k: int) -> "Polynomial":
        result = self.ring.one()
        for _ in range(k):
            result = result * self
        return result

    def mul_term(self, m: Monomial, c: Scalar = 1) -> "Polynomial":
        """乘以单项 c·m"""
        c = Fraction(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {u * m: v * c for u, v in self._terms.items()})

    def monic(self) -> "Polynomial":
        if not self._terms:
            return self
        return self * (1 / self.LC)

    def diff(self, i: int) -> "Polynomial":
        """对第 i 个变量（0 基）求形式偏导"""
        terms: Dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            e = m[i]
            if e:
                exps = list(m.exponents)
                exps[i] -= 1
                terms[Monomial(tuple(exps))] = c * e
        return Polynomial._raw(self.ring, terms)

    def with_ring(self, ring: PolynomialRing) -> "Polynomial":
        return Polynomial._raw(ring, dict(self._terms))

    # ---------- 比较与输出 ----------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring.n == other.ring.n and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def sort_key(self) -> tuple:
        """确定性排序键：先比首单项式，再逐项比较"""
        return tuple((self.order.key(m), c) for m, c in self.terms())

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for k, (m, c) in enumerate(self.terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = m.to_text(self.ring.context)
            if m.is_one:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if k == 0:
                pieces.append(body if sign == "+" else f"-{body}")
            else:
                pieces.append(f"{sign} {body}")
        return " ".join(pieces)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_text()!r})"


# ---------- 约化迹 ----------

@dataclass(frozen=True)
class ReductionStep:
    """一步约化：减去 coefficient·cofactor·G[reducer]"""
    reducer: int
    cofactor: Monomial
    coefficient: Fraction


@dataclass
class ReductionTrace:
    """约化证书：source = remainder + Σ coefficient·cofactor·G[reducer]"""
    source: Polynomial
    steps: List[ReductionStep]
    remainder: Polynomial

    def replay(self, reducers: Sequence[Polynomial]) -> Polynomial:
        total = self.remainder
        for step in self.steps:
            total = total + reducers[step.reducer].mul_term(step.cofactor, step.coefficient)
        return total

    def verify(self, reducers: Sequence[Polynomial]) -> bool:
        return self.replay(reducers) == self.source

    def reducers_used(self) -> List[int]:
        return [s.reducer for s in self.steps]


def _axpy(acc: Dict[Monomial, Fraction], g: Polynomial, cofactor: Monomial, coef: Fraction):
    """acc -= coef·cofactor·g（原地）"""
    for m, c in g._terms.items():
        mm = m * cofactor
        s = acc.get(mm, 0) - coef * c
        if s:
            acc[mm] = s
        else:
            acc.pop(mm, None)


def reducer_order(G: Sequence[Polynomial]) -> List[int]:
    """约化子的确定性顺序：按首单项式升序，再按完整项列表"""
    return sorted(range(len(G)), key=lambda k: (G[k].sort_key(), k))


def classical_reduce(f: Polynomial, G: Sequence[Polynomial], order: Optional[MonomialOrder] = None) -> ReductionTrace:
    """
    经典（非对合）完全约化

    Returns:
        ReductionTrace，余式中没有项可被任何 lm(g) 整除
    """
    if order is not None and order != f.ring.order:
        ring = f.ring.with_order(order)
        f = f.with_ring(ring)
        G = [g.with_ring(ring) for g in G]
    G = list(G)
    for g in G:
        if not g:
            raise ZeroPolynomialError("约化子集合中含零多项式")
    key = f.order.key
    ranked = reducer_order(G)
    leads = [(k, G[k].LM, G[k].LC) for k in ranked]
    acc = dict(f._terms)
    remainder: Dict[Monomial, Fraction] = {}
    steps: List[ReductionStep] = []
    while acc:
        m = max(acc, key=key)
        c = acc[m]
        for k, lm, lc in leads:
            if lm.divides(m):
                cofactor = quotient(lm, m)
                coef = c / lc
                _axpy(acc, G[k], cofactor, coef)
                steps.append(ReductionStep(k, cofactor, coef))
                break
        else:
            remainder[m] = c
            del acc[m]
    return ReductionTrace(f, steps, Polynomial._raw(f.ring, remainder))


def s_polynomial(g1: Polynomial, g2: Polynomial, order: Optional[MonomialOrder] = None) -> Polynomial:
    """S(g1, g2) = (μ/lt(g1))·g1 − (μ/lt(g2))·g2，μ = lcm(lm(g1), lm(g2))"""
    if not g1 or not g2:
        raise ZeroInputError("S-多项式的输入不能为零")
    if order is not None and order != g1.ring.order:
        ring = g1.ring.with_order(order)
        g1, g2 = g1.with_ring(ring), g2.with_ring(ring)
    mu = g1.LM.lcm(g2.LM)
    return g1.mul_term(quotient(g1.LM, mu), 1 / g1.LC) - g2.mul_term(quotient(g2.LM, mu), 1 / g2.LC)


# ---------- Buchberger ----------

Representation = Dict[int, Polynomial]


def _rep_scale(rep: Representation, m: Monomial, c: Fraction) -> Representation:
    return {k: h.mul_term(m, c) for k, h in rep.items()}


def _rep_sub(a: Representation, b: Representation) -> Representation:
    out = dict(a)
    for k, h in b.items():
        v = out[k] - h if k in out else -h
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


@dataclass
class GroebnerResult:
    """约化 Gröbner 基及其双向证书"""
    basis: List[Polynomial]
    generators: List[Polynomial]
    representations: List[Representation] = field(default_factory=list)
    input_traces: List[ReductionTrace] = field(default_factory=list)
    pairs_processed: int = 0

    def verify(self) -> bool:
        """每个基元素等于 Σ h_k·F[k]，每个输入被基约化为 0"""
        for g, rep in zip(self.basis, self.representations):
            total = g.ring.zero()
            for k, h in rep.items():
                total = total + h * self.generators[k]
            if total != g:
                return False
        return all(t.remainder.is_zero() and t.verify(self.basis) for t in self.input_traces)


def select(G: List[Polynomial], P: Set[Tuple[int, int]]) -> Tuple[int, int]:
    """normal 策略：取 lcm 最小的对"""
    key = G[0].order.key
    return min(P, key=lambda p: (key(G[p[0]].LM.lcm(G[p[1]].LM)), p))


def update(G: List[Polynomial], P: Set[Tuple[int, int]], f: Polynomial) -> Set[Tuple[int, int]]:
    """加入 f 后的新对集合（乘积判据去掉首项互素的对）"""
    lmf = f.LM
    new = {(i, len(G)) for i in range(len(G)) if G[i].LM.lcm(lmf) != G[i].LM * lmf}
    return P | new


def minimalize(G: List[Polynomial]) -> List[int]:
    """极小 Gröbner 基的下标"""
    key = G[0].order.key if G else None
    kept: List[int] = []
    for k in sorted(range(len(G)), key=lambda k: (key(G[k].LM), k)):
        if all(not G[j].LM.divides(G[k].LM) for j in kept):
            kept.append(k)
    return kept


def _buchberger(F: Iterable[Polynomial], order: Optional[MonomialOrder], max_pairs: Optional[int],
                max_degree: Optional[int], track: bool) -> GroebnerResult:
    generators = list(F)
    if order is not None:
        generators = [f if f.ring.order == order else f.with_ring(f.ring.with_order(order)) for f in generators]
    inputs = [(k, f) for k, f in enumerate(generators) if f]
    if not inputs:
        return GroebnerResult([], generators)
    ring = inputs[0][1].ring

    G: List[Polynomial] = []
    reps: List[Representation] = []
    P: Set[Tuple[int, int]] = set()

    def add(poly: Polynomial, rep: Optional[Representation]):
        nonlocal P
        c = 1 / poly.LC
        poly = poly * c
        P = update(G, P, poly)
        G.append(poly)
        if track:
            reps.append(_rep_scale(rep, Monomial.one(ring.n), c))

    for k, f in inputs:
        add(f, {k: ring.one()} if track else None)

    processed = 0
    while P:
        i, j = select(G, P)
        P.remove((i, j))
        processed += 1
        if max_pairs is not None and processed > max_pairs:
            raise CapExceededError("Buchberger 临界对数量超过上限", {"max_pairs": max_pairs})
        s = s_polynomial(G[i], G[j])
        trace = classical_reduce(s, G)
        r = trace.remainder
        if not r:
            continue
        if max_degree is not None and r.LM.degree > max_degree:
            raise CapExceededError("Buchberger 新元素次数超过上限",
                                   {"max_degree": max_degree, "lm": r.LM.to_text(ring.context)})
        logger.debug(f"Buchberger 加入新元素 lm={r.LM.to_text(ring.context)}，对 ({i}, {j})")
        rep = None
        if track:
            mu = G[i].LM.lcm(G[j].LM)
            rep = _rep_sub(_rep_scale(reps[i], quotient(G[i].LM, mu), Fraction(1)),
                           _rep_scale(reps[j], quotient(G[j].LM, mu), Fraction(1)))
            for step in trace.steps:
                rep = _rep_sub(rep, _rep_scale(reps[step.reducer], step.cofactor, step.coefficient))
        add(r, rep)

    kept = minimalize(G)
    basis: List[Polynomial] = []
    basis_reps: List[Representation] = []
    for idx in kept:
        others = [G[j] for j in kept if j != idx]
        other_idx = [j for j in kept if j != idx]
        trace = classical_reduce(G[idx], others)
        r = trace.remainder
        c = 1 / r.LC
        basis.append(r * c)
        if track:
            rep = reps[idx]
            for step in trace.steps:
                rep = _rep_sub(rep, _rep_scale(reps[other_idx[step.reducer]], step.cofactor, step.coefficient))
            basis_reps.append(_rep_scale(rep, Monomial.one(ring.n), c))

    order_key = ring.order.key
    ranked = sorted(range(len(basis)), key=lambda k: order_key(basis[k].LM), reverse=True)
    result = GroebnerResult([basis[k] for k in ranked], generators, pairs_processed=processed)
    if track:
        result.representations = [basis_reps[k] for k in ranked]
        result.input_traces = [classical_reduce(f, result.basis) for f in generators if f]
    return result


def buchberger_oracle(F: Iterable[Polynomial], order: Optional[MonomialOrder] = None,
                      max_pairs: Optional[int] = None, max_degree: Optional[int] = None) -> List[Polynomial]:
    """约化 Gröbner 基（首一、按首单项式降序）；order 缺省时沿用输入多项式所在环的序"""
    return _buchberger(F, order, max_pairs, max_degree, track=False).basis


def groebner_with_certificate(F: Iterable[Polynomial], order: Optional[MonomialOrder] = None,
                              max_pairs: Optional[int] = None, max_degree: Optional[int] = None) -> GroebnerResult:
    """约化 Gröbner 基，附带基元素的输入表示和输入的约化迹"""
    return _buchberger(F, order, max_pairs, max_degree, track=True)


@dataclass
class GroebnerCheck:
    """Buchberger 判据的检查结果"""
    passed: bool
    pairs_checked: int
    failing_pair: Optional[Tuple[int, int]] = None


def is_groebner_basis(G: Sequence[Polynomial]) -> GroebnerCheck:
    """所有 S-多项式都约化为 0 时 G 是 Gröbner 基"""
    G = [g for g in G if g]
    checked = 0
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            checked += 1
            if classical_reduce(s_polynomial(G[i], G[j]), G).remainder:
                return GroebnerCheck(False, checked, (i, j))
    return GroebnerCheck(True, checked)


def same_ideal(F: Iterable[Polynomial], G: Iterable[Polynomial]) -> bool:
    """比较约化 Gröbner 基判定两组生成元是否生成同一理想"""
    return set(buchberger_oracle(F)) == set(buchberger_oracle(G))
