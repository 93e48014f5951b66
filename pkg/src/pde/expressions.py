#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
线性微分表达式 Σ c(x)·D^α φ^r

既用来表示方程（键为未知函数的导数），也用来表示证书（键的 r 为输入方程的下标，
D^α 作用在该方程上）
"""
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from src.algebra.monomials import Monomial
from src.algebra.polynomials import Polynomial, PolynomialRing
from src.errors import DegenerateCombineError, ZeroPolynomialError
from src.pde.derivatives import DerivativeKey, DerivativeOrderSpec

Coefficient = Union[int, Fraction, Polynomial]


class DiffExpression:
    """有限和 Σ c_k(x)·D^{α_k} φ^{r_k}，系数为 x 的多项式"""
    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolynomialRing, terms: Optional[Mapping[DerivativeKey, Coefficient]] = None):
        self.ring = ring
        self._terms: Dict[DerivativeKey, Polynomial] = {}
        for k, c in (terms or {}).items():
            c = self._coerce(c)
            if c:
                self._terms[k] = c

    def _coerce(self, c: Coefficient) -> Polynomial:
        if isinstance(c, Polynomial):
            return c
        return self.ring.constant(c)

    @classmethod
    def single(cls, ring: PolynomialRing, key: DerivativeKey, c: Coefficient = 1) -> "DiffExpression":
        return cls(ring, {key: c})

    @classmethod
    def zero(cls, ring: PolynomialRing) -> "DiffExpression":
        return cls(ring)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def keys(self) -> List[DerivativeKey]:
        return list(self._terms)

    def items(self) -> List[Tuple[DerivativeKey, Polynomial]]:
        return list(self._terms.items())

    def coefficient(self, key: DerivativeKey) -> Polynomial:
        return self._terms.get(key, self.ring.zero())

    def sorted_items(self, spec: DerivativeOrderSpec) -> List[Tuple[DerivativeKey, Polynomial]]:
        """按导数序从大到小"""
        return sorted(self._terms.items(), key=lambda kv: spec.key(kv[0]), reverse=True)

    def lead(self, spec: DerivativeOrderSpec) -> DerivativeKey:
        if not self._terms:
            raise ZeroPolynomialError("零表达式没有首导数")
        return max(self._terms, key=spec.key)

    def max_order(self) -> int:
        return max((k.order for k in self._terms), default=0)

    # ---------- 线性运算 ----------

    def __add__(self, other: "DiffExpression") -> "DiffExpression":
        terms = dict(self._terms)
        for k, c in other._terms.items():
            s = terms[k] + c if k in terms else c
            if s:
                terms[k] = s
            else:
                terms.pop(k, None)
        return DiffExpression._raw(self.ring, terms)

    def __neg__(self) -> "DiffExpression":
        return DiffExpression._raw(self.ring, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "DiffExpression") -> "DiffExpression":
        return self + (-other)

    def scale(self, c: Coefficient) -> "DiffExpression":
        """左乘系数 c(x)"""
        c = self._coerce(c)
        if not c:
            return DiffExpression.zero(self.ring)
        terms = {}
        for k, v in self._terms.items():
            p = c * v
            if p:
                terms[k] = p
        return DiffExpression._raw(self.ring, terms)

    @classmethod
    def _raw(cls, ring: PolynomialRing, terms: Dict[DerivativeKey, Polynomial]) -> "DiffExpression":
        e = cls.__new__(cls)
        e.ring = ring
        e._terms = terms
        return e

    # ---------- 求导 ----------

    def diff(self, i: int) -> "DiffExpression":
        """D_{x_i}，系数按乘积法则求导"""
        n = self.ring.n
        result: Dict[DerivativeKey, Polynomial] = {}

        def acc(k: DerivativeKey, c: Polynomial):
            s = result[k] + c if k in result else c
            if s:
                result[k] = s
            else:
                result.pop(k, None)

        step = Monomial.variable(n, i)
        for k, c in self._terms.items():
            acc(k.shifted(step), c)
            dc = c.diff(i)
            if dc:
                acc(k, dc)
        return DiffExpression._raw(self.ring, result)

    def apply(self, gamma: Monomial) -> "DiffExpression":
        """D^γ"""
        expr = self
        for i in range(gamma.n):
            for _ in range(gamma[i]):
                expr = expr.diff(i)
        return expr

    def substitute(self, targets: Sequence["DiffExpression"]) -> "DiffExpression":
        """把证书展开为 Σ c·D^α(targets[r])"""
        total = DiffExpression.zero(targets[0].ring if targets else self.ring)
        for k, c in self._terms.items():
            total = total + targets[k.r].apply(k.alpha).scale(c)
        return total

    # ---------- 规范化 ----------

    def normalized(self, spec: DerivativeOrderSpec) -> Tuple["DiffExpression", Fraction]:
        """
        除以首系数

        Raises:
            DegenerateCombineError: 首系数不是非零常数
        """
        lead = self.lead(spec)
        c = self._terms[lead]
        if not c.is_constant():
            raise DegenerateCombineError(f"首导数的系数不是常数: {c.to_text()}",
                                         {"lead": lead.jet_name(("u",)), "coefficient": c.to_text()})
        factor = 1 / c.coefficient(Monomial.one(self.ring.n))
        return self.scale(factor), factor

    # ---------- 比较与输出 ----------

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffExpression):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def to_text(self, spec: DerivativeOrderSpec, name: Callable[[DerivativeKey], str]) -> str:
        """如 p33 - x2*p11；系数为多项式时加括号"""
        if not self._terms:
            return "0"
        pieces = []
        for idx, (k, c) in enumerate(self.sorted_items(spec)):
            negative = False
            if c.is_monomial() and c.LC < 0:
                negative = True
                c = -c
            if c == 1:
                body = name(k)
            elif c.is_monomial():
                body = f"{c.to_text()}*{name(k)}"
            else:
                body = f"({c.to_text()})*{name(k)}"
            if idx == 0:
                pieces.append(f"-{body}" if negative else body)
            else:
                pieces.append(f"{'-' if negative else '+'} {body}")
        return " ".join(pieces)

    def __repr__(self) -> str:
        inner = ", ".join(f"{k.alpha.exponents}/{k.r}: {c.to_text()}" for k, c in self._terms.items())
        return f"DiffExpression({{{inner}}})"

