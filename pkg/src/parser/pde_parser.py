#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
PDE 输入文件解析

格式（UTF-8，# 开头为注释）：
    vars x1 x2 x3
    precedence x3 x2 x1              # 可选
    unknowns u                       # 可选，默认 u
    order janet_deglex               # 可选：janet_deglex / weight / canonical_weight
    weight 1 0 1 1 2                 # weight 序的权重行，可多行
    function_weight u 0 0            # 可选，每个未知函数一行
    eq: d[0,0,2] u = x2 * d[2,0,0] u
    eq A: d[0,2,0] u = 0             # 方程可带标签
    eq: d[0,1,1] u = f1              # 右端为不透明符号时是单项式系统
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from loguru import logger

from src.algebra.monomials import Monomial, MonomialOrder, VariableContext, WeightMatrix
from src.algebra.polynomials import PolynomialRing
from src.errors import ContextMismatchError, ParseError
from src.parser.expressions import parse_number, parse_power, split_terms
from src.parser.ideal_parser import build_context, split_header, strip_comment
from src.pde.derivatives import DerivativeKey, DerivativeOrderKind, DerivativeOrderSpec
from src.pde.expressions import DiffExpression
from src.pde.linear_systems import PdeSystem
from src.pde.monomial_systems import MonomialPdeSystem

_DERIVATIVE = re.compile(r"^d\[([^\]]*)\]\s*([A-Za-z_][A-Za-z0-9_]*)$")
_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_EQUATION = re.compile(r"^eq(?:\s+([A-Za-z0-9_]+))?\s*:(.*)$")

Term = Tuple[Fraction, Monomial, DerivativeKey]


@dataclass
class ParsedEquation:
    """一条方程：lhs 首项为声明的首导数；symbol 非空时右端为不透明符号"""
    line: int
    label: str
    lhs: List[Term]
    rhs: List[Term]
    symbol: Optional[str] = None

    @property
    def declared_lead(self) -> DerivativeKey:
        return self.lhs[0][2]


@dataclass
class ParsedPde:
    context: VariableContext
    unknowns: Tuple[str, ...]
    equations: List[ParsedEquation] = field(default_factory=list)
    order_kind: Optional[str] = None
    weight_rows: List[Tuple[int, ...]] = field(default_factory=list)
    function_weights: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    source: str = "<text>"

    @property
    def is_monomial_system(self) -> bool:
        return bool(self.equations) and all(e.symbol is not None for e in self.equations)

    def spec(self, kind: Optional[str] = None, weights: Optional[WeightMatrix] = None) -> DerivativeOrderSpec:
        """导数序：参数优先，其次文件头，默认 janet_deglex"""
        try:
            if weights is None and self.weight_rows:
                weights = WeightMatrix(tuple(self.weight_rows))
            kind = kind or self.order_kind or (DerivativeOrderKind.WEIGHT.value if weights else "janet_deglex")
            fw = ()
            if kind == DerivativeOrderKind.WEIGHT.value and self.function_weights:
                fw = tuple(self.function_weights.get(u, ()) for u in self.unknowns)
            return DerivativeOrderSpec(self.context, len(self.unknowns), kind, weights, fw)
        except (ValueError, ContextMismatchError) as e:
            raise ParseError(f"导数序设置无效: {e}", text=self.source)

    def ring(self) -> PolynomialRing:
        return PolynomialRing(self.context, MonomialOrder(self.context))

    def expressions(self, ring: Optional[PolynomialRing] = None) -> List[DiffExpression]:
        """每条方程化为 左 − 右"""
        ring = ring or self.ring()
        result = []
        for eq in self.equations:
            expr = DiffExpression.zero(ring)
            for sign, terms in ((1, eq.lhs), (-1, eq.rhs)):
                for coef, mono, key in terms:
                    expr = expr + DiffExpression.single(ring, key, ring.monomial(mono, sign * coef))
            result.append(expr)
        return result

    def linear_system(self, spec: Optional[DerivativeOrderSpec] = None) -> PdeSystem:
        if self.is_monomial_system:
            raise ParseError("右端为不透明符号的系统不是线性系统")
        ring = self.ring()
        spec = spec or self.spec()
        return PdeSystem.from_expressions(self.context, self.unknowns, spec, ring,
                                          self.expressions(ring), [e.label for e in self.equations])

    def monomial_system(self) -> MonomialPdeSystem:
        if not self.is_monomial_system:
            raise ParseError("不是单项式系统：每条方程的右端都必须是不透明符号")
        if len(self.unknowns) != 1:
            raise ParseError("单项式系统只允许一个未知函数")
        leads = [e.declared_lead.alpha for e in self.equations]
        return MonomialPdeSystem(self.context, leads, [e.symbol for e in self.equations])


def _parse_side(text: str, context: VariableContext, unknowns: Sequence[str], line: int) -> List[Term]:
    if text.strip() == "0":
        return []
    terms: List[Term] = []
    for sign, body in split_terms(text, line):
        coef = Fraction(sign)
        mono = Monomial.one(context.n)
        key: Optional[DerivativeKey] = None
        for factor in (f.strip() for f in body.split("*")):
            number = parse_number(factor)
            if number is not None:
                coef *= number
                continue
            power = parse_power(factor, context, line)
            if power is not None:
                mono = mono * power
                continue
            found = _parse_derivative(factor, context, unknowns, line)
            if found is None:
                raise ParseError(f"无法识别的因子: {factor}", line=line, text=text)
            if key is not None:
                raise ParseError("一项中只能有一个导数", line=line, text=text)
            key = found
        if key is None:
            raise ParseError("只支持齐次线性方程：每一项都必须含导数", line=line, text=text)
        if coef:
            terms.append((coef, mono, key))
    return terms


def _parse_derivative(factor: str, context: VariableContext, unknowns: Sequence[str],
                      line: int) -> Optional[DerivativeKey]:
    if factor in unknowns:
        return DerivativeKey(Monomial.one(context.n), list(unknowns).index(factor))
    match = _DERIVATIVE.match(factor)
    if not match:
        return None
    name = match.group(2)
    if name not in unknowns:
        raise ParseError(f"未声明的未知函数: {name}", line=line, text=factor)
    try:
        exps = tuple(int(tok) for tok in match.group(1).split(","))
    except ValueError:
        raise ParseError(f"导数指标必须是非负整数: {factor}", line=line, text=factor)
    if len(exps) != context.n or any(e < 0 for e in exps):
        raise ParseError(f"导数指标个数必须等于变量个数 {context.n}", line=line, text=factor)
    return DerivativeKey(Monomial(exps), list(unknowns).index(name))


def parse_pde_text(text: str, source: str = "<text>") -> ParsedPde:
    names: List[str] = []
    precedence: Optional[List[str]] = None
    unknowns: List[str] = ["u"]
    order_kind: Optional[str] = None
    weight_rows: List[Tuple[int, ...]] = []
    function_weights: Dict[str, Tuple[int, ...]] = {}
    raw_equations: List[Tuple[int, str, str]] = []
    vars_line: Optional[int] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        match = _EQUATION.match(line)
        if match:
            if vars_line is None:
                raise ParseError("方程之前必须先声明 vars", line=number, text=raw)
            raw_equations.append((number, match.group(1) or "", match.group(2)))
            continue
        head, args = split_header(line)
        try:
            if head == "vars":
                names, vars_line = args, number
            elif head == "precedence":
                precedence = args
            elif head == "unknowns":
                if not args or len(set(args)) != len(args):
                    raise ParseError("unknowns 为空或有重复", line=number, text=raw)
                unknowns = args
            elif head == "order":
                if len(args) != 1 or args[0] not in {k.value for k in DerivativeOrderKind}:
                    raise ParseError("未知的导数序", line=number, text=raw)
                order_kind = args[0]
            elif head == "weight":
                weight_rows.append(tuple(int(a) for a in args))
            elif head == "function_weight":
                function_weights[args[0]] = tuple(int(a) for a in args[1:])
            else:
                raise ParseError(f"无法识别的行: {line}", line=number, text=raw)
        except (ValueError, IndexError):
            raise ParseError(f"格式错误: {line}", line=number, text=raw)
    if vars_line is None:
        raise ParseError("缺少 vars 声明")
    context = build_context(names, precedence, vars_line)
    clash = set(unknowns) & set(context.names)
    if clash:
        raise ParseError(f"未知函数与变量重名: {sorted(clash)}")

    equations = []
    for number, label, body in raw_equations:
        if body.count("=") != 1:
            raise ParseError("方程必须恰好含一个 =", line=number, text=body)
        left, right = (s.strip() for s in body.split("="))
        lhs = _parse_side(left, context, unknowns, number)
        if not lhs:
            raise ParseError("左端不能为零", line=number, text=body)
        symbol = None
        if (_IDENTIFIER.match(right) and right not in unknowns and right not in context.names):
            if len(lhs) != 1 or lhs[0][0] != 1 or not lhs[0][1].is_one:
                raise ParseError("单项式方程的左端必须是单个导数", line=number, text=body)
            symbol, rhs = right, []
        else:
            rhs = _parse_side(right, context, unknowns, number)
        equations.append(ParsedEquation(number, label, lhs, rhs, symbol))
    if any(e.symbol for e in equations) and not all(e.symbol for e in equations):
        raise ParseError("不能混用不透明右端与线性右端")
    logger.debug(f"解析 {source}: {context.n} 个变量，{len(equations)} 条方程")
    return ParsedPde(context, tuple(unknowns), equations, order_kind, weight_rows, function_weights, source)


def load_pde(path: Union[str, Path]) -> ParsedPde:
    path = Path(path)
    return parse_pde_text(path.read_text(encoding="utf-8"), str(path))
