#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
理想输入文件解析

格式（UTF-8，# 开头为注释）：
    vars x1 x2 x3
    precedence x3 x2 x1      # 可选，默认最后声明的变量优先级最高
    order deglex             # 可选：lex / deglex
    x3*x2^2                  # 其余每行一个生成元
"""
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional, Tuple, Union

from loguru import logger

from src.algebra.monomials import Monomial, MonomialOrder, VariableContext
from src.algebra.polynomials import Polynomial, PolynomialRing
from src.errors import ParseError
from src.parser.expressions import parse_terms

HEADERS = ("vars", "precedence", "order")


def strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].strip()


def split_header(line: str) -> Tuple[str, List[str]]:
    """'vars x1, x2' -> ('vars', ['x1', 'x2'])"""
    head, _, rest = line.partition(" ")
    head = head.rstrip(":")
    return head, [tok for tok in rest.replace(",", " ").split() if tok]


def build_context(names: List[str], precedence: Optional[List[str]], line: Optional[int]) -> VariableContext:
    if not names:
        raise ParseError("vars 为空", line=line)
    if len(set(names)) != len(names):
        raise ParseError("变量名重复", line=line, text=" ".join(names))
    context = VariableContext(tuple(names))
    if precedence:
        if sorted(precedence) != sorted(names):
            raise ParseError("precedence 必须是全部变量的一个排列", line=line, text=" ".join(precedence))
        context = context.with_precedence(precedence)
    return context


@dataclass
class ParsedIdeal:
    """解析结果：变量上下文、可选的序名称与生成元"""
    context: VariableContext
    generators: List[Polynomial] = field(default_factory=list)
    order_kind: Optional[str] = None
    source: str = "<text>"

    def ring(self, order: Optional[MonomialOrder] = None) -> PolynomialRing:
        order = order or MonomialOrder(self.context, self.order_kind or "deglex")
        return PolynomialRing(self.context, order)

    def polynomials(self, order: Optional[MonomialOrder] = None) -> List[Polynomial]:
        ring = self.ring(order)
        return [g.with_ring(ring) for g in self.generators]

    def monomials(self) -> List[Monomial]:
        """所有生成元都是单项式时返回其首单项式"""
        result = []
        for g in self.generators:
            if not g.is_monomial():
                raise ParseError(f"生成元不是单项式: {g.to_text()}", text=g.to_text())
            result.append(g.LM)
        return result


def parse_ideal_text(text: str, source: str = "<text>") -> ParsedIdeal:
    names: List[str] = []
    precedence: Optional[List[str]] = None
    order_kind: Optional[str] = None
    bodies: List[Tuple[int, str]] = []
    vars_line: Optional[int] = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = strip_comment(raw)
        if not line:
            continue
        head, args = split_header(line)
        if head == "vars":
            if bodies:
                raise ParseError("vars 必须出现在生成元之前", line=number, text=raw)
            names, vars_line = args, number
        elif head == "precedence":
            precedence = args
        elif head == "order":
            if len(args) != 1 or args[0] not in ("lex", "deglex"):
                raise ParseError("order 只能是 lex 或 deglex", line=number, text=raw)
            order_kind = args[0]
        else:
            if vars_line is None:
                raise ParseError("生成元之前必须先声明 vars", line=number, text=raw)
            bodies.append((number, line))
    if vars_line is None:
        raise ParseError("缺少 vars 声明")
    context = build_context(names, precedence, vars_line)
    ring = PolynomialRing(context, MonomialOrder(context))
    generators = [Polynomial(ring, parse_terms(body, context, number)) for number, body in bodies]
    logger.debug(f"解析 {source}: {context.n} 个变量，{len(generators)} 个生成元")
    return ParsedIdeal(context, generators, order_kind, source)


def load_ideal(path: Union[str, Path]) -> ParsedIdeal:
    path = Path(path)
    return parse_ideal_text(path.read_text(encoding="utf-8"), str(path))
