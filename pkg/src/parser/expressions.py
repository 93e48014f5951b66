#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
单项式与多项式的文本语法
单项式：x3^3*x1^2，单位单项式写作 1
多项式：x2^2 - 2*x1*x2 + 1，有理数写作 p/q
"""
import re
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from src.algebra.monomials import Monomial, VariableContext
from src.algebra.polynomials import Polynomial, PolynomialRing
from src.errors import ParseError

_NUMBER = re.compile(r"^\d+(?:/\d+)?$")
_POWER = re.compile(r"^([A-Za-z_][A-Za-z0-9_]*)(?:\^(\d+))?$")


def split_terms(text: str, line: Optional[int] = None) -> List[Tuple[int, str]]:
    """按顶层 +/- 切分为 (符号, 项)，方括号内的内容不切分"""
    terms: List[Tuple[int, str]] = []
    depth = 0
    sign = 1
    current = ""
    after_operator = False
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
            if depth < 0:
                raise ParseError("方括号不匹配", line=line, text=text)
        if depth == 0 and ch in "+-":
            body = current.strip()
            if body:
                terms.append((sign, body))
                sign = 1
            elif after_operator:
                raise ParseError("连续的运算符", line=line, text=text)
            if ch == "-":
                sign = -sign
            after_operator = True
            current = ""
            continue
        current += ch
        if not ch.isspace():
            after_operator = False
    if depth != 0:
        raise ParseError("方括号不匹配", line=line, text=text)
    if not current.strip():
        raise ParseError("表达式以运算符结尾或为空", line=line, text=text)
    terms.append((sign, current.strip()))
    return terms


def parse_power(factor: str, context: VariableContext, line: Optional[int] = None) -> Optional[Monomial]:
    """x3^2 形式的因子；不是变量时返回 None"""
    match = _POWER.match(factor)
    if not match or match.group(1) not in context.names:
        return None
    return Monomial.variable(context.n, context.index_of(match.group(1)), int(match.group(2) or 1))


def parse_number(factor: str) -> Optional[Fraction]:
    if not _NUMBER.match(factor):
        return None
    num, _, den = factor.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"分母为零: {factor}", text=factor)
    return Fraction(int(num), int(den or 1))


def parse_term(text: str, context: VariableContext, line: Optional[int] = None) -> Tuple[Fraction, Monomial]:
    coef = Fraction(1)
    mono = Monomial.one(context.n)
    for factor in (f.strip() for f in text.split("*")):
        if not factor:
            raise ParseError("空因子", line=line, text=text)
        number = parse_number(factor)
        if number is not None:
            coef *= number
            continue
        power = parse_power(factor, context, line)
        if power is None:
            raise ParseError(f"未声明的变量或无法识别的因子: {factor}", line=line, text=text)
        mono = mono * power
    return coef, mono


def parse_monomial(text: str, context: VariableContext, line: Optional[int] = None) -> Monomial:
    text = text.strip()
    if text == "1":
        return Monomial.one(context.n)
    coef, mono = parse_term(text, context, line)
    if coef != 1 or any(ch in text for ch in "+-"):
        raise ParseError(f"不是单项式: {text}", line=line, text=text)
    return mono


def parse_terms(text: str, context: VariableContext, line: Optional[int] = None) -> Dict[Monomial, Fraction]:
    terms: Dict[Monomial, Fraction] = {}
    for sign, body in split_terms(text, line):
        coef, mono = parse_term(body, context, line)
        terms[mono] = terms.get(mono, Fraction(0)) + sign * coef
    return {m: c for m, c in terms.items() if c}


def parse_polynomial(text: str, ring: PolynomialRing, line: Optional[int] = None) -> Polynomial:
    return Polynomial(ring, parse_terms(text, ring.context, line))
