#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
精确线性代数：在 QQ 上计算系数矩阵的秩（无浮点）
"""
from fractions import Fraction
from typing import Dict, Iterable, List, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from src.algebra.monomials import Monomial


def exact_rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """有理矩阵的秩"""
    rows = [list(r) for r in rows]
    if not rows or not rows[0]:
        return 0
    width = len(rows[0])
    entries = [[QQ(int(Fraction(c).numerator), int(Fraction(c).denominator)) for c in r] for r in rows]
    return DomainMatrix(entries, (len(entries), width), QQ).rank()


def span_rank(vectors: Iterable[Dict[Monomial, Fraction]], basis: List[Monomial]) -> int:
    """以单项式为坐标的稀疏向量组张成空间的维数"""
    position = {m: j for j, m in enumerate(basis)}
    rows = []
    for vec in vectors:
        row = [Fraction(0)] * len(basis)
        for m, c in vec.items():
            row[position[m]] = Fraction(c)
        if any(row):
            rows.append(row)
    return exact_rank(rows)
