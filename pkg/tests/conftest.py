#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
测试公共夹具
工作示例（p17 / p21 / p28 …）与输入文件共用 data/ 下的同一份数据
"""
import random
import sys
from pathlib import Path
from typing import Iterable, List

import pytest

ROOT = Path(__file__).resolve().parent.parent
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.algebra.monomials import Monomial, MonomialOrder, VariableContext  # noqa: E402
from src.algebra.polynomials import PolynomialRing  # noqa: E402
from src.involutive.divisions import TableDivision  # noqa: E402
from src.parser.expressions import parse_monomial, parse_polynomial  # noqa: E402

DATA_DIR = ROOT / "data"


def monos(texts: Iterable[str], context: VariableContext) -> List[Monomial]:
    """文本列表 -> 单项式列表"""
    return [parse_monomial(t, context) for t in texts]


def texts(monomials: Iterable[Monomial], context: VariableContext) -> List[str]:
    return [m.to_text(context) for m in monomials]


@pytest.fixture
def ctx2() -> VariableContext:
    return VariableContext.standard(2)


@pytest.fixture
def ctx3() -> VariableContext:
    return VariableContext.standard(3)


@pytest.fixture
def ctx5() -> VariableContext:
    return VariableContext.standard(5)


@pytest.fixture
def deglex3(ctx3) -> MonomialOrder:
    return MonomialOrder(ctx3)


@pytest.fixture
def ring2() -> PolynomialRing:
    """x2 > x1 的 deglex 环"""
    return PolynomialRing.standard(2)


@pytest.fixture
def poly2(ring2):
    """在 ring2 中解析多项式"""
    return lambda text: parse_polynomial(text, ring2)


@pytest.fixture
def p17(ctx3) -> List[Monomial]:
    return monos(["x3^3*x2^2*x1^2", "x3^3*x1^3", "x3*x2*x1^3", "x3*x2"], ctx3)


@pytest.fixture
def p21(ctx5) -> List[Monomial]:
    return monos(["x5*x4", "x5*x3", "x5*x2", "x4^2", "x4*x3", "x3^2"], ctx5)


@pytest.fixture
def p28(ctx3) -> List[Monomial]:
    return monos(["x3*x2^2", "x3^3*x1^2"], ctx3)


@pytest.fixture
def rng() -> random.Random:
    """固定种子的随机源"""
    return random.Random(20240601)


@pytest.fixture
def overlapping_division(ctx2) -> TableDivision:
    """x1、x2 的乘性变量都取全部变量：x1*x2 有两个互不整除的对合因子"""
    return TableDivision(ctx2, {
        Monomial((1, 0)): {0, 1},
        Monomial((0, 1)): {0, 1},
    })


@pytest.fixture
def cyclic_division(ctx3) -> TableDivision:
    """x1、x2、x3 的乘性变量轮换：满足公理且局部对合，但 x1*x2*x3 不在任何锥中"""
    return TableDivision(ctx3, {
        Monomial((1, 0, 0)): {0, 2},
        Monomial((0, 1, 0)): {0, 1},
        Monomial((0, 0, 1)): {1, 2},
    })


def random_monomial_set(rng: random.Random, n: int, size: int, max_exp: int) -> List[Monomial]:
    """非空随机单项式集合（不含 1）"""
    found = set()
    while len(found) < size:
        exps = tuple(rng.randint(0, max_exp) for _ in range(n))
        if any(exps):
            found.add(Monomial(exps))
    return sorted(found, key=lambda m: m.exponents)
