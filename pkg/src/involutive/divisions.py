#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
对合除法模块
Janet / Thomas / Pommaret 除法以及表驱动的自定义除法

所有除法都以 VariableContext 的优先级为准：
- Janet：按优先级从高到低分组 [α_{i+1},…,α_n]，组内该变量次数达到最大时为乘性变量
- Thomas：该变量次数等于整个集合中的最大次数时为乘性变量
- Pommaret：类为次数为正的最低优先级变量，优先级不高于它的变量都是乘性变量
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from src.algebra.monomials import Monomial, MonomialOrder, VariableContext, quotient
from src.errors import NotInSetError

MultTable = Dict[Monomial, FrozenSet[int]]


class DivisionKind(str, Enum):
    """对合除法类型"""
    JANET = "janet"
    THOMAS = "thomas"
    POMMARET = "pommaret"
    TABLE = "table"


@dataclass(frozen=True)
class MultiplicativePartition:
    """乘性 / 非乘性变量划分（变量为 0 基下标）"""
    monomial: Monomial
    mult: FrozenSet[int]
    nonmult: FrozenSet[int]

    def mult_names(self, context: VariableContext) -> List[str]:
        return [context.names[i] for i in context.sort_variables(self.mult)]

    def nonmult_names(self, context: VariableContext) -> List[str]:
        return [context.names[i] for i in context.sort_variables(self.nonmult)]

    def to_dict(self, context: VariableContext) -> Dict[str, object]:
        return {
            "monomial": self.monomial.to_text(context),
            "mult": self.mult_names(context),
            "nonmult": self.nonmult_names(context),
        }


class InvolutiveDivision(ABC):
    """对合除法基类"""

    kind: DivisionKind
    # 全局除法不依赖参考集合
    is_global: bool = False
    # 连续除法：局部对合等价于对合
    is_continuous: bool = True

    def __init__(self, context: VariableContext):
        self.context = context

    @abstractmethod
    def _table(self, U: FrozenSet[Monomial]) -> MultTable:
        """计算 U 中每个单项式的乘性变量"""

    def table(self, U: Iterable[Monomial]) -> MultTable:
        return self._table(frozenset(U))

    def multiplicative(self, U: Iterable[Monomial], u: Monomial) -> FrozenSet[int]:
        U = frozenset(U)
        if not self.is_global and u not in U:
            raise NotInSetError(f"{u.to_text(self.context)} 不在参考集合中",
                                {"monomial": u.to_text(self.context)})
        if self.is_global:
            return self._table(frozenset([u]))[u]
        return self._table(U)[u]

    def partition(self, U: Iterable[Monomial], u: Monomial) -> MultiplicativePartition:
        mult = self.multiplicative(U, u)
        return MultiplicativePartition(u, mult, frozenset(range(self.context.n)) - mult)

    def divides(self, u: Monomial, w: Monomial, mult: FrozenSet[int]) -> bool:
        """u 是否对合整除 w（给定 u 的乘性变量）"""
        if not u.divides(w):
            return False
        v = quotient(u, w)
        return all(i in mult for i in v.support())

    def divisors(self, U: Iterable[Monomial], w: Monomial, table: Optional[MultTable] = None) -> List[Monomial]:
        U = frozenset(U)
        table = table if table is not None else self._table(U)
        return [u for u in U if self.divides(u, w, table[u])]

    def divisor(self, U: Iterable[Monomial], w: Monomial, table: Optional[MultTable] = None) -> Optional[Monomial]:
        """对合因子；有多个候选时返回按优先级字典序最小者"""
        candidates = self.divisors(U, w, table)
        if not candidates:
            return None
        precedence = self.context.precedence
        return min(candidates, key=lambda u: tuple(u[i] for i in precedence))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.context.names})"


class JanetDivision(InvolutiveDivision):
    """Janet 除法"""

    kind = DivisionKind.JANET

    def _table(self, U: FrozenSet[Monomial]) -> MultTable:
        precedence = self.context.precedence
        mult: Dict[Monomial, set] = {u: set() for u in U}
        for t, var in enumerate(precedence):
            group_max: Dict[Tuple[int, ...], int] = {}
            for u in U:
                prefix = tuple(u[precedence[s]] for s in range(t))
                group_max[prefix] = max(group_max.get(prefix, 0), u[var])
            for u in U:
                prefix = tuple(u[precedence[s]] for s in range(t))
                if u[var] == group_max[prefix]:
                    mult[u].add(var)
        return {u: frozenset(vs) for u, vs in mult.items()}


class ThomasDivision(InvolutiveDivision):
    """Thomas 除法"""

    kind = DivisionKind.THOMAS

    def _table(self, U: FrozenSet[Monomial]) -> MultTable:
        n = self.context.n
        top = [max((u[i] for u in U), default=0) for i in range(n)]
        return {u: frozenset(i for i in range(n) if u[i] == top[i]) for u in U}


class PommaretDivision(InvolutiveDivision):
    """Pommaret 除法（全局定义）"""

    kind = DivisionKind.POMMARET
    is_global = True

    def klass(self, u: Monomial) -> Optional[int]:
        """类：次数为正的最低优先级变量；单位单项式没有类"""
        positive = [i for i in self.context.precedence if u[i] > 0]
        return positive[-1] if positive else None

    def _table(self, U: FrozenSet[Monomial]) -> MultTable:
        precedence = self.context.precedence
        table = {}
        for u in U:
            k = self.klass(u)
            if k is None:
                table[u] = frozenset(precedence)
            else:
                table[u] = frozenset(precedence[precedence.index(k):])
        return table


class TableDivision(InvolutiveDivision):
    """表驱动除法：每个单项式的乘性变量由表给出，未列出的取默认值"""

    kind = DivisionKind.TABLE
    is_global = True
    is_continuous = False

    def __init__(self, context: VariableContext, rules: Mapping[Monomial, Iterable[int]],
                 default: Iterable[int] = ()):
        super().__init__(context)
        self.rules = {m: frozenset(vs) for m, vs in rules.items()}
        self.default = frozenset(default)

    def _table(self, U: FrozenSet[Monomial]) -> MultTable:
        return {u: self.rules.get(u, self.default) for u in U}


def make_division(kind, context: VariableContext) -> InvolutiveDivision:
    """按名称构造内置除法"""
    kind = DivisionKind(kind.lower() if isinstance(kind, str) else kind)
    if kind == DivisionKind.JANET:
        return JanetDivision(context)
    if kind == DivisionKind.THOMAS:
        return ThomasDivision(context)
    if kind == DivisionKind.POMMARET:
        return PommaretDivision(context)
    raise ValueError(f"不支持按名称构造的除法: {kind.value}")


def multiplicative_variables(division: InvolutiveDivision, U: Iterable[Monomial], u: Monomial) -> MultiplicativePartition:
    """u 相对 U 的乘性变量划分"""
    return division.partition(U, u)


def involutive_divisor(division: InvolutiveDivision, U: Iterable[Monomial], w: Monomial) -> Optional[Monomial]:
    """w 在 U 中的对合因子，不存在时返回 None"""
    return division.divisor(U, w)


def involutive_cone_contains(division: InvolutiveDivision, U: Iterable[Monomial], w: Monomial) -> bool:
    return division.divisor(U, w) is not None


def multiplicative_table(division: InvolutiveDivision, U: Iterable[Monomial],
                         order: Optional[MonomialOrder] = None) -> List[MultiplicativePartition]:
    """整张乘性变量表，从大到小排列；未给出 order 时按优先级字典序"""
    U = frozenset(U)
    table = division.table(U)
    full = frozenset(range(division.context.n))
    if order is not None:
        ranked = order.sorted(U, descending=True)
    else:
        precedence = division.context.precedence
        ranked = sorted(U, key=lambda u: tuple(u[i] for i in precedence), reverse=True)
    return [MultiplicativePartition(u, table[u], full - table[u]) for u in ranked]
