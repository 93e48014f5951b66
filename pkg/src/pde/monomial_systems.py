#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
单项式 PDE 系统 D^α φ = f_α(x)
相容性条件与初始条件模板
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from loguru import logger

from src.algebra.monomials import Monomial, MonomialOrder, VariableContext, quotient
from src.errors import EmptyInputError, IncompleteError, NotInSetError
from src.involutive.divisions import JanetDivision
from src.involutive.monomial_completion import (ComplementarySet, autoreduce_monomials, complementary_monomials,
                                                complete_set, is_locally_involutive)


@dataclass
class MonomialPdeSystem:
    """首导数两两不同的单项式系统，每个首导数对应一个不透明的右端符号"""
    context: VariableContext
    leads: List[Monomial]
    symbols: List[str] = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.leads)) != len(self.leads):
            raise ValueError("首导数必须两两不同")
        if not self.symbols:
            self.symbols = [f"f{k + 1}" for k in range(len(self.leads))]
        if len(self.symbols) != len(self.leads):
            raise ValueError("右端符号个数与方程个数不一致")

    def symbol_of(self, u: Monomial) -> str:
        try:
            return self.symbols[self.leads.index(u)]
        except ValueError:
            raise NotInSetError(f"{u.to_text(self.context)} 不是首导数", {"monomial": u.to_text(self.context)})


def apply_to_symbol(symbol: str, gamma: Monomial, context: VariableContext) -> str:
    """D^γ f 的文本，如 ∂f1/∂x3、∂^2f1/∂x3∂x1"""
    if gamma.is_one:
        return symbol
    parts = []
    for i in context.precedence:
        e = gamma[i]
        if e == 1:
            parts.append(f"∂{context.names[i]}")
        elif e > 1:
            parts.append(f"∂{context.names[i]}^{e}")
    head = "∂" if gamma.degree == 1 else f"∂^{gamma.degree}"
    return f"{head}{symbol}/{''.join(parts)}"


@dataclass(frozen=True)
class CompatibilityCondition:
    """∂f_u/∂x = D^γ f_v，其中 u·x = v·γ 且 v 为 Janet 因子"""
    lead: Monomial
    variable: int
    left_symbol: str
    divisor: Monomial
    cofactor: Monomial
    right_symbol: str

    def to_text(self, context: VariableContext) -> str:
        left = apply_to_symbol(self.left_symbol, Monomial.variable(context.n, self.variable), context)
        right = apply_to_symbol(self.right_symbol, self.cofactor, context)
        return f"{left} = {right}"


def _require_complete(system: MonomialPdeSystem) -> JanetDivision:
    if not system.leads:
        raise EmptyInputError("单项式系统没有方程")
    division = JanetDivision(system.context)
    report = is_locally_involutive(division, system.leads)
    if not report.complete:
        raise IncompleteError("首导数集合不完备", report.to_dict(system.context))
    return division


def mono_pde_compatibility(system: MonomialPdeSystem) -> List[CompatibilityCondition]:
    """
    相容性条件：每个首导数 u 和每个非乘性变量 x 一条

    Raises:
        IncompleteError: 首导数集合不完备
    """
    division = _require_complete(system)
    context = system.context
    U = frozenset(system.leads)
    table = division.table(U)
    conditions = []
    for u, symbol in zip(system.leads, system.symbols):
        for x in context.precedence:
            if x in table[u]:
                continue
            w = u.times_variable(x)
            v = division.divisor(U, w, table)
            conditions.append(CompatibilityCondition(u, x, symbol, v, quotient(v, w), system.symbol_of(v)))
    logger.debug(f"单项式系统相容性条件 {len(conditions)} 条")
    return conditions


# ---------- 初始条件 ----------

@dataclass(frozen=True)
class InitialConditionEntry:
    """一个任意函数 φ_β：自变量为补乘性变量，其余变量取基点值"""
    monomial: Monomial
    function: int
    arguments: tuple
    locus: tuple

    def name(self, unknowns: Sequence[str] = ("u",)) -> str:
        index = ",".join(str(e) for e in self.monomial.exponents)
        prefix = "φ" if len(unknowns) == 1 else f"φ^{unknowns[self.function]}"
        return f"{prefix}_{{{index}}}"

    def to_text(self, context: VariableContext, unknowns: Sequence[str] = ("u",),
                base_point: str = "origin") -> str:
        args = ",".join(context.names[i] for i in self.arguments)
        text = f"{self.name(unknowns)}({args})"
        if self.locus:
            if base_point == "symbolic":
                at = ", ".join(f"{context.names[i]}={context.names[i]}^0" for i in self.locus)
            else:
                at = "=".join(context.names[i] for i in self.locus) + "=0"
            text += f" at {at}"
        return text


@dataclass
class InitialConditionTemplate:
    """初始条件模板及解的一般性程度"""
    context: VariableContext
    entries: List[InitialConditionEntry]
    unknowns: Sequence[str] = ("u",)

    @property
    def degree_of_generality(self) -> int:
        return max((len(e.arguments) for e in self.entries), default=0)

    @property
    def functions_of_top_arity(self) -> int:
        top = self.degree_of_generality
        return sum(1 for e in self.entries if len(e.arguments) == top)

    def to_dict(self, base_point: str = "origin") -> Dict[str, object]:
        ctx = self.context
        return {
            "degree_of_generality": self.degree_of_generality,
            "functions_of_top_arity": self.functions_of_top_arity,
            "entries": [
                {
                    "name": e.name(self.unknowns),
                    "unknown": self.unknowns[e.function],
                    "monomial": e.monomial.to_text(ctx),
                    "arguments": [ctx.names[i] for i in e.arguments],
                    "locus": [ctx.names[i] for i in e.locus],
                    "text": e.to_text(ctx, self.unknowns, base_point),
                }
                for e in self.entries
            ],
        }


def template_entries(comp: Optional[ComplementarySet], context: VariableContext, function: int = 0) -> List[InitialConditionEntry]:
    """由补单项式构造初始条件；comp 为 None 表示该未知函数没有方程"""
    everything = tuple(range(context.n))
    if comp is None:
        return [InitialConditionEntry(Monomial.one(context.n), function, everything, ())]
    entries = []
    for c in comp.monomials():
        mult = comp.assignments[c].mult
        arguments = tuple(i for i in everything if i in mult)
        locus = tuple(i for i in everything if i not in mult)
        entries.append(InitialConditionEntry(c, function, arguments, locus))
    return entries


def mono_pde_initial_conditions(system: MonomialPdeSystem) -> InitialConditionTemplate:
    """
    初始条件模板：每个补单项式一个任意函数

    Raises:
        IncompleteError: 首导数集合不完备
    """
    _require_complete(system)
    comp = complementary_monomials(system.leads, system.context)
    return InitialConditionTemplate(system.context, template_entries(comp, system.context))


# ---------- 不完备系统 ----------

@dataclass(frozen=True)
class DerivedEquation:
    """完备化加入的方程 D^w φ = D^γ f_u，其右端记为新符号 symbol"""
    lead: Monomial
    symbol: str
    source: Monomial
    cofactor: Monomial
    source_symbol: str

    def to_text(self, context: VariableContext) -> str:
        return f"{self.symbol} = {apply_to_symbol(self.source_symbol, self.cofactor, context)}"


def complete_monomial_system(system: MonomialPdeSystem,
                             degree_cap: int = 50) -> Tuple[MonomialPdeSystem, List[DerivedEquation]]:
    """
    首导数集合完备化；每个新首导数 w = u·x 得到新符号 f_k，定义为 f_k = ∂f_u/∂x

    Raises:
        IncompleteError: 首导数集合不是 Janet 自约化的
        CapExceededError: 新首导数次数超过 degree_cap
    """
    if not system.leads:
        raise EmptyInputError("单项式系统没有方程")
    context = system.context
    division = JanetDivision(context)
    kept = autoreduce_monomials(division, system.leads)
    if len(kept) != len(system.leads):
        dropped = [u.to_text(context) for u in system.leads if u not in kept]
        raise IncompleteError("首导数集合不是自约化的", {"reducible_leads": dropped})
    result = complete_set(division, system.leads, MonomialOrder(context), degree_cap)
    leads = list(system.leads)
    symbols = list(system.symbols)
    derived: List[DerivedEquation] = []
    for w in result.added:
        # 新单项式总是已有首导数的一次延拓
        u = next(v for v in reversed(leads) if v.divides(w) and v.degree + 1 == w.degree)
        symbol = _fresh_symbol(symbols)
        derived.append(DerivedEquation(w, symbol, u, quotient(u, w), symbols[leads.index(u)]))
        leads.append(w)
        symbols.append(symbol)
        logger.debug(f"单项式系统加入 {w.to_text(context)}: {derived[-1].to_text(context)}")
    return MonomialPdeSystem(context, leads, symbols), derived


def _fresh_symbol(symbols: Sequence[str]) -> str:
    k = len(symbols) + 1
    while f"f{k}" in symbols:
        k += 1
    return f"f{k}"
