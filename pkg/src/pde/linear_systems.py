#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
线性 PDE 系统的 Janet 化归

方程以 DiffExpression 表示（左减右，首系数为 1），每个方程都带着证书：
把它写成输入方程及其导数的线性组合。主要步骤：
- add_equation / combine：首导数相同时相减
- left_reduce：首导数落在另一首导数的 Janet 锥中时消去
- right_reduce：非首项中的主导数全部约化
- pde_complete：加入非乘性延拓直到首导数集合完备
- integrability_checks：非乘性延拓的正规形，非零即为可积条件
- janet_procedure：循环以上步骤直到得到 J-典范系统或遇到障碍
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from loguru import logger

from src.algebra.monomials import Monomial, VariableContext, cone_contains, quotient
from src.algebra.polynomials import Polynomial, PolynomialRing
from src.errors import CapExceededError, EmptyInputError, IncompleteError
from src.involutive.divisions import JanetDivision
from src.involutive.monomial_completion import complementary_monomials, is_locally_involutive
from src.pde.derivatives import DerivativeKey, DerivativeOrderSpec
from src.pde.expressions import DiffExpression
from src.pde.monomial_systems import InitialConditionTemplate, template_entries


@dataclass
class LinearPdeEquation:
    """D^α φ^r = Σ a·D^β φ^s，以 expression = 首导数 − 右端 存储，首系数为 1"""
    lead: DerivativeKey
    expression: DiffExpression
    certificate: DiffExpression
    label: str = ""
    origin: str = "input"

    @classmethod
    def from_expression(cls, expression: DiffExpression, certificate: DiffExpression,
                        spec: DerivativeOrderSpec, label: str = "", origin: str = "input") -> "LinearPdeEquation":
        normalized, factor = expression.normalized(spec)
        return cls(normalized.lead(spec), normalized, certificate.scale(factor), label, origin)

    def rhs(self, spec: DerivativeOrderSpec) -> List[Tuple[Polynomial, DerivativeKey]]:
        return [(-c, k) for k, c in self.expression.sorted_items(spec) if k != self.lead]

    def to_text(self, spec: DerivativeOrderSpec, unknowns: Sequence[str]) -> str:
        name = lambda k: k.jet_name(unknowns)
        tail = DiffExpression(self.expression.ring, {k: -c for k, c in self.expression.items() if k != self.lead})
        return f"{name(self.lead)} = {tail.to_text(spec, name)}"


@dataclass
class PdeSystem:
    """一组线性 PDE 方程及其所在的变量、未知函数与导数序"""
    context: VariableContext
    unknowns: Tuple[str, ...]
    spec: DerivativeOrderSpec
    ring: PolynomialRing
    equations: List[LinearPdeEquation] = field(default_factory=list)
    # 证书所指的原始方程（未规范化，下标与输入一致）
    inputs: List[DiffExpression] = field(default_factory=list)

    @classmethod
    def from_expressions(cls, context: VariableContext, unknowns: Sequence[str], spec: DerivativeOrderSpec,
                         ring: PolynomialRing, expressions: Sequence[DiffExpression],
                         labels: Optional[Sequence[str]] = None) -> "PdeSystem":
        """输入方程 k 的证书为 D^0 E_k；零方程跳过"""
        labels = list(labels or [])
        equations = []
        for k, expr in enumerate(expressions):
            label = labels[k] if k < len(labels) and labels[k] else f"E{k + 1}"
            if not expr:
                logger.warning(f"跳过零方程 {label}")
                continue
            cert = DiffExpression.single(ring, DerivativeKey(Monomial.one(context.n), k))
            equations.append(LinearPdeEquation.from_expression(expr, cert, spec, label))
        return cls(context, tuple(unknowns), spec, ring, equations, list(expressions))

    def with_equations(self, equations: List[LinearPdeEquation]) -> "PdeSystem":
        ranked = sorted(equations, key=lambda e: self.spec.key(e.lead), reverse=True)
        return replace(self, equations=ranked)

    @property
    def division(self) -> JanetDivision:
        return JanetDivision(self.context)

    def lead_set(self, r: int) -> FrozenSet[Monomial]:
        return frozenset(e.lead.alpha for e in self.equations if e.lead.r == r)

    def lead_sets(self) -> Dict[int, FrozenSet[Monomial]]:
        return {r: self.lead_set(r) for r in range(len(self.unknowns))}

    def index_of(self, lead: DerivativeKey) -> int:
        for k, e in enumerate(self.equations):
            if e.lead == lead:
                return k
        raise KeyError(lead)

    def name(self, key: DerivativeKey) -> str:
        return key.jet_name(self.unknowns)

    def to_dict(self) -> Dict[str, object]:
        division = self.division
        ctx = self.context
        tables = {r: division.table(U) for r, U in self.lead_sets().items()}
        return {
            "equations": [
                {
                    "label": e.label,
                    "lead": self.name(e.lead),
                    "text": e.to_text(self.spec, self.unknowns),
                    "mult": [ctx.names[i] for i in ctx.sort_variables(tables[e.lead.r][e.lead.alpha])],
                    "nonmult": [ctx.names[i] for i in ctx.sort_variables(
                        set(range(ctx.n)) - tables[e.lead.r][e.lead.alpha])],
                }
                for e in self.equations
            ],
        }


# ---------- 约化 ----------

@dataclass(frozen=True)
class PdeReductionStep:
    """expr -= coefficient · D^γ(equations[equation])"""
    equation: int
    gamma: Monomial
    coefficient: Polynomial


def pde_normal_form(expr: DiffExpression, system: PdeSystem,
                    skip_lead: bool = False) -> Tuple[DiffExpression, List[PdeReductionStep]]:
    """
    Janet 正规形：总是先约化最大的主导数项

    Args:
        skip_lead: 保留 expr 的首项不动（右约化）
    """
    spec = system.spec
    division = system.division
    lead_sets = system.lead_sets()
    tables = {r: division.table(U) for r, U in lead_sets.items()}
    by_lead = {e.lead: k for k, e in enumerate(system.equations)}
    protected = expr.lead(spec) if skip_lead and expr else None
    steps: List[PdeReductionStep] = []
    while True:
        target = None
        for k, c in expr.sorted_items(spec):
            if k == protected:
                continue
            v = division.divisor(lead_sets[k.r], k.alpha, tables[k.r]) if lead_sets.get(k.r) else None
            if v is not None:
                target = (k, c, v)
                break
        if target is None:
            return expr, steps
        k, c, v = target
        j = by_lead[DerivativeKey(v, k.r)]
        gamma = quotient(v, k.alpha)
        expr = expr - system.equations[j].expression.apply(gamma).scale(c)
        steps.append(PdeReductionStep(j, gamma, c))


def _track(certificate: DiffExpression, steps: Sequence[PdeReductionStep],
           equations: Sequence[LinearPdeEquation]) -> DiffExpression:
    for step in steps:
        certificate = certificate - equations[step.equation].certificate.apply(step.gamma).scale(step.coefficient)
    return certificate


def _as_combination(ring: PolynomialRing, steps: Sequence[PdeReductionStep]) -> DiffExpression:
    """把约化步骤写成以方程下标为键的组合 Σ c·D^γ E_j"""
    total = DiffExpression.zero(ring)
    for step in steps:
        total = total + DiffExpression.single(ring, DerivativeKey(step.gamma, step.equation), step.coefficient)
    return total


# ---------- Add / Combine ----------

def combine(ei: LinearPdeEquation, ej: LinearPdeEquation, spec: DerivativeOrderSpec) -> Optional[LinearPdeEquation]:
    """
    首导数相同的两个方程相减；结果为零返回 None

    Raises:
        DegenerateCombineError: 差的首系数不是常数
    """
    diff = ei.expression - ej.expression
    if not diff:
        return None
    return LinearPdeEquation.from_expression(diff, ei.certificate - ej.certificate, spec,
                                             f"{ei.label}-{ej.label}", "combine")


def add_equation(equations: List[LinearPdeEquation], eq: LinearPdeEquation,
                 spec: DerivativeOrderSpec) -> List[LinearPdeEquation]:
    """首导数为新时直接加入，否则与已有方程组合后递归加入"""
    equations = list(equations)
    pending: Optional[LinearPdeEquation] = eq
    while pending is not None:
        same = next((k for k, e in enumerate(equations) if e.lead == pending.lead), None)
        if same is None:
            equations.append(pending)
            break
        pending = combine(pending, equations[same], spec)
    return equations


# ---------- 自约化 ----------

def left_reduce(equations: List[LinearPdeEquation], context: VariableContext,
                spec: DerivativeOrderSpec) -> List[LinearPdeEquation]:
    """
    左约化：首导数 D^α φ^r 落在其余同函数首导数的 Janet 锥中时，
    用 D^γ E' 消去首项后重新加入；每次处理首导数最大的方程
    """
    division = JanetDivision(context)
    equations = list(equations)
    while True:
        candidates = []
        for i, e in enumerate(equations):
            others = frozenset(f.lead.alpha for j, f in enumerate(equations) if j != i and f.lead.r == e.lead.r)
            if not others:
                continue
            v = division.divisor(others, e.lead.alpha)
            if v is not None:
                candidates.append((spec.key(e.lead), i, v))
        if not candidates:
            return equations
        _, i, v = max(candidates, key=lambda item: item[0])
        e = equations[i]
        j = next(k for k, f in enumerate(equations) if f.lead == DerivativeKey(v, e.lead.r))
        gamma = quotient(v, e.lead.alpha)
        reducer = equations[j]
        expr = e.expression - reducer.expression.apply(gamma)
        cert = e.certificate - reducer.certificate.apply(gamma)
        logger.debug(f"左约化消去首导数 {e.lead.alpha.to_text(context)}")
        rest = [f for k, f in enumerate(equations) if k != i]
        if expr:
            rest = add_equation(rest, LinearPdeEquation.from_expression(expr, cert, spec, e.label, "left_reduce"), spec)
        equations = rest


def right_reduce(system: PdeSystem) -> PdeSystem:
    """右约化：每个方程的非首项都化为参数导数"""
    reduced = []
    for e in system.equations:
        expr, steps = pde_normal_form(e.expression, system, skip_lead=True)
        if steps:
            e = replace(e, expression=expr, certificate=_track(e.certificate, steps, system.equations))
        reduced.append(e)
    return system.with_equations(reduced)


def pde_autoreduce(system: PdeSystem) -> PdeSystem:
    """合并相同首导数、左约化、右约化，得到 J-自约化系统"""
    spec = system.spec
    equations: List[LinearPdeEquation] = []
    for e in system.equations:
        equations = add_equation(equations, e, spec)
    equations = left_reduce(equations, system.context, spec)
    return right_reduce(system.with_equations(equations))


# ---------- 完备化 ----------

def _incomplete_prolongations(system: PdeSystem) -> List[Tuple[tuple, int, int]]:
    division = system.division
    context = system.context
    lead_sets = system.lead_sets()
    tables = {r: division.table(U) for r, U in lead_sets.items()}
    found = []
    for idx, e in enumerate(system.equations):
        r, alpha = e.lead.r, e.lead.alpha
        for x in context.precedence:
            if x in tables[r][alpha]:
                continue
            w = alpha.times_variable(x)
            if division.divisor(lead_sets[r], w, tables[r]) is None:
                found.append((system.spec.key(DerivativeKey(w, r)), idx, context.rank(x), x))
    return [(key, idx, x) for key, idx, _, x in sorted(found)]


def pde_complete(system: PdeSystem, max_equations: int = 200, max_iterations: int = 500) -> PdeSystem:
    """
    完备化：反复加入最小的、首导数不在 Janet 锥中的非乘性延拓 D_x E

    Raises:
        CapExceededError: 方程个数或迭代次数超过上限
    """
    system = pde_autoreduce(system)
    for iteration in range(1, max_iterations + 1):
        pending = _incomplete_prolongations(system)
        if not pending:
            return system
        _, idx, x = pending[0]
        e = system.equations[idx]
        expr = e.expression.diff(x)
        cert = e.certificate.diff(x)
        expr, steps = pde_normal_form(expr, system, skip_lead=True)
        cert = _track(cert, steps, system.equations)
        new = LinearPdeEquation.from_expression(expr, cert, system.spec,
                                                f"{e.label}{x + 1}", "prolongation")
        logger.debug(f"完备化加入 {new.to_text(system.spec, system.unknowns)}")
        system = pde_autoreduce(system.with_equations(add_equation(system.equations, new, system.spec)))
        if len(system.equations) > max_equations:
            raise CapExceededError(f"完备化后方程个数超过上限 {max_equations}",
                                   {"equations": len(system.equations), "max_equations": max_equations})
    raise CapExceededError(f"完备化迭代次数超过上限 {max_iterations}", {"max_iterations": max_iterations})


def is_complete_system(system: PdeSystem) -> bool:
    division = system.division
    return all(is_locally_involutive(division, U).complete for U in system.lead_sets().values() if U)


def is_principal(system: PdeSystem, key: DerivativeKey) -> bool:
    """主导数：某个首导数的导数；否则为参数导数"""
    return cone_contains(system.lead_set(key.r), key.alpha)


# ---------- 可积条件 ----------

@dataclass
class IntegrabilityCheck:
    """方程 equation 关于非乘性变量 variable 的延拓及其正规形"""
    equation: int
    variable: int
    prolongation: DerivativeKey
    remainder: DiffExpression
    certificate: DiffExpression
    label: str = ""

    @property
    def trivial(self) -> bool:
        return not self.remainder

    def to_dict(self, system: PdeSystem) -> Dict[str, object]:
        name = system.name
        return {
            "label": self.label,
            "prolongation": name(self.prolongation),
            "trivial": self.trivial,
            "remainder": self.remainder.to_text(system.spec, name),
        }


def integrability_checks(system: PdeSystem) -> List[IntegrabilityCheck]:
    """
    每个首导数的每个非乘性变量一次检查

    Raises:
        IncompleteError: 首导数集合不完备
    """
    if not is_complete_system(system):
        raise IncompleteError("可积条件需要完备的系统",
                              {"leads": [system.name(e.lead) for e in system.equations]})
    division = system.division
    tables = {r: division.table(U) for r, U in system.lead_sets().items()}
    context = system.context
    checks = []
    for idx, e in enumerate(system.equations):
        for x in context.precedence:
            if x in tables[e.lead.r][e.lead.alpha]:
                continue
            remainder, steps = pde_normal_form(e.expression.diff(x), system)
            cert = _track(e.certificate.diff(x), steps, system.equations)
            checks.append(IntegrabilityCheck(idx, x, e.lead.shifted(Monomial.variable(context.n, x)),
                                             remainder, cert, f"{e.label}{x + 1}"))
    return checks


def integrability_conditions(system: PdeSystem) -> List[IntegrabilityCheck]:
    """非平凡的可积条件；为空当且仅当系统完全可积"""
    return [c for c in integrability_checks(system) if not c.trivial]


# ---------- 初始条件 ----------

def linear_initial_conditions(system: PdeSystem) -> InitialConditionTemplate:
    """每个未知函数按其首导数集合的补单项式给出任意函数"""
    if not is_complete_system(system):
        raise IncompleteError("初始条件需要完备的系统",
                              {"leads": [system.name(e.lead) for e in system.equations]})
    entries = []
    for r, U in system.lead_sets().items():
        comp = complementary_monomials(U, system.context) if U else None
        entries.extend(template_entries(comp, system.context, r))
    return InitialConditionTemplate(system.context, entries, system.unknowns)


# ---------- Janet 过程 ----------

class Verdict(str, Enum):
    """Janet 过程的结论"""
    CANONICAL = "canonical"
    OBSTRUCTION = "obstruction"


@dataclass
class JanetRound:
    """一轮：自约化、完备化后的首导数、延拓检查数与新增条件"""
    index: int
    leads: List[str]
    checks: List[IntegrabilityCheck]
    conditions: List[str]


@dataclass
class JanetResult:
    verdict: Verdict
    system: PdeSystem
    inputs: List[DiffExpression]
    rounds: List[JanetRound]
    added_conditions: List[LinearPdeEquation]
    obstruction: Optional[DiffExpression] = None
    backward: List[Optional[DiffExpression]] = field(default_factory=list)

    @property
    def canonical(self) -> bool:
        return self.verdict == Verdict.CANONICAL

    def verify_forward(self) -> bool:
        """每个输出方程都等于其证书在输入上的展开"""
        return all(e.certificate.substitute(self.inputs) == e.expression for e in self.system.equations)

    def verify_backward(self) -> bool:
        """每个输入方程都由输出方程及其导数组合得到"""
        outputs = [e.expression for e in self.system.equations]
        for expr, cert in zip(self.inputs, self.backward):
            if cert is None:
                return False
            if cert.substitute(outputs) != expr:
                return False
        return bool(self.backward) or not self.inputs


def backward_certificates(inputs: Sequence[DiffExpression], system: PdeSystem) -> List[Optional[DiffExpression]]:
    """输入方程对输出系统的正规形为 0 时给出组合，否则为 None"""
    result = []
    for expr in inputs:
        if not expr:
            result.append(DiffExpression.zero(system.ring))
            continue
        remainder, steps = pde_normal_form(expr, system)
        result.append(None if remainder else _as_combination(system.ring, steps))
    return result


def janet_procedure(system: PdeSystem, max_rounds: int = 10, max_equations: int = 200) -> JanetResult:
    """
    Janet 过程：自约化 → 完备化 → 可积条件；有非平凡条件时把它们并入系统重来

    只含零阶导数的条件视为障碍。

    Raises:
        CapExceededError: 轮数或方程个数超过上限
    """
    if not system.equations:
        raise EmptyInputError("PDE 系统没有方程")
    inputs = system.inputs or [e.expression for e in system.equations]
    spec = system.spec
    rounds: List[JanetRound] = []
    added: List[LinearPdeEquation] = []
    current = system
    for index in range(1, max_rounds + 1):
        current = pde_complete(current, max_equations=max_equations)
        checks = integrability_checks(current)
        nontrivial = [c for c in checks if not c.trivial]
        leads = [current.name(e.lead) for e in current.equations]
        logger.debug(f"Janet 第 {index} 轮: 首导数 {leads}，非平凡条件 {len(nontrivial)} 条")
        conditions: List[LinearPdeEquation] = []
        for c in nontrivial:
            if all(k.order == 0 for k in c.remainder.keys()):
                rounds.append(JanetRound(index, leads, checks, [c.remainder.to_text(spec, current.name) + " = 0"]))
                logger.info(f"Janet 过程遇到障碍: {c.remainder.to_text(spec, current.name)} = 0")
                return JanetResult(Verdict.OBSTRUCTION, current, inputs, rounds, added, c.remainder)
            conditions.append(LinearPdeEquation.from_expression(
                c.remainder, c.certificate, spec, f"C{len(added) + len(conditions) + 1}", "condition"))
        rounds.append(JanetRound(index, leads, checks,
                                 [e.to_text(spec, current.unknowns) for e in conditions]))
        if not conditions:
            result = JanetResult(Verdict.CANONICAL, current, inputs, rounds, added)
            result.backward = backward_certificates(inputs, current)
            logger.info(f"Janet 过程结束: {index} 轮，新增条件 {len(added)} 条，系统为 J-典范")
            return result
        added.extend(conditions)
        equations = list(current.equations)
        for e in conditions:
            equations = add_equation(equations, e, spec)
        current = current.with_equations(equations)
    raise CapExceededError(f"Janet 过程轮数超过上限 {max_rounds}", {"max_rounds": max_rounds})
