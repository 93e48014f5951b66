#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
单项式集合的补集、自约化、完备性判定与完备化
"""
import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from loguru import logger

from src.algebra.monomials import (Monomial, MonomialOrder, VariableContext, cone_contains,
                                   monomials_up_to_degree, quotient)
from src.errors import CapExceededError, EmptyInputError
from src.involutive.divisions import InvolutiveDivision, JanetDivision, MultiplicativePartition


# ---------- 补单项式 ----------

@dataclass
class ComplementarySet:
    """
    补单项式集合

    strata[var] 为按变量 var 构造的层（最高优先级变量对应 ℂ_n），
    assignments 给出每个补单项式的乘性变量划分
    """
    context: VariableContext
    strata: Dict[int, List[Monomial]]
    assignments: Dict[Monomial, MultiplicativePartition]

    def monomials(self) -> List[Monomial]:
        """按层（最高变量在前）及层内升序排列"""
        return [m for var in self.context.precedence for m in self.strata.get(var, [])]

    def contains(self, w: Monomial) -> Optional[Monomial]:
        """w 所在的补锥的生成元，不在补锥中时返回 None"""
        for c, part in self.assignments.items():
            if c.divides(w) and all(i in part.mult for i in quotient(c, w).support()):
                return c
        return None

    def generality(self) -> Tuple[int, int]:
        """(λ, μ)：最大乘性变量个数及达到该值的补单项式个数"""
        counts = [len(p.mult) for p in self.assignments.values()]
        top = max(counts, default=0)
        if top == 0:
            return 0, 0
        return top, counts.count(top)

    def to_dict(self, order: Optional[MonomialOrder] = None) -> Dict[str, object]:
        """给出 order 时每层及 assignments 按该序从大到小排列"""
        ctx = self.context

        def arrange(ms: List[Monomial]) -> List[Monomial]:
            return order.sorted(ms, descending=True) if order is not None else list(ms)

        return {
            "strata": {
                ctx.names[var]: [m.to_text(ctx) for m in arrange(self.strata.get(var, []))]
                for var in ctx.precedence
            },
            "assignments": [self.assignments[m].to_dict(ctx) for m in arrange(self.monomials())],
        }


def complementary_monomials(U: Iterable[Monomial], context: VariableContext,
                            order: Optional[MonomialOrder] = None) -> ComplementarySet:
    """Janet 意义下的补单项式集合及其乘性变量"""
    U = frozenset(U)
    if not U:
        raise EmptyInputError("补单项式需要非空集合")
    order = order or MonomialOrder(context)
    n = context.n
    precedence = context.precedence
    full = frozenset(range(n))

    def prefix_of(u: Monomial, t: int) -> Tuple[int, ...]:
        return tuple(u[precedence[s]] for s in range(t))

    def prefix_mult(prefix: Tuple[int, ...]) -> set:
        # 前缀上的高优先级变量是否乘性：与前缀在更高变量上一致的元素中，该变量次数达到最大
        mult = set()
        for s, value in enumerate(prefix):
            group = [u for u in U if prefix_of(u, s) == prefix[:s]]
            if group and value == max(u[precedence[s]] for u in group):
                mult.add(precedence[s])
        return mult

    strata: Dict[int, List[Monomial]] = {}
    assignments: Dict[Monomial, MultiplicativePartition] = {}
    for t, var in enumerate(precedence):
        lower = set(precedence[t + 1:])
        classes: Dict[Tuple[int, ...], List[Monomial]] = {}
        for u in U:
            classes.setdefault(prefix_of(u, t), []).append(u)
        found: List[Monomial] = []
        for prefix, members in classes.items():
            present = {u[var] for u in members}
            top = max(present)
            mult = frozenset(lower | prefix_mult(prefix))
            for beta in range(top):
                if beta in present:
                    continue
                exps = [0] * n
                for s, value in enumerate(prefix):
                    exps[precedence[s]] = value
                exps[var] = beta
                c = Monomial(tuple(exps))
                found.append(c)
                assignments[c] = MultiplicativePartition(c, mult, full - mult)
        if found:
            strata[var] = order.sorted(found)
    return ComplementarySet(context, strata, assignments)


def complementary_cone_contains(comp: ComplementarySet, w: Monomial) -> bool:
    return comp.contains(w) is not None


# ---------- 自约化 ----------

def autoreduce_monomials(division: InvolutiveDivision, U: Iterable[Monomial]) -> FrozenSet[Monomial]:
    """反复删去可被其它元素对合整除的单项式，直到不动点"""
    current = set(U)
    precedence = division.context.precedence
    while True:
        table = division.table(current)
        removable = [
            w for w in current
            if any(u != w and division.divides(u, w, table[u]) for u in current)
        ]
        if not removable:
            return frozenset(current)
        victim = max(removable, key=lambda w: tuple(w[i] for i in precedence))
        logger.debug(f"自约化删除 {victim.to_text(division.context)}")
        current.discard(victim)


# ---------- 完备性 ----------

@dataclass(frozen=True)
class CompletenessIdentity:
    """完备性恒等式 u·x = v·γ，v 为 u·x 的对合因子"""
    monomial: Monomial
    variable: int
    divisor: Monomial
    cofactor: Monomial

    def to_text(self, context: VariableContext) -> str:
        left = f"{self.monomial.to_text(context)}.{context.names[self.variable]}"
        right = self.divisor.to_text(context)
        if not self.cofactor.is_one:
            right = f"{right}.{self.cofactor.to_text(context)}"
        return f"{left}={right}"


@dataclass
class CompletenessReport:
    """完备性判定结果；失败时 witness 为 (u, x) 或全局检查中的反例单项式"""
    complete: bool
    witness: Optional[Tuple[Monomial, int]] = None
    witness_monomial: Optional[Monomial] = None
    identities: List[CompletenessIdentity] = field(default_factory=list)
    method: str = "local"

    def __bool__(self) -> bool:
        return self.complete

    def to_dict(self, context: VariableContext) -> Dict[str, object]:
        data: Dict[str, object] = {
            "complete": self.complete,
            "method": self.method,
            "identities": [i.to_text(context) for i in self.identities],
        }
        if self.witness is not None:
            u, x = self.witness
            data["witness"] = {"monomial": u.to_text(context), "variable": context.names[x]}
        if self.witness_monomial is not None:
            data["witness_monomial"] = self.witness_monomial.to_text(context)
        return data


def _ranked(U: Iterable[Monomial], context: VariableContext) -> List[Monomial]:
    precedence = context.precedence
    return sorted(U, key=lambda u: tuple(u[i] for i in precedence), reverse=True)


def is_locally_involutive(division: InvolutiveDivision, U: Iterable[Monomial]) -> CompletenessReport:
    """局部检查：每个非乘性延拓 u·x 都在对合锥中"""
    U = frozenset(U)
    context = division.context
    table = division.table(U)
    identities: List[CompletenessIdentity] = []
    for u in _ranked(U, context):
        nonmult = [i for i in context.precedence if i not in table[u]]
        for x in nonmult:
            w = u.times_variable(x)
            v = division.divisor(U, w, table)
            if v is None:
                return CompletenessReport(False, witness=(u, x), identities=identities)
            identities.append(CompletenessIdentity(u, x, v, quotient(v, w)))
    return CompletenessReport(True, identities=identities)


def is_involutive(division: InvolutiveDivision, U: Iterable[Monomial], degree_cap: int) -> CompletenessReport:
    """全局检查：次数不超过 degree_cap 的单项式上对合锥等于锥"""
    U = frozenset(U)
    table = division.table(U)
    for w in monomials_up_to_degree(division.context.n, degree_cap):
        if cone_contains(U, w) and division.divisor(U, w, table) is None:
            return CompletenessReport(False, witness_monomial=w, method="global")
    return CompletenessReport(True, method="global")


def is_complete(division: InvolutiveDivision, U: Iterable[Monomial],
                degree_cap: Optional[int] = None) -> CompletenessReport:
    """
    完备性判定

    连续除法（Janet/Thomas/Pommaret）使用局部检查；
    表驱动除法不保证连续，使用有界的全局检查
    """
    U = frozenset(U)
    if division.is_continuous:
        return is_locally_involutive(division, U)
    if degree_cap is None:
        degree_cap = max((u.degree for u in U), default=0) + division.context.n + 1
    return is_involutive(division, U, degree_cap)


def completeness_identities(division: InvolutiveDivision, U: Iterable[Monomial]) -> List[CompletenessIdentity]:
    return is_locally_involutive(division, U).identities


def is_complete_inductive(U: Iterable[Monomial], context: VariableContext) -> bool:
    """
    Janet 的归纳判据：按最高变量次数分类 [α_1] < … < [α_k]，
    各类投影完备，且每一类投影包含在下一类投影的对合锥中
    """
    return _inductive(frozenset(U), context.precedence, context.n)


def _inductive(U: FrozenSet[Monomial], variables: Tuple[int, ...], n: int) -> bool:
    if not variables or len(U) <= 1:
        return True
    top, rest = variables[0], variables[1:]

    def project(u: Monomial) -> Monomial:
        exps = list(u.exponents)
        exps[top] = 0
        return Monomial(tuple(exps))

    classes: Dict[int, FrozenSet[Monomial]] = {}
    for d in sorted({u[top] for u in U}):
        classes[d] = frozenset(project(u) for u in U if u[top] == d)
    for cls in classes.values():
        if not _inductive(cls, rest, n):
            return False
    # 被投影掉的变量排在最低优先级，投影后其次数恒为 0
    janet = JanetDivision(VariableContext.standard(n, precedence=rest + tuple(i for i in range(n) if i not in rest)))
    top_degree = max(classes)
    for d, lower in classes.items():
        if d == top_degree:
            continue
        upper = classes.get(d + 1, frozenset())
        table = janet.table(upper)
        for v in lower:
            if janet.divisor(upper, v, table) is None:
                return False
    return True


# ---------- 完备化 ----------

@dataclass
class CompletionResult:
    """完备化结果：最终集合及按加入顺序记录的新单项式"""
    monomials: FrozenSet[Monomial]
    added: List[Monomial]

    def sorted(self, order: MonomialOrder, descending: bool = True) -> List[Monomial]:
        return order.sorted(self.monomials, descending=descending)


def complete_set(division: InvolutiveDivision, U: Iterable[Monomial], order: MonomialOrder,
                 degree_cap: int = 50) -> CompletionResult:
    """
    单项式集合的对合完备化：保留全部输入，每次加入不在对合锥中的最小非乘性延拓

    Raises:
        EmptyInputError: 输入为空
        CapExceededError: 新单项式次数超过 degree_cap
    """
    U = frozenset(U)
    if not U:
        raise EmptyInputError("完备化需要非空集合")
    context = division.context
    current = set(U)
    added: List[Monomial] = []
    while True:
        table = division.table(current)
        candidates = set()
        for u in current:
            for x in range(context.n):
                if x in table[u]:
                    continue
                w = u.times_variable(x)
                if division.divisor(current, w, table) is None:
                    candidates.add(w)
        if not candidates:
            break
        w = order.min(candidates)
        if w.degree > degree_cap:
            raise CapExceededError(
                f"完备化中的单项式次数超过上限 {degree_cap}",
                {"monomial": w.to_text(context), "degree_cap": degree_cap},
            )
        logger.debug(f"完备化加入 {w.to_text(context)}")
        current.add(w)
        added.append(w)
    return CompletionResult(frozenset(current), added)


# ---------- 公理检查 ----------

@dataclass
class AxiomReport:
    """对合除法公理 i)–vi) 的检查结果"""
    passed: bool
    failed_axiom: Optional[str] = None
    counterexample: Dict[str, object] = field(default_factory=dict)
    checks: int = 0


def axiom_check(division: InvolutiveDivision, U: Iterable[Monomial], degree_cap: int) -> AxiomReport:
    """在次数不超过 degree_cap 的见证上检查公理 i)–vi)"""
    U = frozenset(U)
    context = division.context
    n = context.n
    text = lambda m: m.to_text(context)
    table = division.table(U)
    W = list(monomials_up_to_degree(n, degree_cap))
    checks = 0

    def fail(axiom: str, **witness) -> AxiomReport:
        return AxiomReport(False, axiom, {k: text(v) if isinstance(v, Monomial) else v
                                          for k, v in witness.items()}, checks)

    def idiv(u: Monomial, w: Monomial, mult=None) -> bool:
        return division.divides(u, w, table[u] if mult is None else mult)

    for u in U:
        checks += 1
        if not idiv(u, u):
            return fail("ii", u=u)
        for w in W:
            checks += 1
            if idiv(u, w) and not u.divides(w):
                return fail("i", u=u, w=w)

    for u in U:
        budget = degree_cap - u.degree
        if budget < 0:
            continue
        small = list(monomials_up_to_degree(n, budget))
        for v in small:
            for w in small:
                if v.degree + w.degree > budget:
                    continue
                checks += 1
                both = idiv(u, u * v) and idiv(u, u * w)
                if both != idiv(u, u * v * w):
                    return fail("iii", u=u, v=v, w=w)

    for w in W:
        divisors = [u for u in U if idiv(u, w)]
        for a, b in itertools.combinations(divisors, 2):
            checks += 1
            if not (idiv(a, b) or idiv(b, a)):
                return fail("iv", u=a, u_prime=b, w=w)
        for a in divisors:
            for b in U:
                checks += 1
                if idiv(b, a) and not idiv(b, w):
                    return fail("v", u=b, u_prime=a, w=w)

    members = sorted(U, key=lambda m: m.exponents)
    for size in range(1, len(members) + 1):
        for subset in itertools.combinations(members, size):
            sub_table = division.table(subset)
            for u in subset:
                if u.degree + 1 > degree_cap:
                    continue
                checks += 1
                lost = table[u] - sub_table[u]
                if lost:
                    x = min(lost)
                    return fail("vi", u=u, w=u.times_variable(x), subset=[text(m) for m in subset])
    return AxiomReport(True, checks=checks)
