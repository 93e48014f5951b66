#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
任务管理器
一个 JobSpec 对应一次命令运行：读取输入、分派到算法、生成 JobReport

退出码：0 成功；1 领域错误（不完备、超过上限、非齐次等）；2 输入不可读或语法错误
"""
import json
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import toml
from loguru import logger

from src.algebra.monomials import MonomialOrder, OrderKind, VariableContext, WeightMatrix
from src.algebra.polynomials import classical_reduce, groebner_with_certificate
from src.analytics.characters import is_in_involution, predicted_characteristic
from src.analytics.hilbert import (as_monomials, characteristic_function, complementary_count,
                                   generality_from_complementary)
from src.errors import JanetError, ParseError
from src.involutive.bases import involutive_completion, involutive_decomposition, membership
from src.involutive.divisions import make_division, multiplicative_table
from src.involutive.monomial_completion import complementary_monomials, complete_set, is_complete
from src.parser.expressions import parse_polynomial
from src.parser.ideal_parser import ParsedIdeal, load_ideal
from src.parser.pde_parser import ParsedPde, load_pde
from src.pde.derivatives import DerivativeOrderKind
from src.pde.linear_systems import janet_procedure, linear_initial_conditions
from src.pde.monomial_systems import (complete_monomial_system, mono_pde_compatibility,
                                      mono_pde_initial_conditions)
from src.report.schemas import ErrorInfo, JobReport

COMMANDS = ("complete", "mult-vars", "comp-monomials", "invbasis", "groebner", "member",
            "hilbert", "characters", "pde analyze", "config")


@dataclass
class JobSpec:
    """一次命令运行的全部参数；None 表示取配置中的默认值"""
    command: str
    input_path: Optional[str] = None
    division: Optional[str] = None
    order: Optional[str] = None
    max_degree: Optional[int] = None
    as_json: bool = False
    p_max: Optional[int] = None
    degree: Optional[int] = None
    poly: Optional[str] = None
    extra: Dict[str, Any] = field(default_factory=dict)


def load_weight_file(path: str) -> Tuple[WeightMatrix, Dict[str, Tuple[int, ...]]]:
    """权重文件：rows = [[...], ...]，可选 [function_weights] 表"""
    try:
        data = toml.load(path)
    except OSError as e:
        raise ParseError(f"无法读取权重文件 {path}: {e}", text=path)
    except toml.TomlDecodeError as e:
        raise ParseError(f"权重文件格式错误: {e}", text=path)
    rows = data.get("rows")
    if not rows:
        raise ParseError("权重文件缺少 rows", text=path)
    try:
        weights = WeightMatrix(tuple(tuple(row) for row in rows))
    except (TypeError, ValueError) as e:
        raise ParseError(f"权重矩阵无效: {e}", text=path)
    functions = {name: tuple(int(c) for c in row) for name, row in data.get("function_weights", {}).items()}
    return weights, functions


class JobManager:
    """按命令名分派任务"""

    def __init__(self, settings):
        self.settings = settings
        self._handlers: Dict[str, Callable[[JobSpec], Tuple[Dict[str, Any], Dict[str, Any]]]] = {
            "complete": self._complete,
            "mult-vars": self._mult_vars,
            "comp-monomials": self._comp_monomials,
            "invbasis": self._invbasis,
            "groebner": self._groebner,
            "member": self._member,
            "hilbert": self._hilbert,
            "characters": self._characters,
            "pde analyze": self._pde_analyze,
            "config": self._config,
        }

    def run(self, job: JobSpec) -> JobReport:
        """执行任务；异常转换为带退出码的报告"""
        report = JobReport(command=job.command, input=job.input_path)
        handler = self._handlers.get(job.command)
        try:
            if handler is None:
                raise ParseError(f"未知命令: {job.command}")
            options, data = handler(job)
            report.options = options
            report.data = data
            logger.info(f"{job.command} 完成")
        except (ParseError, OSError, UnicodeDecodeError) as e:
            logger.error(f"{job.command} 输入错误: {e}")
            report.status, report.exit_code = "error", 2
            report.error = ErrorInfo.from_exception(e)
        except JanetError as e:
            logger.warning(f"{job.command} 失败: {e.message}")
            report.status, report.exit_code = "error", 1
            report.error = ErrorInfo.from_exception(e)
        return report

    # ---------- 公共参数 ----------

    def _require_input(self, job: JobSpec) -> str:
        if not job.input_path:
            raise ParseError(f"{job.command} 需要输入文件")
        return job.input_path

    def _division_name(self, job: JobSpec) -> str:
        return (job.division or self.settings.completion.default_division).lower()

    def _max_degree(self, job: JobSpec) -> int:
        return job.max_degree if job.max_degree is not None else self.settings.completion.max_degree

    def _monomial_order(self, job: JobSpec, ideal: ParsedIdeal) -> Tuple[MonomialOrder, str]:
        """--order 优先，其次输入文件的 order 行，最后取配置默认值"""
        text = job.order or ideal.order_kind or self.settings.completion.default_order
        if text.startswith("weight:"):
            weights, _ = load_weight_file(text.split(":", 1)[1])
            try:
                return MonomialOrder(ideal.context, OrderKind.WEIGHT, weights), text
            except (JanetError, ValueError) as e:
                raise ParseError(f"权重矩阵与变量不匹配: {e}", text=text)
        if text not in ("lex", "deglex"):
            raise ParseError(f"未知的单项式序: {text}", text=text)
        return MonomialOrder(ideal.context, text), text

    def _load_monomials(self, job: JobSpec):
        ideal = load_ideal(self._require_input(job))
        order, order_text = self._monomial_order(job, ideal)
        return ideal, ideal.monomials(), order, order_text

    @staticmethod
    def _texts(monomials, context: VariableContext) -> List[str]:
        return [m.to_text(context) for m in monomials]

    # ---------- 单项式命令 ----------

    def _complete(self, job: JobSpec):
        ideal, U, order, order_text = self._load_monomials(job)
        context = ideal.context
        division = make_division(self._division_name(job), context)
        result = complete_set(division, U, order, self._max_degree(job))
        completed = result.sorted(order)
        report = is_complete(division, result.monomials)
        options = {"division": division.kind.value, "order": order_text, "max_degree": self._max_degree(job)}
        data = {
            "input": self._texts(order.sorted(U, descending=True), context),
            "completed": self._texts(completed, context),
            "added": self._texts(result.added, context),
            "table": [p.to_dict(context) for p in multiplicative_table(division, result.monomials, order)],
            "identities": [i.to_text(context) for i in report.identities],
        }
        return options, data

    def _mult_vars(self, job: JobSpec):
        ideal, U, order, order_text = self._load_monomials(job)
        context = ideal.context
        division = make_division(self._division_name(job), context)
        options = {"division": division.kind.value, "order": order_text}
        data = {
            "table": [p.to_dict(context) for p in multiplicative_table(division, U, order)],
            "completeness": is_complete(division, U).to_dict(context),
        }
        return options, data

    def _comp_monomials(self, job: JobSpec):
        ideal, U, order, order_text = self._load_monomials(job)
        context = ideal.context
        comp = complementary_monomials(U, context, order)
        lam, mu = comp.generality()
        options = {"division": "janet", "order": order_text}
        data = dict(comp.to_dict(order))
        data["monomials"] = self._texts(order.sorted(comp.monomials(), descending=True), context)
        data["lambda"] = lam
        data["mu"] = mu
        return options, data

    # ---------- 多项式命令 ----------

    def _basis(self, job: JobSpec):
        ideal = load_ideal(self._require_input(job))
        order, order_text = self._monomial_order(job, ideal)
        polys = ideal.polynomials(order)
        division = make_division(self._division_name(job), ideal.context)
        result = involutive_completion(polys, division, order, self._max_degree(job),
                                       self.settings.completion.max_iterations)
        return ideal, polys, order_text, result

    def _invbasis(self, job: JobSpec):
        ideal, polys, order_text, result = self._basis(job)
        context = ideal.context
        groebner = result.groebner
        options = {"division": result.scheme.value, "order": order_text, "max_degree": self._max_degree(job)}
        data = {
            "input": [f.to_text() for f in polys],
            "basis": [g.to_text() for g in result.basis],
            "table": [p.to_dict(context) for p in result.multiplicative_table()],
            "iterations": result.iterations,
            "certificates": {
                "prolongations": len(result.certificates),
                "verified": result.verify_certificates(),
            },
            "groebner": {
                "passed": bool(groebner and groebner.passed),
                "pairs_checked": groebner.pairs_checked if groebner else 0,
            },
        }
        return options, data

    def _groebner(self, job: JobSpec):
        ideal = load_ideal(self._require_input(job))
        order, order_text = self._monomial_order(job, ideal)
        polys = ideal.polynomials(order)
        cfg = self.settings.groebner
        max_degree = job.max_degree if job.max_degree is not None else cfg.max_degree
        result = groebner_with_certificate(polys, order, max_pairs=cfg.max_pairs, max_degree=max_degree)
        options = {"order": order_text, "max_degree": max_degree, "max_pairs": cfg.max_pairs}
        data = {
            "input": [f.to_text() for f in polys],
            "basis": [g.to_text() for g in result.basis],
            "pairs_processed": result.pairs_processed,
            "certificate_verified": result.verify(),
        }
        return options, data

    def _member(self, job: JobSpec):
        if not job.poly:
            raise ParseError("member 需要 --poly")
        ideal, polys, order_text, result = self._basis(job)
        ring = polys[0].ring if polys else ideal.ring()
        f = parse_polynomial(job.poly, ring)
        is_member = membership(f, result)
        classical = classical_reduce(f, result.basis).remainder if result.basis else f
        decomposition = involutive_decomposition(f, result.basis, result.division) if result.basis else None
        options = {"division": result.scheme.value, "order": order_text, "poly": job.poly}
        data = {
            "polynomial": f.to_text(),
            "member": is_member,
            "classical_agrees": classical.is_zero() == is_member,
            "basis": [g.to_text() for g in result.basis],
            "decomposition": [
                {"generator": result.basis[i].to_text(), "cofactor": v.to_text(ring.context), "coefficient": str(c)}
                for i, v, c in sorted(decomposition.terms, key=lambda t: (t[0], t[1].exponents))
            ] if decomposition else [],
        }
        return options, data

    # ---------- 特征函数 ----------

    def _generators(self, ideal: ParsedIdeal) -> List:
        monos = as_monomials(ideal.generators)
        return monos if monos is not None else list(ideal.generators)

    def _hilbert(self, job: JobSpec):
        ideal = load_ideal(self._require_input(job))
        cfg = self.settings.analytics
        p_max = job.p_max if job.p_max is not None else cfg.p_max
        gens = self._generators(ideal)
        profile = characteristic_function(gens, ideal.context.n, p_max,
                                          stabilization_points=cfg.stabilization_points)
        options = {"p_max": p_max, "stabilization_points": cfg.stabilization_points}
        data = profile.to_dict()
        monos = as_monomials(ideal.generators)
        if monos:
            lam, mu = generality_from_complementary(monos, ideal.context)
            data["complementary"] = {
                "lambda": lam,
                "mu": mu,
                "counts_agree": all(complementary_count(monos, ideal.context, p) == v
                                    for p, v in profile.values.items()),
            }
        return options, data

    def _characters(self, job: JobSpec):
        if job.degree is None:
            raise ParseError("characters 需要 --degree")
        ideal = load_ideal(self._require_input(job))
        report = is_in_involution(self._generators(ideal), ideal.context, job.degree)
        data = report.to_dict()
        if report.in_involution:
            chars = report.characters
            data["predicted"] = {str(P): predicted_characteristic(chars, P) for P in range(job.degree, job.degree + 5)}
        options = {"degree": job.degree}
        return options, data

    # ---------- PDE ----------

    def _derivative_spec(self, job: JobSpec, pde: ParsedPde):
        kind, weights = None, None
        text = job.order
        if text:
            if text.startswith("weight:"):
                weights, functions = load_weight_file(text.split(":", 1)[1])
                kind = DerivativeOrderKind.WEIGHT.value
                if functions:
                    pde.function_weights.update(functions)
            elif text in {k.value for k in DerivativeOrderKind}:
                kind = text
            elif text == "deglex":
                kind = DerivativeOrderKind.JANET_DEGLEX.value
            else:
                raise ParseError(f"未知的导数序: {text}", text=text)
        return pde.spec(kind, weights)

    def _pde_analyze(self, job: JobSpec):
        pde = load_pde(self._require_input(job))
        cfg = self.settings.pde
        base_point = job.extra.get("base_point") or cfg.base_point
        if pde.is_monomial_system:
            return self._monomial_pde(job, pde, base_point)
        spec = self._derivative_spec(job, pde)
        system = pde.linear_system(spec)
        result = janet_procedure(system, cfg.max_rounds, cfg.max_equations)
        options = {"order": spec.kind.value, "max_rounds": cfg.max_rounds, "base_point": base_point}
        data: Dict[str, Any] = {
            "kind": "linear",
            "verdict": result.verdict.value,
            "rounds": [
                {
                    "round": r.index,
                    "leads": r.leads,
                    "checks": [c.to_dict(result.system) for c in r.checks],
                    "conditions": r.conditions,
                }
                for r in result.rounds
            ],
            "added_conditions": [e.to_text(spec, result.system.unknowns) for e in result.added_conditions],
            "system": result.system.to_dict()["equations"],
        }
        if result.canonical:
            data["summary"] = ("completely integrable after completion" if result.added_conditions
                               else "completely integrable")
            data["certificates"] = {"forward": result.verify_forward(), "backward": result.verify_backward()}
            data["initial_conditions"] = linear_initial_conditions(result.system).to_dict(base_point)
        else:
            data["summary"] = "obstruction"
            data["obstruction"] = result.obstruction.to_text(spec, result.system.name) + " = 0"
        return options, data

    def _monomial_pde(self, job: JobSpec, pde: ParsedPde, base_point: str):
        system = pde.monomial_system()
        context = system.context
        completed, derived = complete_monomial_system(system, self._max_degree(job))
        conditions = mono_pde_compatibility(completed)
        template = mono_pde_initial_conditions(completed)
        options = {"division": "janet", "base_point": base_point}
        data = {
            "kind": "monomial",
            "leads": self._texts(completed.leads, context),
            "added_leads": [{"lead": d.lead.to_text(context), "definition": d.to_text(context)} for d in derived],
            "compatibility": [c.to_text(context) for c in conditions],
            "initial_conditions": template.to_dict(base_point),
        }
        return options, data

    def _config(self, job: JobSpec):
        return {}, json.loads(self.settings.to_json())


def run_job(job: JobSpec, settings) -> JobReport:
    return JobManager(settings).run(job)
