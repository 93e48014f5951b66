#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
线性 PDE 系统的 Janet 过程
导数序、完备化、可积条件、证书与初始条件
"""
import pytest

from conftest import DATA_DIR
from src.algebra.monomials import Comparison, Monomial
from src.errors import CapExceededError, IncompleteError, ParseError
from src.jobs.job_manager import load_weight_file
from src.parser.pde_parser import load_pde, parse_pde_text
from src.pde.derivatives import (DerivativeKey, DerivativeOrderKind, DerivativeOrderSpec, compare_derivatives,
                                 phi, phi_inv)
from src.pde.linear_systems import (Verdict, integrability_checks, is_principal, janet_procedure,
                                    linear_initial_conditions, pde_complete)

SEC44_MULT = {
    "p54": ["x5", "x4", "x3", "x2", "x1"],
    "p53": ["x5", "x3", "x2", "x1"],
    "p52": ["x5", "x2", "x1"],
    "p44": ["x4", "x3", "x2", "x1"],
    "p43": ["x3", "x2", "x1"],
    "p33": ["x3", "x2", "x1"],
}

SEC44_CHECKS = ["B4", "C4", "C3", "D5", "E5", "E4", "F5", "F4"]

SEC44_INITIAL = [
    "φ_{0,0,0,0,0}(x1,x2) at x3=x4=x5=0",
    "φ_{0,0,1,0,0}(x1,x2) at x3=x4=x5=0",
    "φ_{0,0,0,1,0}(x1,x2) at x3=x4=x5=0",
    "φ_{0,0,0,0,1}(x1,x5) at x2=x3=x4=0",
]

SEC47_LEADS = {"p33", "p322", "p3211", "p31111", "p22", "p211", "p1111"}


@pytest.fixture(scope="module")
def sec44():
    parsed = load_pde(DATA_DIR / "pde" / "sec44.txt")
    return janet_procedure(parsed.linear_system())


@pytest.fixture(scope="module")
def sec47():
    parsed = load_pde(DATA_DIR / "pde" / "sec47.txt")
    return janet_procedure(parsed.linear_system())


def key(*exps, r=0):
    return DerivativeKey(Monomial(tuple(exps)), r)


class TestDerivatives:

    def test_jet_name(self):
        assert key(2, 1, 0).jet_name(("u",)) == "p211"
        assert key(0, 0, 0).jet_name(("u",)) == "u"
        assert key(1, 0, r=1).jet_name(("u", "v")) == "v_p1"
        assert key(2, 1, 0).to_text(("u",)) == "d[2,1,0] u"

    def test_janet_deglex(self, ctx3):
        spec = DerivativeOrderSpec(ctx3)
        assert compare_derivatives(spec, key(0, 1, 1), key(2, 0, 0)) == Comparison.GREATER
        assert compare_derivatives(spec, key(1, 0, 0), key(0, 0, 2)) == Comparison.LESS
        assert compare_derivatives(spec, key(1, 1, 0), key(1, 1, 0)) == Comparison.EQUAL

    def test_function_index_breaks_ties(self, ctx3):
        spec = DerivativeOrderSpec(ctx3, n_functions=2)
        assert compare_derivatives(spec, key(1, 0, 0, r=1), key(1, 0, 0)) == Comparison.GREATER

    def test_canonical_weight_prefers_function(self, ctx3):
        spec = DerivativeOrderSpec(ctx3, 2, DerivativeOrderKind.CANONICAL_WEIGHT)
        assert compare_derivatives(spec, key(1, 0, 0, r=1), key(0, 0, 1)) == Comparison.GREATER

    def test_weight(self, ctx5):
        weights, _ = load_weight_file(str(DATA_DIR / "weights" / "sec44.toml"))
        spec = DerivativeOrderSpec(ctx5, 1, "weight", weights)
        # x4*x5 的第一权重 3 大于 x1^2 的 2
        assert compare_derivatives(spec, key(0, 0, 0, 1, 1), key(2, 0, 0, 0, 0)) == Comparison.GREATER

    def test_weight_needs_matrix(self, ctx3):
        with pytest.raises(ValueError):
            DerivativeOrderSpec(ctx3, 1, "weight")

    def test_phi(self, ctx3):
        u = Monomial((2, 0, 1))
        assert phi(u, ctx3) == "∂^3/∂x1^2∂x3"
        assert phi_inv(phi(u, ctx3), ctx3) == u
        assert phi(Monomial.one(3), ctx3) == "id"
        assert phi_inv("id", ctx3) == Monomial.one(3)

    @pytest.mark.parametrize("text", ["∂^2/∂x1", "∂/∂x9", "d/dx1"])
    def test_phi_inv_rejects(self, ctx3, text):
        with pytest.raises(ParseError):
            phi_inv(text, ctx3)


class TestWeightOrderExample:
    """二阶方程组，权重序下一轮即为典范"""

    def test_verdict(self, sec44):
        assert sec44.verdict == Verdict.CANONICAL
        assert len(sec44.rounds) == 1
        assert sec44.added_conditions == []
        assert not sec44.rounds[0].conditions

    def test_integrability_check_labels(self, sec44):
        """每个非乘性变量一次检查，标签为方程名加变量下标，全部平凡"""
        checks = integrability_checks(sec44.system)
        assert sorted(c.label for c in checks) == sorted(SEC44_CHECKS)
        assert all(c.trivial for c in checks)

    def test_multiplicative_variables(self, sec44):
        equations = sec44.system.to_dict()["equations"]
        assert {e["lead"]: e["mult"] for e in equations} == SEC44_MULT

    def test_certificates(self, sec44):
        assert sec44.verify_forward()
        assert sec44.verify_backward()

    def test_initial_conditions(self, sec44):
        template = linear_initial_conditions(sec44.system)
        assert [e.to_text(sec44.system.context) for e in template.entries] == SEC44_INITIAL
        assert template.degree_of_generality == 2

    def test_weight_file_gives_same_leads(self, sec44):
        parsed = load_pde(DATA_DIR / "pde" / "sec44.txt")
        weights, _ = load_weight_file(str(DATA_DIR / "weights" / "sec44.toml"))
        result = janet_procedure(parsed.linear_system(parsed.spec("weight", weights)))
        assert {e["lead"] for e in result.system.to_dict()["equations"]} == set(SEC44_MULT)


class TestVariableCoefficients:
    """变系数示例：完备化加入 p322，随后两轮各得到一个可积条件"""

    def test_rounds(self, sec47):
        assert sec47.verdict == Verdict.CANONICAL
        assert len(sec47.rounds) == 3
        assert "p322" in sec47.rounds[0].leads
        assert sec47.rounds[0].conditions[0].startswith("p211")
        assert sec47.rounds[1].conditions[0].startswith("p1111")
        assert sec47.rounds[2].conditions == []
        assert len(sec47.added_conditions) == 2

    def test_final_leads(self, sec47):
        assert {e["lead"] for e in sec47.system.to_dict()["equations"]} == SEC47_LEADS

    def test_certificates(self, sec47):
        assert sec47.verify_forward()
        assert sec47.verify_backward()

    def test_principal_derivatives(self, sec47):
        assert is_principal(sec47.system, key(0, 0, 2))
        assert is_principal(sec47.system, key(5, 0, 0))
        assert not is_principal(sec47.system, key(1, 0, 0))
        assert not is_principal(sec47.system, key(3, 0, 1))

    def test_final_system_has_trivial_checks(self, sec47):
        assert all(c.trivial for c in integrability_checks(sec47.system))

    def test_round_cap(self):
        parsed = load_pde(DATA_DIR / "pde" / "sec47.txt")
        with pytest.raises(CapExceededError):
            janet_procedure(parsed.linear_system(), max_rounds=1)


class TestObstruction:

    def test_zero_order_condition(self):
        """u_x1 = x2·u 与 u_x2 = 0 相容要求 u = 0"""
        parsed = parse_pde_text("vars x1 x2\neq: d[1,0] u = x2 * u\neq: d[0,1] u = 0\n")
        result = janet_procedure(parsed.linear_system())
        assert result.verdict == Verdict.OBSTRUCTION
        assert result.obstruction is not None
        assert all(k.order == 0 for k in result.obstruction.keys())

    def test_checks_need_complete_system(self):
        parsed = parse_pde_text("vars x1 x2 x3\neq: d[0,0,2] u = x2 * d[2,0,0] u\neq: d[0,2,0] u = 0\n")
        system = parsed.linear_system()
        with pytest.raises(IncompleteError):
            integrability_checks(system)
        assert integrability_checks(pde_complete(system))
