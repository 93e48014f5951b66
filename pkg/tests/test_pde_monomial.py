#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
单项式 PDE 系统：相容性条件、初始条件模板与不完备系统的完备化
"""
import pytest

from conftest import DATA_DIR, monos
from src.algebra.monomials import Monomial
from src.errors import EmptyInputError, IncompleteError, NotInSetError
from src.parser.pde_parser import load_pde
from src.pde.monomial_systems import (MonomialPdeSystem, apply_to_symbol, complete_monomial_system,
                                      mono_pde_compatibility, mono_pde_initial_conditions)

P26_COMPATIBILITY = {
    "∂f2/∂x4 = ∂f1/∂x3",
    "∂f3/∂x4 = ∂f1/∂x2",
    "∂f3/∂x3 = ∂f2/∂x2",
    "∂f4/∂x5 = ∂f1/∂x4",
    "∂f5/∂x5 = ∂f1/∂x3",
    "∂f5/∂x4 = ∂f4/∂x3",
    "∂f6/∂x5 = ∂f2/∂x3",
    "∂f6/∂x4 = ∂f5/∂x3",
}

P26_INITIAL = [
    "φ_{0,0,0,0,0}(x1,x2) at x3=x4=x5=0",
    "φ_{0,0,1,0,0}(x1,x2) at x3=x4=x5=0",
    "φ_{0,0,0,1,0}(x1,x2) at x3=x4=x5=0",
    "φ_{0,0,0,0,1}(x1,x5) at x2=x3=x4=0",
]


@pytest.fixture
def p26():
    return load_pde(DATA_DIR / "pde" / "p26.txt").monomial_system()


@pytest.fixture
def p28_system():
    return load_pde(DATA_DIR / "pde" / "p28.txt").monomial_system()


class TestSymbols:

    def test_apply_to_symbol(self, ctx3):
        x3, x3x1sq = monos(["x3", "x3*x1^2"], ctx3)
        assert apply_to_symbol("f1", x3, ctx3) == "∂f1/∂x3"
        assert apply_to_symbol("f1", x3x1sq, ctx3) == "∂^3f1/∂x3∂x1^2"
        assert apply_to_symbol("f1", Monomial.one(3), ctx3) == "f1"

    def test_default_symbols(self, ctx3, p28):
        system = MonomialPdeSystem(ctx3, p28)
        assert system.symbols == ["f1", "f2"]
        assert system.symbol_of(p28[1]) == "f2"
        with pytest.raises(NotInSetError):
            system.symbol_of(monos(["x1"], ctx3)[0])

    def test_duplicate_leads(self, ctx3, p28):
        with pytest.raises(ValueError):
            MonomialPdeSystem(ctx3, [p28[0], p28[0]])


class TestCompatibility:

    def test_p26(self, p26):
        conditions = mono_pde_compatibility(p26)
        assert len(conditions) == 8
        assert {c.to_text(p26.context) for c in conditions} == P26_COMPATIBILITY

    def test_incomplete_leads_rejected(self, p28_system):
        with pytest.raises(IncompleteError) as info:
            mono_pde_compatibility(p28_system)
        assert info.value.witness

    def test_empty(self, ctx3):
        with pytest.raises(EmptyInputError):
            mono_pde_compatibility(MonomialPdeSystem(ctx3, []))


class TestInitialConditions:

    def test_p26(self, p26):
        template = mono_pde_initial_conditions(p26)
        assert [e.to_text(p26.context) for e in template.entries] == P26_INITIAL
        assert template.degree_of_generality == 2
        assert template.functions_of_top_arity == 4

    def test_symbolic_base_point(self, p26):
        template = mono_pde_initial_conditions(p26)
        text = template.entries[0].to_text(p26.context, base_point="symbolic")
        assert text == "φ_{0,0,0,0,0}(x1,x2) at x3=x3^0, x4=x4^0, x5=x5^0"

    def test_to_dict(self, p26):
        data = mono_pde_initial_conditions(p26).to_dict()
        assert data["degree_of_generality"] == 2
        last = data["entries"][-1]
        assert last["arguments"] == ["x1", "x5"]
        assert last["locus"] == ["x2", "x3", "x4"]
        assert last["monomial"] == "x5"


class TestCompletion:

    def test_p28(self, p28_system):
        completed, derived = complete_monomial_system(p28_system)
        ctx = p28_system.context
        assert [d.to_text(ctx) for d in derived] == ["f3 = ∂f1/∂x3", "f4 = ∂f3/∂x3", "f5 = ∂f2/∂x2"]
        assert completed.symbols == ["f1", "f2", "f3", "f4", "f5"]

    def test_p28_initial_conditions(self, p28_system):
        completed, _ = complete_monomial_system(p28_system)
        template = mono_pde_initial_conditions(completed)
        assert len(template.entries) == 9
        assert template.entries[-1].to_text(completed.context) == "φ_{1,1,3}(x3) at x1=x2=0"

    def test_complete_system_unchanged(self, p26):
        completed, derived = complete_monomial_system(p26)
        assert derived == []
        assert completed.leads == p26.leads
