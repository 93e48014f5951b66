#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
多项式对合基：对合正规形、完备化、证书、成员判定
"""
from fractions import Fraction

import pytest

from src.algebra.monomials import Monomial, monomials_up_to_degree
from src.algebra.polynomials import (PolynomialRing, buchberger_oracle, classical_reduce, is_groebner_basis,
                                     same_ideal)
from src.errors import CapExceededError, NotInSetError
from src.involutive.bases import (inv_autoreduce, inv_normal_form, involutive_completion, involutive_decomposition,
                                  is_involutive_basis, membership, poly_mult_vars)
from src.involutive.divisions import JanetDivision, PommaretDivision, ThomasDivision

SEC52 = ["x2^2 - 2*x1*x2 + 1", "x1*x2 - 3*x1^2 - 1"]
SEC52_BASIS = ["x1*x2 - 3*x1^2 - 1", "x2^2 - 6*x1^2 - 1", "x1^3 + 2/3*x1 + 1/3*x2"]


@pytest.fixture
def janet2(ctx2):
    return JanetDivision(ctx2)


@pytest.fixture
def sec52(poly2, janet2):
    return involutive_completion([poly2(t) for t in SEC52], janet2)


def random_polynomial(rng, ring, max_degree=2, terms=3):
    pool = list(monomials_up_to_degree(ring.n, max_degree))
    f = ring.zero()
    for m in rng.sample(pool, terms):
        f = f + ring.monomial(m, Fraction(rng.randint(-4, 4)))
    return f


def random_ideal(rng, ring, max_generators, max_degree, terms=3):
    """非空的随机生成元列表"""
    while True:
        F = [random_polynomial(rng, ring, max_degree, rng.randint(1, terms))
             for _ in range(rng.randint(1, max_generators))]
        F = [f for f in F if f]
        if F:
            return F


class TestNormalForm:

    def test_irreducible_remainder(self, poly2, janet2):
        G = [poly2(t) for t in SEC52_BASIS]
        table = janet2.table({g.LM for g in G})
        r = inv_normal_form(janet2, poly2("x2^3*x1 + x1^5 - 7"), G).remainder
        for m in r.monomials():
            assert janet2.divisor({g.LM for g in G}, m, table) is None

    def test_random_selection_gives_same_remainder(self, poly2, janet2, rng):
        """对合正规形与约化顺序无关"""
        G = [poly2(t) for t in SEC52_BASIS]
        f = poly2("x2^4 + 3*x2^2*x1 - x1^4 + x1*x2 + 2")
        expected = inv_normal_form(janet2, f, G).remainder
        for _ in range(10):
            trace = inv_normal_form(janet2, f, G, selection="random", rng=rng)
            assert trace.remainder == expected
            assert trace.verify(G)

    def test_random_triples(self, rng):
        """对合基上的正规形可加，且与约化顺序无关"""
        ring = PolynomialRing.standard(2)
        janet = JanetDivision(ring.context)
        for _ in range(10):
            G = involutive_completion(random_ideal(rng, ring, 3, 3), janet).basis
            for _ in range(10):
                f = random_polynomial(rng, ring, 4, 4)
                g = random_polynomial(rng, ring, 4, 4)
                nf_f = inv_normal_form(janet, f, G).remainder
                nf_g = inv_normal_form(janet, g, G).remainder
                assert inv_normal_form(janet, f + g, G).remainder == nf_f + nf_g
                assert inv_normal_form(janet, f, G, selection="random", rng=rng).remainder == nf_f

    def test_unknown_selection(self, poly2, janet2):
        with pytest.raises(ValueError):
            inv_normal_form(janet2, poly2("x1"), [poly2("x2")], selection="smallest")

    def test_poly_mult_vars(self, poly2, janet2, ctx2):
        G = [poly2(t) for t in SEC52_BASIS]
        assert poly_mult_vars(janet2, G, G[0]).mult_names(ctx2) == ["x1"]
        assert poly_mult_vars(janet2, G, G[1]).mult_names(ctx2) == ["x2", "x1"]
        with pytest.raises(NotInSetError):
            poly_mult_vars(janet2, G, poly2("x1 + 1"))


class TestCompletion:

    def test_sec52_basis(self, sec52, poly2):
        assert set(sec52.basis) == {poly2(t) for t in SEC52_BASIS}
        assert [g.LM for g in sec52.basis] == [Monomial((3, 0)), Monomial((0, 2)), Monomial((1, 1))]

    def test_sec52_certificates(self, sec52):
        # x1*x2 与 x1^3 各有一个非乘性变量 x2
        assert len(sec52.certificates) == 2
        assert sec52.verify_certificates()
        assert sec52.groebner.passed

    def test_sec52_is_involutive(self, sec52, janet2):
        assert is_involutive_basis(janet2, sec52.basis)
        assert not is_involutive_basis(janet2, sec52.basis[1:])

    def test_sec52_same_ideal(self, sec52, poly2):
        assert same_ideal(sec52.basis, [poly2(t) for t in SEC52])

    def test_thomas_agrees_with_buchberger(self, poly2, ctx2):
        F = [poly2(t) for t in SEC52]
        result = involutive_completion(F, ThomasDivision(ctx2))
        assert result.groebner.passed
        assert set(buchberger_oracle(result.basis)) == set(buchberger_oracle(F))

    def test_autoreduce_removes_duplicates(self, poly2, janet2):
        g = poly2(SEC52_BASIS[0])
        assert inv_autoreduce(janet2, [g, g, poly2("0")]) == [g]

    def test_degree_cap(self, ctx2):
        """x1*x2 在 Pommaret 除法下没有有限对合基"""
        ring = PolynomialRing.standard(2)
        with pytest.raises(CapExceededError):
            involutive_completion([ring.monomial(Monomial((1, 1)))], PommaretDivision(ctx2), max_degree=5)

    def test_iteration_cap(self, poly2, janet2):
        with pytest.raises(CapExceededError):
            involutive_completion([poly2(t) for t in SEC52], janet2, max_iterations=1)


class TestMembership:

    def test_sec52_members(self, sec52, poly2):
        g1, g2 = poly2(SEC52[0]), poly2(SEC52[1])
        member = g1 * poly2("x1^2 + x2") - g2 * poly2("3*x2 - 1")
        assert membership(member, sec52)
        assert not membership(poly2("x1"), sec52)
        assert membership(poly2("0"), sec52)

    def test_decomposition(self, sec52, poly2):
        f = poly2(SEC52[0]) * poly2("x2^2 + x1")
        decomposition = involutive_decomposition(f, sec52.basis, sec52.division)
        assert decomposition is not None
        assert decomposition.replay() == f
        table = sec52.division.table(sec52.leading_monomials())
        for i, v, _ in decomposition.terms:
            assert set(v.support()) <= table[sec52.basis[i].LM]

    def test_decomposition_of_non_member(self, sec52, poly2):
        assert involutive_decomposition(poly2("x1 + 1"), sec52.basis, sec52.division) is None

    @pytest.mark.parametrize("n", [2, 3])
    def test_random_ideals_agree_with_classical(self, rng, n):
        """随机理想上：对合基是 Gröbner 基，对合判定与经典约化判定一致"""
        ring = PolynomialRing.standard(n)
        janet = JanetDivision(ring.context)
        for _ in range(20):
            F = random_ideal(rng, ring, 5, 4)
            result = involutive_completion(F, janet)
            assert is_groebner_basis(result.basis).passed
            gb = buchberger_oracle(F)
            assert set(buchberger_oracle(result.basis)) == set(gb)
            for _ in range(10):
                member = ring.zero()
                for f in F:
                    member = member + f * random_polynomial(rng, ring, 2, 2)
                assert membership(member, result)
                assert classical_reduce(member, gb).remainder.is_zero()
            for _ in range(10):
                f = random_polynomial(rng, ring, 4, 4)
                assert membership(f, result) == classical_reduce(f, gb).remainder.is_zero()
