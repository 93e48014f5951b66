"""
对合除法模块
"""
from .divisions import (DivisionKind, InvolutiveDivision, JanetDivision, PommaretDivision, TableDivision,
                        ThomasDivision, make_division)
from .monomial_completion import complementary_monomials, complete_set, is_complete
from .bases import involutive_completion, membership

__all__ = [
    'DivisionKind', 'InvolutiveDivision', 'JanetDivision', 'ThomasDivision', 'PommaretDivision',
    'TableDivision', 'make_division', 'complementary_monomials', 'complete_set', 'is_complete',
    'involutive_completion', 'membership',
]
