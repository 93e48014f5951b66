"""
PDE 系统的形式分析
"""
from .derivatives import DerivativeKey, DerivativeOrderKind, DerivativeOrderSpec
from .linear_systems import PdeSystem, janet_procedure
from .monomial_systems import MonomialPdeSystem, mono_pde_compatibility, mono_pde_initial_conditions

__all__ = [
    'DerivativeKey', 'DerivativeOrderKind', 'DerivativeOrderSpec', 'PdeSystem', 'janet_procedure',
    'MonomialPdeSystem', 'mono_pde_compatibility', 'mono_pde_initial_conditions',
]
