"""
特征函数与特征数模块
"""
from .characters import characters, is_in_involution, predicted_characteristic
from .hilbert import characteristic_function, complementary_count, generality_from_complementary

__all__ = ['characters', 'is_in_involution', 'predicted_characteristic',
           'characteristic_function', 'complementary_count', 'generality_from_complementary']
