"""
输入文件解析模块
"""
from .ideal_parser import load_ideal, parse_ideal_text
from .pde_parser import load_pde, parse_pde_text

__all__ = ['load_ideal', 'parse_ideal_text', 'load_pde', 'parse_pde_text']
