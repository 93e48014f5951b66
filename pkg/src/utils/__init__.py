"""
工具模块
"""
from .log import setup_logging

__all__ = ['setup_logging']
