"""
报告生成模块
"""
from .report_generator import ReportGenerator
from .schemas import ErrorInfo, JobReport

__all__ = ['ReportGenerator', 'ErrorInfo', 'JobReport']
