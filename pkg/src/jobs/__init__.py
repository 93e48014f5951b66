"""
任务调度模块
"""
from .job_manager import JobManager, JobSpec, run_job

__all__ = ['JobManager', 'JobSpec', 'run_job']
