#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
对合除法与 Janet 分析命令行
支持：单项式完备化、乘性变量表、补单项式、对合基、Gröbner 基、理想成员、特征函数、特征数、PDE 系统分析

使用方法：
  python main.py complete --division janet data/ideals/p28.txt
  python main.py invbasis --order deglex data/ideals/sec52.txt --json
  python main.py pde analyze data/pde/sec47.txt
"""
import argparse
import sys
from typing import List, Optional

from loguru import logger

from config.settings import settings
from src.jobs.job_manager import JobManager, JobSpec
from src.report.report_generator import ReportGenerator
from src.utils.log import setup_logging

IDEAL_COMMANDS = {
    "complete": "完备化单项式集合",
    "mult-vars": "输出乘性变量表与完备性",
    "comp-monomials": "输出补单项式及其乘性变量",
    "invbasis": "计算多项式对合基并做 Gröbner 认证",
    "groebner": "Buchberger 算法计算约化 Gröbner 基",
    "member": "判定多项式是否属于理想",
    "hilbert": "计算特征函数 χ(p) 与 (λ, μ)",
    "characters": "计算 p 次分量的特征数并判定对合",
}


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument('--division', choices=['janet', 'thomas', 'pommaret'], help='对合除法，默认取配置')
    parser.add_argument('--order', help='单项式序: lex | deglex | weight:<权重文件>')
    parser.add_argument('--max-degree', type=int, dest='max_degree', help='完备化次数上限，覆盖配置')
    parser.add_argument('--json', action='store_true', help='输出 JSON 报告')
    parser.add_argument('--verbose', '-v', action='store_true', help='输出 DEBUG 日志')


def build_parser() -> argparse.ArgumentParser:
    """构造命令行解析器"""
    parser = argparse.ArgumentParser(
        prog="main.py",
        description="对合除法、Janet 基与线性 PDE 系统的形式分析",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
使用示例:
  python main.py complete --division janet data/ideals/p28.txt     # 完备化，补入 3 个单项式
  python main.py mult-vars data/ideals/p17.txt                      # 乘性变量表
  python main.py comp-monomials data/ideals/p17.txt                 # 补单项式
  python main.py invbasis --order deglex data/ideals/sec52.txt      # Janet 基
  python main.py member data/ideals/sec52.txt --poly "x2^2 - 2*x1*x2 + 1"
  python main.py hilbert data/ideals/sec53.txt --p-max 10           # χ(p) 恒为 3
  python main.py characters data/ideals/sec53.txt --degree 2
  python main.py pde analyze data/pde/sec47.txt                     # 两轮补入可积条件
  python main.py pde analyze data/pde/sec44.txt --order weight:data/weights/sec44.toml
  python main.py config                                             # 当前配置

退出码: 0 成功；1 领域错误（不完备、超过上限等）；2 输入错误
        """
    )
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    for name, help_text in IDEAL_COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument('input', help='理想输入文件')
        _add_common(p)
        if name == 'hilbert':
            p.add_argument('--p-max', type=int, dest='p_max', help='计算到的最大次数')
        if name == 'characters':
            p.add_argument('--degree', type=int, required=True, help='齐次分量的次数 p (>= 1)')
        if name == 'member':
            p.add_argument('--poly', required=True, help='待判定的多项式')

    pde = sub.add_parser('pde', help='PDE 系统分析')
    pde_sub = pde.add_subparsers(dest='pde_command', metavar='pde_command')
    pde_sub.required = True
    analyze = pde_sub.add_parser('analyze', help='相容性条件、Janet 过程与初始条件')
    analyze.add_argument('input', help='PDE 输入文件')
    analyze.add_argument('--base-point', choices=['origin', 'symbolic'], dest='base_point',
                         help='初始条件基点的输出方式')
    _add_common(analyze)

    config = sub.add_parser('config', help='以 JSON 输出当前配置')
    config.add_argument('--json', action='store_true', help='输出 JSON 报告')
    config.add_argument('--verbose', '-v', action='store_true', help='输出 DEBUG 日志')
    return parser


def to_job(args: argparse.Namespace) -> JobSpec:
    """命令行参数转为 JobSpec"""
    command = 'pde analyze' if args.command == 'pde' else args.command
    extra = {}
    if getattr(args, 'base_point', None):
        extra['base_point'] = args.base_point
    return JobSpec(
        command=command,
        input_path=getattr(args, 'input', None),
        division=getattr(args, 'division', None),
        order=getattr(args, 'order', None),
        max_degree=getattr(args, 'max_degree', None),
        as_json=args.json,
        p_max=getattr(args, 'p_max', None),
        degree=getattr(args, 'degree', None),
        poly=getattr(args, 'poly', None),
        extra=extra,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """主函数 - 解析参数、运行任务、输出报告，返回退出码"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    setup_logging(settings, 'DEBUG' if args.verbose else None)
    job = to_job(args)
    report = JobManager(settings).run(job)
    sys.stdout.write(ReportGenerator.from_settings(settings).render(report, job.as_json))
    return report.exit_code


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        logger.warning("程序被用户中断")
        sys.exit(130)
    except Exception as e:
        import traceback
        logger.error(f"程序发生未知错误: {e}")
        if settings.debug:
            traceback.print_exc()
        sys.exit(1)
