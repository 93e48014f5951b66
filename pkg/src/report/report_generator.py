#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
报告生成器
JSON：键排序、固定缩进，同样输入逐字节一致
文本：jinja2 模板遍历同一份数据；由字典组成的列表（如乘性变量表）用 pandas DataFrame 排成表格
"""
import json
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd
from jinja2 import Template

from .schemas import JobReport

TEXT_TEMPLATE = """\
== {{ report.command }} ==
{% if report.input %}输入: {{ report.input }}
{% endif %}状态: {{ report.status }} (exit {{ report.exit_code }})
{% for key, value in options %}选项 {{ key }}: {{ value }}
{% endfor %}{% if report.error %}
错误: {{ report.error.type }}: {{ report.error.message }}
{% for key, value in witness %}  {{ key }}: {{ value }}
{% endfor %}{% endif %}{% for block in blocks %}
[{{ block.title }}]
{{ block.body }}
{% endfor %}"""


def _scalar(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    if isinstance(value, list):
        return ", ".join(_scalar(v) for v in value) if value else "∅"
    if isinstance(value, dict):
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    return str(value)


def _is_table(value: Any) -> bool:
    return isinstance(value, list) and bool(value) and all(isinstance(v, dict) for v in value)


def _table(rows: List[Dict[str, Any]]) -> str:
    """字典列表排成表格，列按首次出现的顺序"""
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    frame = pd.DataFrame([[_scalar(row.get(c)) for c in columns] for row in rows], columns=columns)
    return frame.to_string(index=False)


class ReportGenerator:
    """把 JobReport 渲染为 JSON 或文本"""

    def __init__(self, json_indent: int = 2, show_tables: bool = True):
        self.json_indent = json_indent
        self.show_tables = show_tables
        self.template = Template(TEXT_TEMPLATE)

    @classmethod
    def from_settings(cls, settings) -> "ReportGenerator":
        return cls(settings.report.json_indent, settings.report.show_tables)

    def render_json(self, report: JobReport) -> str:
        payload = report.model_dump(mode="json")
        return json.dumps(payload, indent=self.json_indent, sort_keys=True, ensure_ascii=False)

    def render_text(self, report: JobReport) -> str:
        blocks = self._blocks(report.data)
        witness = sorted((report.error.witness or {}).items()) if report.error else []
        return self.template.render(
            report=report,
            options=[(k, _scalar(v)) for k, v in sorted(report.options.items())],
            witness=[(k, _scalar(v)) for k, v in witness],
            blocks=blocks,
        ).rstrip() + "\n"

    def render(self, report: JobReport, as_json: bool) -> str:
        return self.render_json(report) + "\n" if as_json else self.render_text(report)

    def _blocks(self, data: Dict[str, Any], prefix: str = "") -> List[Dict[str, str]]:
        """把 data 拆成 (标题, 正文) 块；标量汇总为一个块，嵌套字典递归展开"""
        blocks: List[Dict[str, str]] = []
        scalars: List[Tuple[str, str]] = []
        for key in sorted(data):
            value = data[key]
            title = f"{prefix}{key}"
            if isinstance(value, dict) and value and any(isinstance(v, (dict, list)) for v in value.values()):
                blocks.extend(self._blocks(value, f"{title}."))
            elif _is_table(value):
                if self.show_tables:
                    blocks.append({"title": title, "body": _table(value)})
            elif isinstance(value, list) and value:
                blocks.append({"title": title, "body": "\n".join(f"  {_scalar(v)}" for v in value)})
            else:
                scalars.append((key, _scalar(value)))
        if scalars:
            body = "\n".join(f"  {k}: {v}" for k, v in scalars)
            blocks.insert(0, {"title": prefix.rstrip(".") or "summary", "body": body})
        return blocks


def render(report: JobReport, as_json: bool, generator: Optional[ReportGenerator] = None) -> str:
    return (generator or ReportGenerator()).render(report, as_json)
