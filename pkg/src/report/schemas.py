#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
报告数据模型
每次命令运行产生一个 JobReport，JSON 与文本两种输出都由它渲染
"""
from typing import Any, Dict, Optional

from pydantic import BaseModel, Field

from src.errors import JanetError


class ErrorInfo(BaseModel):
    """错误信息"""
    type: str = Field(..., description="异常类名")
    message: str = Field(..., description="错误描述")
    witness: Dict[str, Any] = Field(default_factory=dict, description="见证数据，如不完备的 (u, x)")

    @classmethod
    def from_exception(cls, exc: Exception) -> "ErrorInfo":
        if isinstance(exc, JanetError):
            data = exc.to_dict()
            return cls(type=data["type"], message=data["message"], witness=data.get("witness") or {})
        return cls(type=type(exc).__name__, message=str(exc))


class JobReport(BaseModel):
    """命令运行报告"""
    command: str = Field(..., description="命令名，如 complete、pde analyze")
    status: str = Field("ok", description="ok 或 error")
    exit_code: int = Field(0, description="0 成功，1 领域错误，2 输入错误")
    input: Optional[str] = Field(None, description="输入文件路径")
    options: Dict[str, Any] = Field(default_factory=dict, description="生效的选项")
    data: Dict[str, Any] = Field(default_factory=dict, description="命令结果")
    error: Optional[ErrorInfo] = None

    @property
    def ok(self) -> bool:
        return self.exit_code == 0
