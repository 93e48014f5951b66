#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
异常定义
所有领域错误都继承 JanetError，并可携带 witness（反例/见证数据）供报告输出
"""
from typing import Any, Dict, Optional


class JanetError(Exception):
    """领域错误基类"""

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.witness = witness or {}

    def to_dict(self) -> Dict[str, Any]:
        """导出为报告使用的字典"""
        return {
            "type": type(self).__name__,
            "message": self.message,
            "witness": self.witness,
        }


class NotDivisibleError(JanetError):
    """单项式不可整除"""


class NotInSetError(JanetError):
    """元素不在参考集合中"""


class EmptyInputError(JanetError):
    """输入集合为空"""


class CapExceededError(JanetError):
    """超过次数/迭代上限"""


class IncompleteError(JanetError):
    """单项式集合不完备"""


class NotHomogeneousError(JanetError):
    """生成元不是齐次多项式"""


class ZeroPolynomialError(JanetError):
    """零多项式没有首项"""


class ZeroInputError(JanetError):
    """S-多项式的输入为零"""


class DegenerateCombineError(JanetError):
    """组合系数消失或首项系数不是非零常数"""


class RangeTooSmallError(JanetError):
    """取值范围太小，无法检测稳定多项式"""


class ContextMismatchError(JanetError):
    """变量个数或上下文不一致"""


class MonomialOverflowError(JanetError):
    """指数超过机器字长"""


class ParseError(JanetError):
    """输入文本语法错误"""

    def __init__(self, message: str, line: Optional[int] = None, text: Optional[str] = None):
        witness = {}
        if line is not None:
            witness["line"] = line
        if text is not None:
            witness["text"] = text
        super().__init__(message, witness)
