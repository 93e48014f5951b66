#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
日志初始化
按 config/logging.yaml 注册 loguru sink；stdout 留给报告
"""
import sys
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from loguru import logger

_TARGETS = {"stderr": sys.stderr, "stdout": sys.stdout}


def load_sink_config(path: Optional[str]) -> Dict[str, Dict[str, Any]]:
    """读取 sink 定义；文件缺失或格式错误时返回只有 stderr 的默认配置"""
    default = {"console": {"target": "stderr"}}
    if not path or not Path(path).exists():
        return default
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        logger.warning(f"日志配置 {path} 读取失败: {e}")
        return default
    sinks = data.get("sinks")
    return sinks if isinstance(sinks, dict) and sinks else default


def setup_logging(settings, level: Optional[str] = None) -> int:
    """
    重新配置 loguru

    Args:
        settings: Settings 实例，使用 log.level / log.serialize / log.config_file
        level: 覆盖配置中的级别（如 -v 时的 DEBUG）

    Returns:
        注册的 sink 个数
    """
    logger.remove()
    level = (level or settings.log.level).upper()
    count = 0
    for name, sink in load_sink_config(settings.log.config_file).items():
        if not sink.get("enabled", True):
            continue
        options = {k: v for k, v in sink.items() if k not in ("target", "enabled")}
        options.setdefault("level", level)
        options["serialize"] = settings.log.serialize
        target = sink.get("target", "stderr")
        if target in _TARGETS:
            for key in ("rotation", "retention", "encoding"):
                options.pop(key, None)
            logger.add(_TARGETS[target], **options)
        else:
            Path(target).parent.mkdir(parents=True, exist_ok=True)
            logger.add(target, **options)
        count += 1
    logger.debug(f"日志已配置: {count} 个 sink，级别 {level}")
    return count
