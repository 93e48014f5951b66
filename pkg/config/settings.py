#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
配置管理模块 - 使用Pydantic Settings处理多环境配置
配置优先级：环境变量 > dev.toml > 默认值
"""
from typing import Dict, Optional
from pathlib import Path
from pydantic import Field, validator
from pydantic_settings import BaseSettings, SettingsConfigDict
from functools import lru_cache
from loguru import logger
import json
import toml

CONFIG_DIR = Path(__file__).resolve().parent
DIVISIONS = ("janet", "thomas", "pommaret")
ORDERS = ("lex", "deglex")


class CompletionSettings(BaseSettings):
    """单项式与多项式完备化配置"""
    max_degree: int = Field(50, description="完备化中新元素的次数上限")
    max_iterations: int = Field(500, description="对合完备化最大迭代次数")
    default_division: str = Field("janet", description="默认对合除法 (janet/thomas/pommaret)")
    default_order: str = Field("deglex", description="默认单项式序 (lex/deglex)")

    @validator("max_degree", "max_iterations")
    def validate_positive(cls, v):
        """上限必须为正"""
        if v <= 0:
            raise ValueError("上限必须为正整数")
        return v

    @validator("default_division")
    def validate_division(cls, v):
        if v.lower() not in DIVISIONS:
            raise ValueError(f"对合除法必须是: {', '.join(DIVISIONS)}")
        return v.lower()

    @validator("default_order")
    def validate_order(cls, v):
        if v.lower() not in ORDERS:
            raise ValueError(f"单项式序必须是: {', '.join(ORDERS)}")
        return v.lower()


class GroebnerSettings(BaseSettings):
    """Buchberger 算法配置"""
    max_pairs: int = Field(5000, description="处理的 S-对个数上限")
    max_degree: int = Field(50, description="基中元素的次数上限")


class PdeSettings(BaseSettings):
    """PDE 系统分析配置"""
    max_rounds: int = Field(10, description="Janet 过程最大轮数")
    max_equations: int = Field(200, description="系统中方程个数上限")
    base_point: str = Field("origin", description="初始条件基点的输出方式 (origin/symbolic)")

    @validator("base_point")
    def validate_base_point(cls, v):
        if v not in ("origin", "symbolic"):
            raise ValueError("base_point 必须是 origin 或 symbolic")
        return v


class AnalyticsSettings(BaseSettings):
    """特征函数与特征数配置"""
    p_max: int = Field(12, description="特征函数计算的最大次数")
    stabilization_points: int = Field(3, description="判定稳定所需的连续零差分个数")

    @validator("stabilization_points")
    def validate_points(cls, v):
        if v < 1:
            raise ValueError("stabilization_points 至少为 1")
        return v


class LogSettings(BaseSettings):
    """日志配置"""
    level: str = Field("INFO", description="日志级别")
    serialize: bool = Field(False, description="是否序列化为JSON格式")
    config_file: str = Field(str(CONFIG_DIR / "logging.yaml"), description="loguru sink 配置文件路径")

    @validator("level")
    def validate_log_level(cls, v):
        """验证日志级别"""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if v.upper() not in valid_levels:
            raise ValueError(f"日志级别必须是: {', '.join(valid_levels)}")
        return v.upper()


class ReportSettings(BaseSettings):
    """报告输出配置"""
    json_indent: int = Field(2, description="JSON 报告缩进")
    show_tables: bool = Field(True, description="文本报告中是否输出乘性变量表")


class Settings(BaseSettings):
    """主配置类 - 支持环境变量和配置文件覆盖"""

    # 项目基本信息
    project_name: str = Field("janet-involutive", description="项目名称")
    version: str = Field("1.0.0", description="版本号")
    debug: bool = Field(False, description="调试模式")

    # 子配置
    completion: CompletionSettings = Field(default_factory=CompletionSettings)
    groebner: GroebnerSettings = Field(default_factory=GroebnerSettings)
    pde: PdeSettings = Field(default_factory=PdeSettings)
    analytics: AnalyticsSettings = Field(default_factory=AnalyticsSettings)
    log: LogSettings = Field(default_factory=LogSettings)
    report: ReportSettings = Field(default_factory=ReportSettings)

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_nested_delimiter="__",  # 支持嵌套配置，如 COMPLETION__MAX_DEGREE=60
        case_sensitive=False,
        extra="ignore"
    )

    @classmethod
    def load_from_toml(cls, toml_path: Optional[str] = None) -> "Settings":
        """从TOML文件加载配置，节 [x] 的键 k 展平为 x__k"""
        config_file = Path(toml_path) if toml_path else CONFIG_DIR / "dev.toml"

        if not config_file.exists():
            logger.warning(f"配置文件 {config_file} 不存在，使用默认配置")
            return cls()

        try:
            toml_data = toml.load(config_file)
            logger.debug(f"从 {config_file} 加载配置")

            flat_config: Dict[str, object] = {}
            for section in ("completion", "groebner", "pde", "analytics", "log", "report"):
                for key, value in toml_data.get(section, {}).items():
                    flat_config[f"{section}__{key}"] = value

            # 处理顶级配置
            for key in ["project_name", "version", "debug"]:
                if key in toml_data:
                    flat_config[key] = toml_data[key]

            return cls(**flat_config)

        except Exception as e:
            logger.warning(f"加载配置文件失败: {e}，使用默认配置")
            return cls()

    def to_json(self) -> str:
        """导出为JSON格式"""
        return json.dumps(self.model_dump(), indent=2, ensure_ascii=False, default=str, sort_keys=True)

    def show_config(self) -> str:
        """当前配置的摘要文本"""
        lines = [
            "=== 当前配置 ===",
            f"项目: {self.project_name} v{self.version}",
            f"调试模式: {self.debug}",
            f"默认除法: {self.completion.default_division}，默认序: {self.completion.default_order}",
            f"完备化次数上限: {self.completion.max_degree}，迭代上限: {self.completion.max_iterations}",
            f"S-对上限: {self.groebner.max_pairs}",
            f"Janet 过程轮数上限: {self.pde.max_rounds}，基点: {self.pde.base_point}",
            f"特征函数 p_max: {self.analytics.p_max}",
            f"日志级别: {self.log.level}",
        ]
        return "\n".join(lines)


@lru_cache()
def get_settings() -> Settings:
    """获取配置单例 - 自动加载dev.toml"""
    return Settings.load_from_toml()


# 导出配置实例
settings = get_settings()
