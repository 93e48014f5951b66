#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
配置与日志初始化
"""
import json

import pytest
from pydantic import ValidationError

from config.settings import CompletionSettings, LogSettings, PdeSettings, Settings
from src.utils.log import load_sink_config, setup_logging


class TestSettings:

    def test_defaults(self):
        settings = Settings()
        assert settings.completion.default_division == "janet"
        assert settings.pde.base_point == "origin"
        assert settings.analytics.p_max == 12

    def test_load_from_toml(self, tmp_path):
        path = tmp_path / "test.toml"
        path.write_text('debug = true\n[completion]\nmax_degree = 7\n[pde]\nbase_point = "symbolic"\n',
                        encoding="utf-8")
        settings = Settings.load_from_toml(str(path))
        assert settings.debug is True
        assert settings.completion.max_degree == 7
        assert settings.pde.base_point == "symbolic"

    def test_missing_file_uses_defaults(self, tmp_path):
        settings = Settings.load_from_toml(str(tmp_path / "absent.toml"))
        assert settings.completion.max_degree == 50

    def test_invalid_file_uses_defaults(self, tmp_path):
        path = tmp_path / "bad.toml"
        path.write_text("[completion]\nmax_degree = -1\n", encoding="utf-8")
        assert Settings.load_from_toml(str(path)).completion.max_degree == 50

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("COMPLETION__MAX_DEGREE", "60")
        assert Settings().completion.max_degree == 60

    def test_validators(self):
        assert CompletionSettings(default_division="Thomas").default_division == "thomas"
        assert LogSettings(level="debug").level == "DEBUG"
        with pytest.raises(ValidationError):
            CompletionSettings(default_division="riquier")
        with pytest.raises(ValidationError):
            CompletionSettings(max_iterations=0)
        with pytest.raises(ValidationError):
            PdeSettings(base_point="center")

    def test_to_json(self):
        data = json.loads(Settings().to_json())
        assert data["completion"]["default_order"] == "deglex"
        assert data["report"]["json_indent"] == 2

    def test_show_config(self):
        text = Settings().show_config()
        assert "默认除法: janet" in text


class TestLogging:

    def test_sink_config(self):
        sinks = load_sink_config(Settings().log.config_file)
        assert "console" in sinks
        assert sinks["file_debug"]["enabled"] is False

    def test_missing_sink_config(self, tmp_path):
        assert load_sink_config(str(tmp_path / "none.yaml")) == {"console": {"target": "stderr"}}

    def test_setup_logging(self):
        # file_debug 默认关闭，只注册 console
        assert setup_logging(Settings(), "DEBUG") == 1
