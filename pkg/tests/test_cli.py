#!/usr/bin/env python
# -*- coding: utf-8 -*-
"""
命令行与任务管理器：JSON 报告结构、文本报告、退出码
"""
import json

import jsonschema
import pytest

from conftest import DATA_DIR, ROOT
from config.settings import Settings
from main import build_parser, main, to_job
from src.jobs.job_manager import JobManager, JobSpec
from src.report.report_generator import ReportGenerator

SCHEMA = json.loads((ROOT / "schemas" / "report.schema.json").read_text(encoding="utf-8"))


def ideal(name):
    return str(DATA_DIR / "ideals" / name)


def pde(name):
    return str(DATA_DIR / "pde" / name)


def run_json(capsys, argv):
    """运行命令并校验 JSON 报告结构"""
    code = main(argv + ["--json"])
    report = json.loads(capsys.readouterr().out)
    jsonschema.validate(report, SCHEMA)
    assert report["exit_code"] == code
    return report


class TestMonomialCommands:

    def test_complete_p28(self, capsys):
        report = run_json(capsys, ["complete", "--division", "janet", ideal("p28.txt")])
        assert report["status"] == "ok"
        assert report["data"]["added"] == ["x3^2*x2^2", "x3^3*x2^2", "x3^3*x2*x1^2"]
        assert report["options"]["division"] == "janet"

    def test_mult_vars_p17(self, capsys):
        report = run_json(capsys, ["mult-vars", ideal("p17.txt")])
        completeness = report["data"]["completeness"]
        assert completeness["complete"] is False
        assert len(report["data"]["table"]) == 4

    def test_comp_monomials(self, capsys):
        report = run_json(capsys, ["comp-monomials", ideal("p17.txt")])
        assert (report["data"]["lambda"], report["data"]["mu"]) == (2, 5)

    def test_arrays_descend_under_order(self, capsys, tmp_path):
        report = run_json(capsys, ["comp-monomials", ideal("p17.txt")])
        assert report["data"]["monomials"] == [
            "x3^3*x2^2*x1", "x3^3*x2^2", "x3^3*x1^2", "x3^3*x2", "x3^3*x1", "x3*x2*x1^2",
            "x3^3", "x3*x2*x1", "x3^2", "x3", "1"]
        assert report["data"]["strata"]["x3"] == ["x3^2", "1"]
        path = tmp_path / "two.txt"
        path.write_text("vars x1 x2\nx2\nx1^3\n", encoding="utf-8")
        report = run_json(capsys, ["mult-vars", str(path)])
        assert [row["monomial"] for row in report["data"]["table"]] == ["x1^3", "x2"]
        report = run_json(capsys, ["mult-vars", "--order", "lex", str(path)])
        assert [row["monomial"] for row in report["data"]["table"]] == ["x2", "x1^3"]

    def test_degree_cap_exit_code(self, capsys, tmp_path):
        path = tmp_path / "xy.txt"
        path.write_text("vars x1 x2\nx1*x2\n", encoding="utf-8")
        report = run_json(capsys, ["complete", "--division", "pommaret", "--max-degree", "5", str(path)])
        assert report["exit_code"] == 1
        assert report["error"]["type"] == "CapExceededError"


class TestPolynomialCommands:

    def test_invbasis_sec52(self, capsys):
        report = run_json(capsys, ["invbasis", "--order", "deglex", ideal("sec52.txt")])
        data = report["data"]
        assert len(data["basis"]) == 3
        assert data["groebner"]["passed"]
        assert data["certificates"]["verified"]

    def test_member(self, capsys):
        report = run_json(capsys, ["member", ideal("sec52.txt"), "--poly", "x2^2 - 2*x1*x2 + 1"])
        assert report["data"]["member"] is True
        assert report["data"]["classical_agrees"] is True
        assert report["data"]["decomposition"]

    def test_groebner(self, capsys):
        report = run_json(capsys, ["groebner", ideal("sec52.txt")])
        assert report["data"]["certificate_verified"]
        assert len(report["data"]["basis"]) == 3

    def test_hilbert_sec53(self, capsys):
        report = run_json(capsys, ["hilbert", ideal("sec53.txt"), "--p-max", "10"])
        data = report["data"]
        assert (data["lambda"], data["mu"]) == (1, 3)
        assert data["complementary"]["counts_agree"]

    def test_characters_sec53(self, capsys):
        report = run_json(capsys, ["characters", ideal("sec53.txt"), "--degree", "2"])
        assert report["data"]["in_involution"]
        assert report["data"]["predicted"]["4"] == 3


class TestPdeCommand:

    def test_sec47(self, capsys):
        report = run_json(capsys, ["pde", "analyze", pde("sec47.txt")])
        data = report["data"]
        assert data["summary"] == "completely integrable after completion"
        assert len(data["rounds"]) == 3
        assert data["certificates"] == {"forward": True, "backward": True}

    def test_sec44_weight_file(self, capsys):
        report = run_json(capsys, ["pde", "analyze", pde("sec44.txt"),
                                   "--order", "weight:" + str(DATA_DIR / "weights" / "sec44.toml")])
        assert report["data"]["summary"] == "completely integrable"
        assert report["options"]["order"] == "weight"

    def test_monomial_system(self, capsys):
        report = run_json(capsys, ["pde", "analyze", pde("p28.txt"), "--base-point", "symbolic"])
        data = report["data"]
        assert data["kind"] == "monomial"
        assert [d["definition"] for d in data["added_leads"]] == [
            "f3 = ∂f1/∂x3", "f4 = ∂f3/∂x3", "f5 = ∂f2/∂x2"]
        assert data["initial_conditions"]["entries"][-1]["text"] == "φ_{1,1,3}(x3) at x1=x1^0, x2=x2^0"


class TestErrors:

    def test_missing_file(self, capsys, tmp_path):
        report = run_json(capsys, ["complete", str(tmp_path / "missing.txt")])
        assert report["exit_code"] == 2
        assert report["status"] == "error"

    def test_syntax_error(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("vars x1 x2\nx1 + + x2\n", encoding="utf-8")
        report = run_json(capsys, ["groebner", str(path)])
        assert report["exit_code"] == 2
        assert report["error"]["witness"]["line"] == 2

    def test_unknown_order(self, capsys):
        report = run_json(capsys, ["complete", "--order", "revlex", ideal("p28.txt")])
        assert report["exit_code"] == 2

    def test_bad_arguments(self):
        assert main(["complete"]) == 2
        assert main(["frobnicate", ideal("p28.txt")]) == 2


class TestTextReport:

    def test_mult_vars_text(self, capsys):
        assert main(["mult-vars", ideal("p17.txt")]) == 0
        out = capsys.readouterr().out
        assert out.startswith("== mult-vars ==")
        assert "x3*x2*x1^3" in out

    def test_error_text(self, capsys, tmp_path):
        assert main(["complete", str(tmp_path / "missing.txt")]) == 2
        assert "错误:" in capsys.readouterr().out

    def test_json_is_deterministic(self):
        job = JobSpec("complete", ideal("p28.txt"), as_json=True)
        manager = JobManager(Settings())
        generator = ReportGenerator()
        assert generator.render_json(manager.run(job)) == generator.render_json(manager.run(job))


class TestJobSpec:

    def test_pde_command_name(self):
        args = build_parser().parse_args(["pde", "analyze", pde("p26.txt"), "--base-point", "symbolic"])
        job = to_job(args)
        assert job.command == "pde analyze"
        assert job.extra == {"base_point": "symbolic"}

    def test_config(self, capsys):
        report = run_json(capsys, ["config"])
        assert report["data"]["completion"]["default_division"] == "janet"

    @pytest.mark.parametrize("command", ["hilbert", "characters", "member"])
    def test_required_input(self, command):
        report = JobManager(Settings()).run(JobSpec(command))
        assert report.exit_code == 2
