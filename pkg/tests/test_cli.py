"""Command-line behaviour and exit codes."""

import json
import logging
import subprocess
import sys

import pytest

from ncgres.cli import RunConfig, UsageError, configure_logging, main, run_verify


def test_dirac4_json(capsys):
    assert main(["verify", "--operator", "dirac", "--dim", "4", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert set(data) >= {"config", "records", "phi_total", "verdict"}
    assert data["phi_total"] == []
    assert any(r["check_id"] == "phi.total" and r["status"] == "MATCH" for r in data["records"])


def test_signature3_is_usage_error(capsys):
    assert main(["verify", "--operator", "signature", "--dim", "3"]) == 2
    assert "usage" in capsys.readouterr().err


def test_dirac3_documented(capsys):
    assert main(["verify", "--operator", "dirac", "--dim", "3", "--emit-cases"]) == 0
    out = capsys.readouterr().out
    assert out.count("DOCUMENTED-DISCREPANCY") == 1
    assert "single" in out


@pytest.mark.parametrize("argv", [[], ["verify"], ["verify", "--operator", "dirac", "--dim", "5"], ["frobnicate"]])
def test_bad_flags(argv, capsys):
    assert main(argv) == 2


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0


def test_run_config_validation():
    with pytest.raises(UsageError):
        RunConfig("signature", 3)
    with pytest.raises(UsageError):
        RunConfig("dirac", 4, format="yaml")


def test_markdown_with_cases():
    rep = run_verify(RunConfig("dirac", 4, "markdown", emit_cases=True))
    text = rep.render("markdown")
    assert "| a II |" in text and "**verdict:** PASS" in text


def test_log_level_from_env():
    configure_logging({"NCGRES_LOG": "debug"})
    assert logging.getLogger("ncgres").level == logging.DEBUG
    configure_logging({"NCGRES_LOG": "error"})
    assert logging.getLogger("ncgres").level == logging.ERROR


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "ncgres", "verify", "--operator", "dirac", "--dim", "3", "--format", "json"],
        capture_output=True,
        text=True,
        timeout=60,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"].startswith("PASS")
