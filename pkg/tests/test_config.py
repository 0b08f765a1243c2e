"""Tests for settings and logging setup."""

import json
import logging

import pytest

from triagetree.config import Settings
from triagetree.utils.logger import get_logger, setup_logging


@pytest.fixture(autouse=True)
def restore_root_logger():
    root = logging.getLogger()
    handlers, level = root.handlers[:], root.level
    yield
    root.handlers, root.level = handlers, level


def test_settings_defaults(monkeypatch):
    for name in ("DEFAULT_SEED", "CV_FOLDS", "CV_REPEATS", "LOG_JSON", "LOG_LEVEL"):
        monkeypatch.delenv(f"TRIAGETREE_{name}", raising=False)
    settings = Settings(_env_file=None)
    assert settings.default_seed == 0
    assert (settings.cv_folds, settings.cv_repeats) == (10, 5)
    assert settings.grid_resolution == 100
    assert settings.log_json is True


def test_settings_from_environment(monkeypatch):
    monkeypatch.setenv("TRIAGETREE_DEFAULT_SEED", "7")
    monkeypatch.setenv("TRIAGETREE_CV_FOLDS", "3")
    monkeypatch.setenv("TRIAGETREE_LOG_JSON", "false")
    settings = Settings(_env_file=None)
    assert settings.default_seed == 7
    assert settings.cv_folds == 3
    assert settings.log_json is False


def test_settings_reject_single_fold(monkeypatch):
    monkeypatch.setenv("TRIAGETREE_CV_FOLDS", "1")
    with pytest.raises(ValueError):
        Settings(_env_file=None)


def test_json_logs_go_to_stderr(capsys):
    setup_logging(level="info", json_format=True)
    get_logger("triagetree.test").info("fitted", extra={"rows": 12})
    captured = capsys.readouterr()
    assert captured.out == ""
    record = json.loads(captured.err.strip().splitlines()[-1])
    assert record["message"] == "fitted"
    assert record["levelname"] == "INFO"
    assert record["rows"] == 12


def test_plain_logs_respect_level(capsys):
    setup_logging(level="WARNING", json_format=False)
    log = get_logger("triagetree.test")
    log.info("hidden")
    log.warning("shown")
    err = capsys.readouterr().err
    assert "hidden" not in err
    assert "WARNING shown" in err
