import logging

from anderson_lab.core.config import DEFAULT_CAP, Settings, load_settings, validate_configuration
from anderson_lab.core.exceptions import CapExceededError, ParseError, ScenarioParseError
from anderson_lab.core.logger import get_logger, setup_logging


def test_defaults_without_environment():
    settings = load_settings({})
    assert settings == Settings()
    assert settings.ring_cap == DEFAULT_CAP
    assert settings.degree == 1


def test_environment_overrides():
    settings = load_settings({
        "ANDERSON_CAP": "128",
        "ANDERSON_SEED": "9",
        "ANDERSON_DEGREE": "2",
        "ANDERSON_LOG_LEVEL": "debug",
        "ANDERSON_WORKERS": "",
    })
    assert settings.ring_cap == 128
    assert settings.seed == 9
    assert settings.degree == 2
    assert settings.log_level == "DEBUG"
    assert settings.workers == Settings().workers


def test_invalid_values_are_reported_not_loaded():
    environ = {"ANDERSON_CAP": "0", "ANDERSON_SEED": "abc", "ANDERSON_LOG_LEVEL": "chatty"}
    status = validate_configuration(environ)
    assert not status["valid"]
    assert len(status["errors"]) == 3
    assert status["settings"]["ring_cap"] == DEFAULT_CAP
    assert status["settings"]["seed"] == 0


def test_with_overrides_keeps_original():
    base = Settings()
    changed = base.with_overrides(ring_cap=10)
    assert changed.ring_cap == 10
    assert base.ring_cap == DEFAULT_CAP
    assert changed != base


def test_exit_codes():
    assert CapExceededError(20, 10).exit_code == 3
    assert str(CapExceededError(20, 10)) == "ring too large: cardinality 20 exceeds cap 10"
    assert ParseError().exit_code == 2
    assert str(ScenarioParseError(4, "bad")) == "line 4: bad"


def test_loggers_share_namespace():
    setup_logging("INFO")
    assert get_logger("services.ring").name == "anderson_lab.services.ring"
    assert get_logger("anderson_lab.cli").name == "anderson_lab.cli"
    assert logging.getLogger("anderson_lab").level == logging.INFO
    setup_logging("WARNING")
