import pytest

from utils.config import DEFAULT_TOL, TOL_ENV_VAR, default_tolerance
from utils.exceptions import InvalidConfigError


def test_default_tolerance_without_override():
    assert default_tolerance() == DEFAULT_TOL


def test_environment_override(monkeypatch):
    monkeypatch.setenv(TOL_ENV_VAR, "1e-6")
    assert default_tolerance() == 1e-6


@pytest.mark.parametrize("raw", ["abc", "0", "-1e-9"])
def test_invalid_environment_override(monkeypatch, raw):
    monkeypatch.setenv(TOL_ENV_VAR, raw)
    with pytest.raises(InvalidConfigError):
        default_tolerance()
