"""Shared test fixtures and configuration."""
import numpy as np
import pytest

from app.config import get_settings


@pytest.fixture(autouse=True)
def mock_env(monkeypatch):
    """Pin every setting the services read, independent of the host .env."""
    monkeypatch.setenv("RANKMIX_ENUMERATION_CAP", "9")
    monkeypatch.setenv("RANKMIX_TABLOID_DIM_CAP", "5040")
    monkeypatch.setenv("RANKMIX_SIGMA_MIN_FLOOR", "1e-6")
    monkeypatch.setenv("RANKMIX_MALLOWS_SAMPLER", "auto")
    monkeypatch.setenv("RANKMIX_LOG_LEVEL", "WARNING")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)
