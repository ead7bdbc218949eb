"""
Shared pytest fixtures
"""

import os
import sys

import pytest

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from app import create_app
from app.config import TestingConfig


@pytest.fixture
def app(tmp_path):
    """Application configured for tests, writing into a temporary directory"""
    class Config(TestingConfig):
        OUTPUT_DIR = str(tmp_path / "results")

    return create_app(Config)


@pytest.fixture
def runner(app):
    """CLI runner bound to the test application"""
    return app.test_cli_runner()


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run the full-band Monte Carlo acceptance studies")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-band Monte Carlo study, needs --runslow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
