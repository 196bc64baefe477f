"""
Shared fixtures
"""
import pytest

from app import create_app
from app.heis_core import HeisElement


@pytest.fixture
def app():
    """Create test application"""
    app = create_app('testing')
    yield app


@pytest.fixture
def runner(app):
    """CLI runner bound to the test application"""
    return app.test_cli_runner()


@pytest.fixture
def H():
    """Shorthand constructor for group elements"""
    return HeisElement
