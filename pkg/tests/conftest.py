"""Shared fixtures: a temporary zeta-value cache and an in-memory database."""
import pytest

from harmonic_sums import db
from harmonic_sums.numeric.mzv_numeric import MzvCache


@pytest.fixture
def mzv_cache(tmp_path):
    """File-backed cache in a temporary directory."""
    return MzvCache(str(tmp_path / 'mzv.cache'))


@pytest.fixture
def memory_db():
    """Bind the session factory to a fresh in-memory SQLite database."""
    db.configure_engine('sqlite://')
    db.init_db()
    yield db
    db.drop_all()
    db.Session.remove()
