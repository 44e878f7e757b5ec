"""Configuration module for the harmonic-sum verifier."""
import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables from .env file
BASE_DIR = Path(__file__).resolve().parent.parent
load_dotenv(BASE_DIR / '.env')


class Config:
    """Application configuration from environment variables."""

    # Data Paths
    DATA_DIR = BASE_DIR / 'data'

    # Zeta-value cache (None keeps the cache in memory only)
    MZV_CACHE_PATH = os.getenv('MZV_CACHE_PATH') or None

    # SQLAlchemy Database URI for recorded verification runs
    DATABASE_URL = os.getenv('DATABASE_URL', f"sqlite:///{DATA_DIR / 'verification.db'}")
    SQLALCHEMY_ECHO = os.getenv('SQL_ECHO', 'False').lower() == 'true'

    # Numeric Configuration
    MIN_TOL = 1e-10
    MAX_TOL = 1e-2
    MIN_ZETA_TOL = 1e-12
    DEFAULT_TOL = float(os.getenv('DEFAULT_TOL', 1e-6))
    MZV_MAX_TERMS = int(os.getenv('MZV_MAX_TERMS', 2_000_000))
    ETA_MAX_TERMS = int(os.getenv('ETA_MAX_TERMS', 1_000_000))

    # Symbolic Configuration
    HEIGHT_ONE_BOUND = int(os.getenv('HEIGHT_ONE_BOUND', 12))

    # Pipeline Configuration
    VERIFY_WORKERS = int(os.getenv('VERIFY_WORKERS', 4))
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO').upper()

    @classmethod
    def validate(cls):
        """Validate configuration ranges."""
        if not cls.MIN_TOL <= cls.DEFAULT_TOL <= cls.MAX_TOL:
            raise ValueError(
                f"DEFAULT_TOL must lie in [{cls.MIN_TOL:g}, {cls.MAX_TOL:g}], got {cls.DEFAULT_TOL:g}"
            )
        if cls.MZV_MAX_TERMS <= 0 or cls.ETA_MAX_TERMS <= 0:
            raise ValueError("MZV_MAX_TERMS and ETA_MAX_TERMS must be positive")
        if cls.HEIGHT_ONE_BOUND < 2:
            raise ValueError("HEIGHT_ONE_BOUND must be at least 2")
        if cls.VERIFY_WORKERS < 1:
            raise ValueError("VERIFY_WORKERS must be at least 1")
        return True


# Validate configuration on import
Config.validate()
