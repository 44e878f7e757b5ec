"""Database connection and session management for recorded verification runs."""
from contextlib import contextmanager
import logging
from pathlib import Path

from sqlalchemy import create_engine, text
from sqlalchemy.engine import Engine, make_url
from sqlalchemy.orm import declarative_base, scoped_session, sessionmaker
from sqlalchemy.pool import StaticPool

from harmonic_sums.config import Config

logger = logging.getLogger(__name__)

# Base class for ORM models
Base = declarative_base()

# Session factory; bound by configure_engine
SessionLocal = sessionmaker(autocommit=False, autoflush=False)

# Thread-safe session
Session = scoped_session(SessionLocal)

engine: Engine = None


def _build_engine(url: str) -> Engine:
    parsed = make_url(url)
    if parsed.get_backend_name() == 'sqlite':
        database = parsed.database
        if database and database != ':memory:':
            Path(database).parent.mkdir(parents=True, exist_ok=True)
            return create_engine(url, echo=Config.SQLALCHEMY_ECHO)
        # One shared connection so every thread sees the same in-memory database
        return create_engine(
            url,
            echo=Config.SQLALCHEMY_ECHO,
            connect_args={'check_same_thread': False},
            poolclass=StaticPool,
        )
    return create_engine(
        url,
        pool_pre_ping=True,  # Verify connections before using
        pool_recycle=3600,   # Recycle connections after 1 hour
        echo=Config.SQLALCHEMY_ECHO
    )


def configure_engine(url: str = None) -> Engine:
    """(Re)bind the session factory to a database URL.

    Args:
        url: SQLAlchemy URL; defaults to Config.DATABASE_URL

    Returns:
        The new engine
    """
    global engine
    Session.remove()
    if engine is not None:
        engine.dispose()
    engine = _build_engine(url or Config.DATABASE_URL)
    SessionLocal.configure(bind=engine)
    return engine


def get_engine() -> Engine:
    if engine is None:
        configure_engine()
    return engine


@contextmanager
def session_scope():
    """Provide a transactional scope for database operations.

    Usage:
        with session_scope() as session:
            session.add(obj)
            # Changes are committed automatically
    """
    get_engine()
    session = Session()
    try:
        yield session
        session.commit()
    except Exception as e:
        session.rollback()
        logger.error(f"Database error: {e}")
        raise
    finally:
        session.close()


def test_connection() -> bool:
    """Test database connection.

    Returns:
        bool: True if connection successful, False otherwise
    """
    try:
        with get_engine().connect() as conn:
            conn.execute(text("SELECT 1"))
            logger.info("✓ Database connection successful")
            return True
    except Exception as e:
        logger.error(f"✗ Database connection failed: {e}")
        return False


def init_db():
    """Initialize database tables (create all tables defined in models)."""
    from harmonic_sums import models  # noqa: F401  registers the tables

    try:
        Base.metadata.create_all(bind=get_engine())
        logger.info("✓ Database tables initialized")
    except Exception as e:
        logger.error(f"✗ Failed to initialize database: {e}")
        raise


def drop_all():
    """Drop all database tables (use with caution!)."""
    try:
        Base.metadata.drop_all(bind=get_engine())
        logger.info("✓ All database tables dropped")
    except Exception as e:
        logger.error(f"✗ Failed to drop tables: {e}")
        raise
