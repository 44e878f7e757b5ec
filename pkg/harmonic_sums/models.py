"""SQLAlchemy ORM models for recorded verification runs."""
import json
from datetime import datetime

from sqlalchemy import Boolean, Column, DateTime, Float, ForeignKey, Integer, String, Text
from sqlalchemy.orm import relationship

from harmonic_sums.db import Base


class VerificationRun(Base):
    """One invocation of verify-all or audit."""

    __tablename__ = 'verification_run'

    run_id = Column(Integer, primary_key=True, autoincrement=True)
    created_at = Column(DateTime, nullable=False, default=datetime.utcnow)
    command = Column(String(50), nullable=False)
    tolerance = Column(Float)
    notes = Column(Text)

    # Relationships
    reports = relationship('ReportRecord', back_populates='run', cascade='all, delete-orphan')
    errata = relationship('ErrataRecord', back_populates='run', cascade='all, delete-orphan')

    def __repr__(self):
        return f"<VerificationRun(id={self.run_id}, command='{self.command}', created_at={self.created_at})>"

    def to_dict(self):
        return {
            'run_id': self.run_id,
            'created_at': self.created_at.isoformat() if self.created_at else None,
            'command': self.command,
            'tolerance': self.tolerance,
            'notes': self.notes,
            'n_reports': len(self.reports),
            'n_errata': len(self.errata),
        }


class ReportRecord(Base):
    """Outcome of verifying one identity instance."""

    __tablename__ = 'report'

    report_id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey('verification_run.run_id'), nullable=False)
    family = Column(String(50), nullable=False)
    params = Column(Text, nullable=False)
    lhs_value = Column(Float)
    lhs_bound = Column(Float)
    rhs_value = Column(Float)
    rhs_bound = Column(Float)
    difference = Column(Float)
    verdict = Column(String(10), nullable=False)
    runtime = Column(Float, nullable=False, default=0.0)
    terms_used = Column(Integer, nullable=False, default=0)
    diagnostics = Column(Text)

    # Relationships
    run = relationship('VerificationRun', back_populates='reports')

    def __repr__(self):
        return f"<ReportRecord(family='{self.family}', params={self.params}, verdict='{self.verdict}')>"

    def to_dict(self):
        return {
            'family': self.family,
            'params': json.loads(self.params),
            'lhs': self.lhs_value,
            'lhs_bound': self.lhs_bound,
            'rhs': self.rhs_value,
            'rhs_bound': self.rhs_bound,
            'difference': self.difference,
            'verdict': self.verdict,
            'runtime': self.runtime,
            'terms_used': self.terms_used,
            'diagnostics': self.diagnostics,
        }


class ErrataRecord(Base):
    """Printed form versus corrected form of one audited formula instance."""

    __tablename__ = 'errata'

    errata_id = Column(Integer, primary_key=True, autoincrement=True)
    run_id = Column(Integer, ForeignKey('verification_run.run_id'), nullable=False)
    target = Column(String(50), nullable=False)
    params = Column(Text, nullable=False)
    oracle_value = Column(Float)
    printed_value = Column(Float)
    corrected_value = Column(Float)
    printed_matches = Column(Boolean)
    corrected_matches = Column(Boolean)
    verdict = Column(String(30), nullable=False)
    note = Column(Text)

    # Relationships
    run = relationship('VerificationRun', back_populates='errata')

    def __repr__(self):
        return f"<ErrataRecord(target='{self.target}', params={self.params}, verdict='{self.verdict}')>"

    def to_dict(self):
        return {
            'target': self.target,
            'params': json.loads(self.params),
            'oracle': self.oracle_value,
            'printed': self.printed_value,
            'corrected': self.corrected_value,
            'printed_matches': self.printed_matches,
            'corrected_matches': self.corrected_matches,
            'verdict': self.verdict,
            'note': self.note,
        }
