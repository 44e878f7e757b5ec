"""Persist verification reports and errata to the database."""
import json
import logging
from datetime import datetime
from typing import Dict, List, Optional, Sequence

from harmonic_sums.db import init_db, session_scope
from harmonic_sums.models import ErrataRecord, ReportRecord, VerificationRun
from harmonic_sums.pipeline.audit import ErrataEntry
from harmonic_sums.pipeline.verify import Report

logger = logging.getLogger(__name__)


def record_verification_run(command: str, tolerance: Optional[float] = None, notes: str = None) -> int:
    """Record a verification run.

    Args:
        command: The command that produced the run ('verify-all', 'audit', ...)
        tolerance: Tolerance override used for the run, if any
        notes: Optional notes about this run

    Returns:
        run_id: ID of the created run record
    """
    init_db()
    with session_scope() as session:
        run = VerificationRun(
            created_at=datetime.utcnow(),
            command=command,
            tolerance=tolerance,
            notes=notes or f"{command} run",
        )
        session.add(run)
        session.flush()
        run_id = run.run_id

    logger.info(f"✓ Verification run recorded with ID: {run_id}")
    return run_id


def persist_reports(run_id: int, reports: Sequence[Report]) -> int:
    """Store one ReportRecord per report; returns the number stored."""
    with session_scope() as session:
        session.add_all([
            ReportRecord(
                run_id=run_id,
                family=r.family,
                params=json.dumps(r.params, sort_keys=True),
                lhs_value=r.lhs,
                lhs_bound=r.lhs_bound,
                rhs_value=r.rhs,
                rhs_bound=r.rhs_bound,
                difference=r.difference,
                verdict=r.verdict,
                runtime=r.runtime,
                terms_used=r.terms_used,
                diagnostics=r.diagnostics or None,
            )
            for r in reports
        ])

    logger.info(f"✓ Stored {len(reports)} reports for run {run_id}")
    return len(reports)


def persist_errata(run_id: int, entries: Sequence[ErrataEntry]) -> int:
    with session_scope() as session:
        session.add_all([
            ErrataRecord(
                run_id=run_id,
                target=e.target,
                params=json.dumps(e.params, sort_keys=True),
                oracle_value=e.oracle,
                printed_value=e.printed,
                corrected_value=e.corrected,
                printed_matches=e.printed_matches,
                corrected_matches=e.corrected_matches,
                verdict=e.verdict,
                note=e.note,
            )
            for e in entries
        ])

    logger.info(f"✓ Stored {len(entries)} errata entries for run {run_id}")
    return len(entries)


def get_latest_run_info() -> Optional[Dict]:
    """Get information about the latest verification run.

    Returns:
        Dictionary with run information or None
    """
    init_db()
    with session_scope() as session:
        latest_run = session.query(VerificationRun)\
            .order_by(VerificationRun.run_id.desc())\
            .first()

        if latest_run:
            info = latest_run.to_dict()
            info['verdicts'] = {}
            for record in latest_run.reports:
                info['verdicts'][record.verdict] = info['verdicts'].get(record.verdict, 0) + 1
            return info
        return None


def list_runs(limit: int = 10) -> List[Dict]:
    """Most recent runs first."""
    init_db()
    with session_scope() as session:
        runs = session.query(VerificationRun)\
            .order_by(VerificationRun.run_id.desc())\
            .limit(limit)\
            .all()
        return [run.to_dict() for run in runs]


def run_reports(run_id: int) -> List[Dict]:
    """Stored reports of one run, in insertion (registry) order."""
    with session_scope() as session:
        records = session.query(ReportRecord)\
            .filter(ReportRecord.run_id == run_id)\
            .order_by(ReportRecord.report_id)\
            .all()
        return [record.to_dict() for record in records]
