"""Verification runner: evaluate both sides of an identity and compare."""
import json
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import numpy as np
import pandas as pd

from harmonic_sums.config import Config
from harmonic_sums.errors import HarmonicSumsError, InvalidToleranceError
from harmonic_sums.numeric.mzv_numeric import MzvCache, expr_value
from harmonic_sums.numeric.series import lhs_value
from harmonic_sums.pipeline.catalog import Identity, default_identities

logger = logging.getLogger(__name__)

MIN_VERIFY_TOL = 1e-8
VERDICTS = ('pass', 'fail', 'suspect')
SIGNIFICANT_DIGITS = 12


@dataclass
class Report:
    """Outcome of verifying one identity instance."""

    identity: str
    family: str
    params: Dict[str, int]
    lhs: Optional[float] = None
    lhs_bound: Optional[float] = None
    rhs: Optional[float] = None
    rhs_bound: Optional[float] = None
    difference: Optional[float] = None
    verdict: str = 'suspect'
    runtime: float = 0.0
    terms_used: int = 0
    diagnostics: str = ''
    tolerance: float = field(default=0.0, repr=False)

    @property
    def passed(self) -> bool:
        return self.verdict == 'pass'

    def to_dict(self, include_runtime: bool = True):
        data = {
            'identity': self.identity,
            'params': dict(self.params),
            'lhs': _round(self.lhs),
            'lhs_bound': _round(self.lhs_bound),
            'rhs': _round(self.rhs),
            'rhs_bound': _round(self.rhs_bound),
            'difference': _round(self.difference),
            'verdict': self.verdict,
            'runtime': _round(self.runtime),
            'terms_used': self.terms_used,
            'diagnostics': self.diagnostics,
        }
        if not include_runtime:
            del data['runtime']
        return data


def _round(value: Optional[float]) -> Optional[float]:
    if value is None:
        return None
    return float(f"{value:.{SIGNIFICANT_DIGITS}g}")


def verify(identity: Identity, tol: Optional[float] = None,
           cache: Optional[MzvCache] = None) -> Report:
    """Evaluate LHS (series) and RHS (zeta polynomial) and compare them.

    The verdict is 'pass' iff |lhs - rhs| <= lhs_bound + rhs_bound + tol.
    Evaluation failures give 'suspect' with the error in diagnostics.

    Args:
        identity: Instantiated identity
        tol: Comparison tolerance (default: the family's registered tolerance)
        cache: Zeta-value cache for the RHS

    Returns:
        Report

    Raises:
        InvalidToleranceError: if tol is below 1e-8 or above the configured maximum
    """
    tol = identity.tol if tol is None else tol
    if not MIN_VERIFY_TOL <= tol <= Config.MAX_TOL:
        raise InvalidToleranceError(
            f"Verification tolerance must lie in [{MIN_VERIFY_TOL:g}, {Config.MAX_TOL:g}], got {tol:g}"
        )
    report = Report(identity=identity.identity_id, family=identity.family,
                    params=dict(identity.params), tolerance=tol)
    start = time.time()
    try:
        left = lhs_value(identity.lhs, tol / 2, max_terms=identity.max_terms)
        report.lhs, report.lhs_bound = left.value, left.error_bound
        right = expr_value(identity.rhs, tol / 2, cache=cache)
        report.rhs, report.rhs_bound = right.value, right.error_bound
        report.terms_used = max(left.terms_used, right.terms_used)
        report.difference = abs(left.value - right.value)
        allowed = left.error_bound + right.error_bound + tol
        report.verdict = 'pass' if report.difference <= allowed else 'fail'
        if report.verdict == 'fail':
            report.diagnostics = f"difference {report.difference:.3g} exceeds {allowed:.3g}"
    except (HarmonicSumsError, ArithmeticError, np.linalg.LinAlgError) as e:
        report.verdict = 'suspect'
        report.diagnostics = f"{type(e).__name__}: {e}"
        logger.warning(f"✗ {identity.identity_id}: {report.diagnostics}")
    report.runtime = time.time() - start

    marker = '✓' if report.passed else '✗'
    diff = 'n/a' if report.difference is None else f"{report.difference:.3g}"
    logger.info(f"{marker} {identity.identity_id}: {report.verdict} (diff={diff}, {report.runtime:.2f}s)")
    return report


def verify_all(identities: Optional[Sequence[Identity]] = None, tol: Optional[float] = None,
               workers: Optional[int] = None, cache: Optional[MzvCache] = None) -> List[Report]:
    """Verify identities concurrently; reports come back in input (registry) order.

    Args:
        identities: Identities to verify (default: every family's grid)
        tol: Override for the per-family tolerance
        workers: Thread count (default Config.VERIFY_WORKERS)
        cache: Zeta-value cache shared by all workers
    """
    if identities is None:
        identities = default_identities()
    workers = workers or Config.VERIFY_WORKERS
    logger.info(f"Verifying {len(identities)} identities with {workers} worker(s)...")

    start = time.time()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        reports = list(pool.map(lambda identity: verify(identity, tol=tol, cache=cache), identities))

    counts = {verdict: sum(r.verdict == verdict for r in reports) for verdict in VERDICTS}
    logger.info(f"✓ Verified {len(reports)} identities in {time.time() - start:.1f}s: "
                f"{counts['pass']} pass, {counts['fail']} fail, {counts['suspect']} suspect")
    return reports


def all_passed(reports: Sequence[Report]) -> bool:
    return all(r.passed for r in reports)


def reports_to_json(reports: Sequence[Report], include_runtime: bool = False) -> str:
    """JSON array of report records, floats rounded to 12 significant digits."""
    return json.dumps([r.to_dict(include_runtime=include_runtime) for r in reports], indent=2)


def reports_dataframe(reports: Sequence[Report]) -> pd.DataFrame:
    rows = [{
        'identity': r.identity,
        'lhs': r.lhs,
        'lhs_bound': r.lhs_bound,
        'rhs': r.rhs,
        'rhs_bound': r.rhs_bound,
        'difference': r.difference,
        'verdict': r.verdict,
        'runtime': round(r.runtime, 2),
        'terms_used': r.terms_used,
    } for r in reports]
    return pd.DataFrame(rows, columns=['identity', 'lhs', 'lhs_bound', 'rhs', 'rhs_bound',
                                       'difference', 'verdict', 'runtime', 'terms_used'])


def reports_table(reports: Sequence[Report]) -> str:
    """Plain-text table of reports followed by failure diagnostics."""
    df = reports_dataframe(reports)
    text = df.to_string(index=False, float_format=lambda x: f"{x:.12g}")
    problems = [r for r in reports if not r.passed]
    if problems:
        text += "\n\n" + "\n".join(f"{r.identity}: {r.diagnostics}" for r in problems)
    return text
