"""Pipeline orchestrator - verifies the catalog, audits errata, records the run."""
import argparse
import logging
import sys
import time
from datetime import datetime

from harmonic_sums.config import Config
from harmonic_sums.numeric.mzv_numeric import set_cache_path
from harmonic_sums.pipeline.audit import VERDICT_UNRESOLVED, audit_boundaries
from harmonic_sums.pipeline.catalog import default_identities
from harmonic_sums.pipeline.persist import persist_errata, persist_reports, record_verification_run
from harmonic_sums.pipeline.verify import all_passed, reports_table, verify_all

logger = logging.getLogger(__name__)


def run_pipeline(families=None, tol: float = None, workers: int = None, record: bool = True) -> bool:
    """Run verification, audit and (optionally) persistence.

    Args:
        families: Family names to verify (default: all)
        tol: Override for the per-family tolerances
        workers: Verification thread count
        record: If True, store reports and errata in the database

    Returns:
        True when every identity passed and no audit target is unresolved
    """
    logger.info("=" * 60)
    logger.info("HARMONIC SUM IDENTITY VERIFICATION")
    logger.info("=" * 60)

    start_time = time.time()
    steps_completed = []

    try:
        # Step 1: Verify identities
        logger.info("\n[1/3] VERIFYING IDENTITIES...")
        step_start = time.time()
        reports = verify_all(default_identities(families), tol=tol, workers=workers)
        steps_completed.append(('Verify Identities', time.time() - step_start))

        # Step 2: Audit printed formulas
        logger.info("\n[2/3] AUDITING PRINTED FORMULAS...")
        step_start = time.time()
        errata = audit_boundaries()
        steps_completed.append(('Audit Errata', time.time() - step_start))

        # Step 3: Persist results
        if record:
            logger.info("\n[3/3] PERSISTING RESULTS...")
            step_start = time.time()
            run_id = record_verification_run('run-all', tolerance=tol,
                                             notes=f"Full pipeline run at {datetime.now()}")
            persist_reports(run_id, reports)
            persist_errata(run_id, errata)
            steps_completed.append(('Persist Results', time.time() - step_start))
        else:
            logger.info("\n[3/3] SKIPPING PERSISTENCE")
            steps_completed.append(('Persist Results', 0))

        total_time = time.time() - start_time

        # Summary
        logger.info("\n" + "=" * 60)
        logger.info("PIPELINE COMPLETED")
        logger.info("=" * 60)
        logger.info("\n" + reports_table(reports))
        logger.info("\nTiming Summary:")
        for step_name, step_time in steps_completed:
            logger.info(f"  {step_name:.<40} {step_time:.2f}s")
        logger.info(f"  {'TOTAL':.>40} {total_time:.2f}s")

        unresolved = [e for e in errata if e.verdict == VERDICT_UNRESOLVED]
        if unresolved:
            logger.warning(f"✗ {len(unresolved)} audit target(s) unresolved")
        return all_passed(reports) and not unresolved

    except Exception as e:
        logger.error(f"\n✗ Pipeline failed at step: {steps_completed[-1][0] if steps_completed else 'Verify Identities'}")
        logger.error(f"✗ Error: {str(e)}")
        raise


def main():
    """Command-line interface for the pipeline."""
    parser = argparse.ArgumentParser(
        description='Verify every registered identity family and audit the printed formulas'
    )
    parser.add_argument('--families', nargs='*', help='Restrict verification to these families')
    parser.add_argument('--tol', type=float, help='Override the per-family tolerance')
    parser.add_argument('--workers', type=int, default=Config.VERIFY_WORKERS, help='Verification threads')
    parser.add_argument('--cache', help='Zeta-value cache file (overrides MZV_CACHE_PATH)')
    parser.add_argument('--no-record', action='store_true', help='Do not store the run in the database')

    args = parser.parse_args()

    logging.basicConfig(
        level=getattr(logging, Config.LOG_LEVEL, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    if args.cache:
        set_cache_path(args.cache)

    ok = run_pipeline(families=args.families, tol=args.tol, workers=args.workers, record=not args.no_record)
    sys.exit(0 if ok else 1)


if __name__ == '__main__':
    main()
