"""Tests for the pipeline orchestrator."""
import pytest

from harmonic_sums.pipeline import run_all
from harmonic_sums.pipeline.audit import ErrataEntry
from harmonic_sums.pipeline.persist import get_latest_run_info


def test_pipeline_records_reports_and_errata(memory_db, monkeypatch):
    entries = [ErrataEntry('euler-sign', {'n': 3}, 0.27, 2.98, 0.27)]
    monkeypatch.setattr(run_all, 'audit_boundaries', lambda: entries)

    assert run_all.run_pipeline(families=['eulers'], workers=2, record=True)
    info = get_latest_run_info()
    assert info['command'] == 'run-all'
    assert info['n_reports'] == 2
    assert info['n_errata'] == 1
    assert info['verdicts'] == {'pass': 2}


def test_unresolved_audit_fails_the_pipeline(memory_db, monkeypatch):
    entries = [ErrataEntry('euler-sign', {'n': 3}, 0.27, 2.98, 1.5)]
    monkeypatch.setattr(run_all, 'audit_boundaries', lambda: entries)

    assert not run_all.run_pipeline(families=['eulers'], record=False)
    assert get_latest_run_info() is None


@pytest.mark.slow
def test_full_pipeline(memory_db):
    assert run_all.run_pipeline(families=['eulers', 'qn2'], record=True)


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
