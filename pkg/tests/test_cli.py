"""Tests for the command-line interface."""
import json

import mpmath
import pytest

from harmonic_sums.algebra.mzv import MzvExpr
from harmonic_sums import cli
from harmonic_sums.cli import EXIT_FAILED, EXIT_OK, EXIT_USAGE, build_parser, run
from harmonic_sums.pipeline.persist import list_runs

z = MzvExpr.zeta


@pytest.fixture
def cache_args(tmp_path):
    return ['--cache', str(tmp_path / 'cli.cache')]


def test_reduce_eta(capsys):
    assert run(['reduce-eta', '1,1,1']) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1/2*eta[1,1] - 1/2*eta[0,1,1]"


def test_reduce_eta_json(capsys):
    assert run(['reduce-eta', '1,1,1', '--json']) == EXIT_OK
    assert json.loads(capsys.readouterr().out) == {'1,1': '1/2', '0,1,1': '-1/2'}


def test_eta_symbolic(capsys):
    assert run(['eta-symbolic', '2', '--u', 'p1', '--json']) == EXIT_OK
    result = json.loads(capsys.readouterr().out)
    assert MzvExpr.parse(result['symbolic']) == z(2, 1) + z(3)
    assert result['residual'] == []


def test_eta_symbolic_simplified(capsys):
    assert run(['eta-symbolic', '2', '--u', 'p1', '--simplify', '--json']) == EXIT_OK
    assert MzvExpr.parse(json.loads(capsys.readouterr().out)['symbolic']) == z(3) * 2


def test_eta_symbolic_elementary(capsys):
    assert run(['eta-symbolic', '0,1,1', '--u', 'e3']) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1"


def test_eval_mzv(capsys, cache_args):
    assert run(['eval-mzv', '3,1', '--tol', '1e-8'] + cache_args) == EXIT_OK
    out = capsys.readouterr().out
    value = float(out.split()[0])
    assert abs(value - float(mpmath.zeta(4)) / 4) < 1e-8
    assert out.strip().endswith("± 1e-08")


def test_eval_eta(capsys, cache_args):
    assert run(['eval-eta', '2', '--u', 'p1', '--tol', '1e-8', '--json'] + cache_args) == EXIT_OK
    record = json.loads(capsys.readouterr().out)
    assert abs(record['value'] - 2 * float(mpmath.zeta(3))) < 1e-8
    assert record['tolerance'] == 1e-8


@pytest.mark.parametrize('argv', [
    ['eval-mzv', '1,2'],
    ['eval-mzv', '2', '--tol', '0.1'],
    ['eval-eta', '2', '--u', 'p1', '--start', '0'],
    ['eta-symbolic', '2', '--u', 'q1'],
    ['reduce-eta', '1'],
    ['verify', 'qpnn1', '--k', '0', '--l', '1'],
    ['verify', 'no-such-family'],
    ['verify', 'eulers', '--eq', '1', '--tol', '1e-9'],
    [],
])
def test_usage_errors(argv, capsys):
    assert run(argv) == EXIT_USAGE


def test_out_of_range_message(capsys):
    run(['verify', 'qpnn1', '--k', '0', '--l', '1'])
    assert 'zeta(l+1)' in capsys.readouterr().err


def test_verify_json(capsys, cache_args):
    assert run(['verify', 'eulers', '--eq', '1', '--json'] + cache_args) == EXIT_OK
    (record,) = json.loads(capsys.readouterr().out)
    assert record['identity'] == 'eulers(eq=1)'
    assert record['verdict'] == 'pass'
    assert 'runtime' not in record


def test_verify_reports_unreachable_as_failure(capsys, cache_args):
    assert run(['verify', 'eulers', '--eq', '1', '--max-terms', '500'] + cache_args) == EXIT_FAILED
    assert 'ToleranceUnreachableError' in capsys.readouterr().out


def test_verify_all_records_run(memory_db, capsys, cache_args):
    argv = ['verify-all', '--families', 'eulers', 'spiess-base', '--record', '--workers', '2'] + cache_args
    assert run(argv) == EXIT_OK
    (latest,) = list_runs(limit=1)
    assert latest['command'] == 'verify-all'
    assert latest['n_reports'] == 6
    assert 'eulers(eq=2)' in capsys.readouterr().out


def test_runs_listing(memory_db, capsys):
    assert run(['runs']) == EXIT_OK
    assert capsys.readouterr().out.strip() == "No recorded runs"


def test_runs_fails_without_database(monkeypatch, capsys):
    monkeypatch.setattr(cli, 'test_connection', lambda: False)
    assert run(['runs']) == EXIT_FAILED
    assert capsys.readouterr().out == ''


def test_record_checks_database_before_running(monkeypatch, cache_args):
    monkeypatch.setattr(cli, 'test_connection', lambda: False)
    monkeypatch.setattr(cli, 'verify_all', lambda *a, **k: pytest.fail("ran without a database"))
    assert run(['verify-all', '--families', 'eulers', '--record'] + cache_args) == EXIT_FAILED


def test_parser_lists_families():
    help_text = build_parser().format_help()
    assert 'verify-all' in help_text
    assert 'audit' in help_text


def test_exit_codes_are_distinct():
    assert len({EXIT_OK, EXIT_FAILED, EXIT_USAGE}) == 3


if __name__ == '__main__':
    pytest.main([__file__, '-v'])
