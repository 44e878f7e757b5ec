"""Command-line interface: evaluate, reduce, verify and audit.

Exit status: 0 when everything requested passed, 1 on any fail/suspect
verdict or unreachable tolerance, 2 on usage errors.
"""
import argparse
import json
import logging
import sys
from dataclasses import replace
from typing import List, Optional

from harmonic_sums.algebra.compositions import format_composition, parse_composition
from harmonic_sums.algebra.mzv import simplify
from harmonic_sums.config import Config
from harmonic_sums.db import test_connection
from harmonic_sums.errors import (
    HarmonicSumsError,
    InvalidCompositionError,
    InvalidEtaSpecError,
    InvalidToleranceError,
    NotAdmissibleError,
    OutOfRangeError,
    ParseError,
    UnknownFamilyError,
)
from harmonic_sums.eta.engine import EtaResult, eta_on_qsym
from harmonic_sums.eta.spec import EtaSpec, partial_fraction_reduce
from harmonic_sums.expressions import parse_qsym, parse_series
from harmonic_sums.numeric.mzv_numeric import set_cache_path, zeta_value
from harmonic_sums.numeric.series import lhs_value
from harmonic_sums.pipeline.audit import VERDICT_UNRESOLVED, audit_boundaries
from harmonic_sums.pipeline.catalog import FAMILIES, Identity, default_identities, instantiate
from harmonic_sums.pipeline.persist import list_runs, persist_errata, persist_reports, record_verification_run
from harmonic_sums.pipeline.verify import all_passed, reports_table, reports_to_json, verify, verify_all

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

# Errors that mean the request itself was malformed or out of range
USAGE_ERRORS = (
    ParseError,
    InvalidCompositionError,
    NotAdmissibleError,
    InvalidEtaSpecError,
    InvalidToleranceError,
    OutOfRangeError,
    UnknownFamilyError,
)

PARAM_FLAGS = ('k', 'l', 'q', 'eq', 'n', 'j')


def tolerance(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not Config.MIN_TOL <= value <= Config.MAX_TOL:
        raise argparse.ArgumentTypeError(
            f"tolerance must lie in [{Config.MIN_TOL:g}, {Config.MAX_TOL:g}], got {value:g}"
        )
    return value


def positive_int(text: str) -> int:
    try:
        value = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='harmonic-sums',
        description='Verify harmonic-number summation identities against multiple zeta values',
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=tolerance, help='Absolute tolerance in [1e-10, 1e-2]')
    common.add_argument('--max-terms', type=positive_int, help='Term budget for direct summation')
    common.add_argument('--cache', help='Zeta-value cache file (overrides MZV_CACHE_PATH)')
    common.add_argument('--json', action='store_true', help='Emit JSON instead of text')

    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('eval-mzv', parents=[common], help='Numeric value of zeta(I)')
    p.add_argument('composition', help='Composition such as 3,1 (first part outermost)')

    for name, text in (('eval-eta', 'Numeric value of an H-function series'),
                       ('eta-symbolic', 'H-function of a quasi-symmetric function as zeta values')):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument('spec', help='Exponent sequence such as 0,1,1')
        p.add_argument('--u', required=True, help="Numerator, e.g. 'h2*e1' or 'p1*p1@+1'")
        if name == 'eval-eta':
            p.add_argument('--start', type=int, choices=(0, 1), default=1, help='First summation index')
        else:
            p.add_argument('--simplify', action='store_true', help='Reduce toward single zeta values')

    p = sub.add_parser('reduce-eta', parents=[common], help='Partial-fraction reduction of an H-function')
    p.add_argument('spec', help='Exponent sequence such as 1,1,1')

    p = sub.add_parser('verify', parents=[common], help='Verify one identity family instance')
    p.add_argument('family', help=f"One of: {', '.join(FAMILIES)}")
    for flag in PARAM_FLAGS:
        p.add_argument(f'--{flag}', type=int)

    p = sub.add_parser('verify-all', parents=[common], help='Verify every family over its default grid')
    p.add_argument('--families', nargs='*', help='Restrict to these families')
    p.add_argument('--workers', type=positive_int, default=Config.VERIFY_WORKERS)
    p.add_argument('--record', action='store_true', help='Store the run in the database')
    p.add_argument('--timings', action='store_true', help='Include runtimes in JSON output')

    p = sub.add_parser('audit', parents=[common], help='Audit printed formulas against the oracle')
    p.add_argument('--record', action='store_true', help='Store the errata in the database')

    p = sub.add_parser('runs', parents=[common], help='List recently recorded runs')
    p.add_argument('--limit', type=positive_int, default=10)

    return parser


def _print_value(args, label: str, value, requested: float):
    if args.json:
        print(json.dumps({'expression': label, 'tolerance': requested, **value.to_dict()}))
    else:
        print(f"{value.value:.12g} ± {requested:g}")


def cmd_eval_mzv(args) -> int:
    composition = parse_composition(args.composition)
    tol = args.tol or Config.DEFAULT_TOL
    value = zeta_value(composition, tol, max_terms=args.max_terms)
    _print_value(args, f"z[{format_composition(composition)}]", value, tol)
    return EXIT_OK


def cmd_eval_eta(args) -> int:
    spec = EtaSpec.parse(args.spec)
    tol = args.tol or Config.DEFAULT_TOL
    terms = parse_series(args.u, spec, args.start)
    value = lhs_value(terms, tol, max_terms=args.max_terms)
    _print_value(args, f"{spec.label()}({args.u}; n>={args.start})", value, tol)
    return EXIT_OK


def cmd_reduce_eta(args) -> int:
    combo = partial_fraction_reduce(EtaSpec.parse(args.spec))
    if args.json:
        print(json.dumps({str(spec): str(c) for spec, c in combo.items()}))
    else:
        print(combo)
    return EXIT_OK


def cmd_eta_symbolic(args) -> int:
    result = eta_on_qsym(EtaSpec.parse(args.spec), parse_qsym(args.u))
    if args.simplify:
        result = EtaResult(simplify(result.symbolic), result.residual)
    if args.json:
        print(json.dumps(result.to_dict()))
    else:
        print(result)
    return EXIT_OK


def _emit_reports(args, reports) -> int:
    if args.json:
        print(reports_to_json(reports, include_runtime=getattr(args, 'timings', False)))
    else:
        print(reports_table(reports))
    return EXIT_OK if all_passed(reports) else EXIT_FAILED


def _with_budget(identity: Identity, max_terms: Optional[int]) -> Identity:
    return identity if max_terms is None else replace(identity, max_terms=max_terms)


def cmd_verify(args) -> int:
    params = {flag: getattr(args, flag) for flag in PARAM_FLAGS if getattr(args, flag) is not None}
    identity = _with_budget(instantiate(args.family, params), args.max_terms)
    return _emit_reports(args, [verify(identity, tol=args.tol)])


def cmd_verify_all(args) -> int:
    if args.record and not test_connection():
        return EXIT_FAILED
    identities = [_with_budget(i, args.max_terms) for i in default_identities(args.families)]
    reports = verify_all(identities, tol=args.tol, workers=args.workers)
    if args.record:
        run_id = record_verification_run('verify-all', tolerance=args.tol)
        persist_reports(run_id, reports)
    return _emit_reports(args, reports)


def _number(x: Optional[float]) -> str:
    return 'n/a' if x is None else f"{x:.12g}"


def cmd_audit(args) -> int:
    if args.record and not test_connection():
        return EXIT_FAILED
    entries = audit_boundaries()
    if args.record:
        run_id = record_verification_run('audit')
        persist_errata(run_id, entries)
    if args.json:
        print(json.dumps([e.to_dict() for e in entries], indent=2))
    else:
        for e in entries:
            print(f"{e.target:<20} {json.dumps(e.params):<20} oracle={_number(e.oracle)} "
                  f"printed={_number(e.printed)} corrected={_number(e.corrected)} -> {e.verdict}")
    return EXIT_FAILED if any(e.verdict == VERDICT_UNRESOLVED for e in entries) else EXIT_OK


def cmd_runs(args) -> int:
    if not test_connection():
        return EXIT_FAILED
    runs = list_runs(args.limit)
    if args.json:
        print(json.dumps(runs, indent=2))
    elif not runs:
        print("No recorded runs")
    else:
        for run in runs:
            print(f"{run['run_id']:>5}  {run['created_at']}  {run['command']:<12} "
                  f"reports={run['n_reports']} errata={run['n_errata']}")
    return EXIT_OK


COMMANDS = {
    'eval-mzv': cmd_eval_mzv,
    'eval-eta': cmd_eval_eta,
    'reduce-eta': cmd_reduce_eta,
    'eta-symbolic': cmd_eta_symbolic,
    'verify': cmd_verify,
    'verify-all': cmd_verify_all,
    'audit': cmd_audit,
    'runs': cmd_runs,
}


def run(argv: Optional[List[str]] = None) -> int:
    """Parse ``argv`` and dispatch; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    if args.cache:
        set_cache_path(args.cache)
    try:
        return COMMANDS[args.command](args)
    except USAGE_ERRORS as e:
        parser.print_usage(sys.stderr)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except HarmonicSumsError as e:
        logger.error(f"✗ {args.command} failed: {e}")
        return EXIT_FAILED


def main():
    logging.basicConfig(
        level=getattr(logging, Config.LOG_LEVEL, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )
    sys.exit(run(sys.argv[1:]))


if __name__ == '__main__':
    main()
