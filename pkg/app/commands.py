"""
Command-line interface

Commands are attached to a blueprint without a CLI group, so they appear
directly on the application's command group (see run.py).
"""
import logging
from pathlib import Path
from typing import List, Optional

import click
from flask import Blueprint, current_app

from app import chain_topology as ct
from app.complex_io import ComplexFileHandler
from app.cyclic_class import (
    SubgroupKind, SubgroupSpec, bf_verify, canonical_class, classify_subgroup,
    compare_normalizer_zh, normalizer, primitive_root,
)
from app.error_handlers import (
    EXIT_CHECK_FAILURE, ValidationError, cli_errors, parse_generators,
    validate_bound,
)
from app.heis_core import HeisElement, is_central
from app.model_e import fixed_point_census, fixed_set
from app.models import FAIL, PASS, Check, Report
from app.verifier import Verifier

verify_bp = Blueprint('verify', __name__, cli_group=None)
logger = logging.getLogger(__name__)

# Named homology targets with their expected betti numbers
HOMOLOGY_TARGETS = {
    's3': (ct.s3_via_double_cylinder, (1, 0, 0, 1)),
    'join-s3': (ct.s3_via_join, (1, 0, 0, 1)),
    'torus': (lambda: ct.torus_complex()[0], (1, 2, 1)),
    'circle': (ct.circle_complex, (1, 1)),
}

ARGS_SETTINGS = {'ignore_unknown_options': True}


def report_options(func):
    """Shared --bound, --json and --out options"""
    func = click.option('--out', 'out', type=click.Path(dir_okay=False, path_type=Path),
                        default=None, help='Also write the JSON report to this file')(func)
    func = click.option('--json', 'as_json', is_flag=True, help='Print the report as JSON')(func)
    func = click.option('--bound', type=int, envvar='HEISVC_BOUND', default=None,
                        help='Ball radius (defaults to HEISVC_BOUND or the configured bound)')(func)
    return func


def resolve_bound(bound: Optional[int], max_bound: int) -> int:
    if bound is None:
        bound = current_app.config['DEFAULT_BOUND']
    is_valid, message = validate_bound(bound, max_bound)
    if not is_valid:
        raise ValidationError(message)
    return bound


def new_report(command: List[str]) -> Report:
    return Report(tool_version=current_app.config['TOOL_VERSION'], command=command)


def emit(report: Report, as_json: bool, out: Optional[Path]):
    """
    Write the report to stdout (table or JSON) and optionally to a file

    Exits with the check-failure code when any check failed.
    """
    if out is not None:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(report.to_json() + '\n', encoding='utf-8')
        logger.info(f"Report written to {out}")

    if as_json:
        click.echo(report.to_json())
    else:
        click.echo(render_table(report))

    if not report.passed:
        raise click.exceptions.Exit(EXIT_CHECK_FAILURE)


def render_table(report: Report) -> str:
    lines = [f"heisvc {report.tool_version}: {' '.join(report.command)}", '']
    width = max((len(c.name) for c in report.checks), default=10) + 2
    for check in report.checks:
        lines.append(f"{check.name:<{width}}{check.status.upper()}")
        for key in sorted(check.data):
            value = check.data[key]
            if key == 'counterexamples' and not value:
                continue
            lines.append(f"    {key}: {_render_value(value)}")
    if report.findings:
        lines += ['', 'FINDINGS']
        for finding in report.findings:
            details = {k: v for k, v in finding.items() if k != 'finding'}
            lines.append(f"  {finding.get('finding')}: {_render_value(details)}")
    lines += ['', 'PASSED' if report.passed else 'FAILED']
    return '\n'.join(lines)


def _render_value(value) -> str:
    if isinstance(value, dict) and set(value) == {'a', 'b', 'c'}:
        return f"({value['a']},{value['b']},{value['c']})"
    if isinstance(value, list) and all(isinstance(v, str) for v in value):
        return '; '.join(value)
    return str(value)


@verify_bp.cli.command('classify', context_settings=ARGS_SETTINGS)
@click.argument('coords', nargs=3, type=int)
@report_options
@cli_errors
def classify_command(coords, bound, as_json, out):
    """Primitive root, conjugacy class and normalizer of the element A B C."""
    g = HeisElement(*coords)
    report = new_report(['classify', *(str(x) for x in coords)])

    decomposition = primitive_root(g)
    root = decomposition.root
    data = {
        'element': g.to_dict(),
        'decomposition': decomposition.to_dict(),
        'class': canonical_class(root).to_dict(),
    }
    if is_central(g):
        data['normalizer'] = 'whole group'
    else:
        data['normalizer'] = normalizer(root).to_dict()
        data['zh_comparison'] = compare_normalizer_zh(root).to_dict()

    report.add(Check('classify', PASS, data))
    emit(report, as_json, out)


@verify_bp.cli.command('fixed-set', context_settings=ARGS_SETTINGS)
@click.argument('generators', nargs=-1, required=True)
@report_options
@cli_errors
def fixed_set_command(generators, bound, as_json, out):
    """Fixed set of the subgroup generated by GENERATORS ("a b c ; a b c")."""
    is_valid, message, triples = parse_generators(generators)
    if not is_valid:
        raise ValidationError(message)

    bound = resolve_bound(bound, current_app.config['MAX_VERIFY_BOUND'])
    spec = SubgroupSpec.of(*triples)
    report = new_report(['fixed-set', ' ; '.join(' '.join(map(str, t)) for t in triples)])

    subgroup = classify_subgroup(spec)
    desc = fixed_set(spec)
    data = {'subgroup': subgroup.to_dict(), **desc.to_dict()}
    if subgroup.kind is SubgroupKind.NON_CENTRAL_CYCLIC:
        census = fixed_point_census(spec, bound)
        data['census'] = census.to_dict()
        data['census_bound'] = bound
        if census.zh != census.computed_normalizer:
            report.add_finding({
                'finding': 'census_differs_under_zh',
                'class': census.conj_class.to_dict(),
                **census.to_dict(),
            })

    report.add(Check('fixed_set', PASS, data))
    emit(report, as_json, out)


@verify_bp.cli.command('homology')
@click.argument('target')
@report_options
@cli_errors
def homology_command(target, bound, as_json, out):
    """Homology of s3, join-s3, torus, circle or a complex JSON file."""
    report = new_report(['homology', target])

    if target in HOMOLOGY_TARGETS:
        build, expected = HOMOLOGY_TARGETS[target]
        result = ct.homology(build())
        expected_result = ct.HomologyResult(tuple(ct.DegreeHomology(b) for b in expected))
        status = PASS if result.same_groups(expected_result) else FAIL
        data = {**result.to_dict(), 'expected': expected_result.describe()}
        if target in ('s3', 'join-s3'):
            other = 'join-s3' if target == 's3' else 's3'
            other_result = ct.homology(HOMOLOGY_TARGETS[other][0]())
            data['agrees_with'] = {other: result.same_groups(other_result)}
            if not result.same_groups(other_result):
                status = FAIL
        report.add(Check(f"homology.{target}", status, data))
    else:
        complex_ = ComplexFileHandler().load_or_raise(target)
        result = ct.homology(complex_)
        report.add(Check('homology.file', PASS, {
            **result.to_dict(),
            'ranks': list(complex_.ranks),
            'euler_characteristic': result.euler_characteristic(),
        }))

    emit(report, as_json, out)


@verify_bp.cli.command('bf-verify')
@report_options
@cli_errors
def bf_verify_command(bound, as_json, out):
    """Brute-force cross-check of the cyclic subgroup classification."""
    bound = resolve_bound(bound, current_app.config['MAX_BF_BOUND'])
    report = new_report(['bf-verify', f'--bound={bound}'])

    result = bf_verify(bound, current_app.config['COUNTEREXAMPLE_LIMIT'])
    for tally in result['checks']:
        report.add(Check(f"bf.{tally['name']}", PASS if tally['failed'] == 0 else FAIL, tally))
    for finding in result['findings']:
        report.add_finding(finding)

    emit(report, as_json, out)


@verify_bp.cli.command('verify-all')
@report_options
@cli_errors
def verify_all_command(bound, as_json, out):
    """Run every verification suite."""
    bound = resolve_bound(bound, current_app.config['MAX_VERIFY_BOUND'])
    report = new_report(['verify-all', f'--bound={bound}'])

    Verifier.from_config(current_app.config, bound=bound).run(report)
    emit(report, as_json, out)
