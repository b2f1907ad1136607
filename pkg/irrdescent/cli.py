import json
import logging
import typing as tp

import click

from . import geometry as geo
from .algorithms import (CATALOG_COLUMNS, catalog_graph, convergent_figure_rows, convergent_figures_graph,
                         summary_graph)
from .analysis import brute_force_no_solution, run_survey, survey_table
from .constructions import (ConstructionDomainError, FigureKind, LemmaFailure, VerificationReport, build_figure,
                            pentagon_angle_chase, pentagon_lemma_side, verify_figure)
from .descent import MAX_TRIANGULAR_INDEX, catalog, descend_sequence, map_by_name
from .render import default_filename, write_svg

logger = logging.getLogger(__name__)

DEFAULT_FIGURE_KINDS = ('sqrt2', 'sqrt3', 'sqrt5', 'sqrt6', 'tri4')


class _EchoHandler(logging.Handler):
    """Sends log records to stderr through click."""

    def emit(self, record: logging.LogRecord) -> None:
        click.echo(self.format(record), err=True)


def _configure_logging(verbose: bool) -> None:
    package_logger = logging.getLogger('irrdescent')
    if not any(isinstance(handler, _EchoHandler) for handler in package_logger.handlers):
        handler = _EchoHandler()
        handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
        package_logger.addHandler(handler)
    package_logger.setLevel(logging.DEBUG if verbose else logging.WARNING)


def _emit(ctx: click.Context, text: str, payload: tp.Any) -> None:
    if ctx.obj['format'] == 'json':
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(text)


@click.group()
@click.option('--format', 'output_format', type=click.Choice(['text', 'json']), default='text',
              help='Output format.')
@click.option('--precision', type=int, default=geo.DEFAULT_PRECISION, show_default=True,
              help='Working precision of figure computations, in bits.')
@click.option('-v', '--verbose', is_flag=True, help='Log debugging details.')
@click.pass_context
def main(ctx: click.Context, output_format: str, precision: int, verbose: bool) -> None:
    """Infinite descent checks for square roots of nonsquare integers."""
    _configure_logging(verbose)
    try:
        ctx.with_resource(geo.precision(precision))
    except ValueError as error:
        raise click.BadParameter(str(error), param_hint='--precision')
    ctx.obj = {'format': output_format}


@main.command('verify-maps')
@click.option('--triangular-max', type=click.IntRange(min=1, max=MAX_TRIANGULAR_INDEX), default=8,
              show_default=True,
              help='Check the triangular descents up to this n.')
@click.pass_context
def verify_maps(ctx: click.Context, triangular_max: int) -> None:
    """Form multiplier and decrease factor of every shipped descent map."""
    maps = catalog(triangular_max)
    rows = list(catalog_graph('maps').run(maps=lambda: ({'map': descent_map} for descent_map in maps)))
    summary = next(iter(summary_graph('entries', 'identity_holds', 'all_hold', label_column='name')
                        .run(entries=lambda: iter(rows))))
    header = ('name', 'k', 'c', 'lambda', 'valid_descent', 'identity_holds')
    lines = [header] + [
        (row['name'], str(row['k']), str(row['c']), row['lambda_decimal'],
         'yes' if row['valid_descent'] else 'no', 'yes' if row['identity_holds'] else 'no')
        for row in rows
    ]
    widths = [max(len(line[i]) for line in lines) for i in range(len(header))]
    table = '\n'.join('  '.join(cell.ljust(width) for cell, width in zip(line, widths)).rstrip()
                      for line in lines)
    payload = {'maps': [{column: row[column] for column in CATALOG_COLUMNS} for row in rows],
               'all_hold': summary['all_hold'], 'failed': summary['failed']}
    _emit(ctx, table, payload)
    if not summary['all_hold']:
        logger.error('maps failing their identity: %s', ', '.join(summary['failed']))
        ctx.exit(1)


@main.command()
@click.argument('map_name')
@click.argument('a', type=int)
@click.argument('b', type=int)
@click.option('--max-steps', type=click.IntRange(min=1), default=100, show_default=True,
              help='Maximal number of recorded pairs, the start included.')
@click.pass_context
def descend(ctx: click.Context, map_name: str, a: int, b: int, max_steps: int) -> None:
    """Iterates a descent map from (A, B)."""
    try:
        descent_map = map_by_name(map_name)
    except (KeyError, ValueError) as error:
        raise click.BadParameter(str(error).strip('"\''), param_hint='MAP_NAME')
    if a < 0 or b < 0:
        raise click.BadParameter(f'the start ({a}, {b}) must be nonnegative', param_hint='A B')
    trajectory = descend_sequence(descent_map, a, b, max_steps)
    lines = [f'{index}: a={step.a} b={step.b} form={step.form_value}'
             for index, step in enumerate(trajectory.steps, start=1)]
    lines.append(f'stopped: {trajectory.termination.value}')
    payload = {
        'map': trajectory.name,
        'steps': [{'a': step.a, 'b': step.b, 'form_value': step.form_value} for step in trajectory.steps],
        'termination': trajectory.termination.value,
    }
    _emit(ctx, '\n'.join(lines), payload)


def _report_lines(report: VerificationReport) -> list[str]:
    verdict = 'passed' if report.passed else 'FAILED'
    lines = [f'{report.kind} figure a={report.a} b={report.b}: {verdict}']
    for check in report.identities:
        lines.append(f'  {check.name}: {"pass" if check.passed else "fail"} '
                     f'lhs={geo.CONTEXT.nstr(check.lhs, 15)} rhs={geo.CONTEXT.nstr(check.rhs, 15)}')
    return lines


@main.command()
@click.argument('kind', type=click.Choice(['sqrt2', 'sqrt3', 'sqrt5', 'sqrt6', 'tri']))
@click.argument('numbers', nargs=-1, type=int)
@click.option('-o', '--output', 'output', type=click.Path(dir_okay=False), default=None,
              help='SVG file, <kind>_<a>_<b>.svg by default.')
@click.pass_context
def figure(ctx: click.Context, kind: str, numbers: tuple[int, ...], output: tp.Optional[str]) -> None:
    """Draws and verifies a figure: KIND A B, or tri N A B."""
    expected = 3 if kind == 'tri' else 2
    if len(numbers) != expected:
        raise click.UsageError(f'{kind} figures take {"N A B" if kind == "tri" else "A B"}, got {len(numbers)} numbers')
    try:
        figure_kind = FigureKind.by_name(kind, numbers[0] if kind == 'tri' else None)
        fig = build_figure(figure_kind, *numbers[-2:])
    except ConstructionDomainError as error:
        raise click.BadParameter(str(error), param_hint='A B')
    except ValueError as error:
        raise click.BadParameter(str(error), param_hint='N')
    report = verify_figure(fig)
    path = None
    if 'construction' in report.failures:
        logger.error('not drawing the malformed %s figure', figure_kind.label)
    else:
        path = write_svg(fig, path=output or default_filename(fig))
    lines = _report_lines(report)
    if path is not None:
        lines.append(f'svg: {path}')
    payload = report.to_dict()
    payload['passed'] = report.passed
    payload['svg'] = None if path is None else str(path)
    _emit(ctx, '\n'.join(lines), payload)
    if not report.passed:
        ctx.exit(1)


@main.command('verify-figures')
@click.argument('kinds', nargs=-1)
@click.option('--count', type=click.IntRange(min=1), default=8, show_default=True,
              help='Number of convergents of sqrt(k) to try per kind.')
@click.pass_context
def verify_figures(ctx: click.Context, kinds: tuple[str, ...], count: int) -> None:
    """Verifies the figures of the convergents to sqrt(k) for each kind."""
    try:
        figure_kinds = [FigureKind.by_label(label) for label in kinds or DEFAULT_FIGURE_KINDS]
    except ValueError as error:
        raise click.BadParameter(str(error), param_hint='KINDS')
    rows = list(convergent_figures_graph('figures').run(
        figures=lambda: (row for kind in figure_kinds for row in convergent_figure_rows(kind, count))))
    summaries = list(summary_graph('results', 'passed', 'all_passed', keys=['label'], label_column='a')
                     .run(results=lambda: iter(rows)))
    lines = [f'{row["label"]} ({row["a"]}, {row["b"]}): {"pass" if row["passed"] else "FAIL"}' for row in rows]
    payload = {
        'figures': [row['report'].to_dict() | {'passed': row['passed']} for row in rows],
        'kinds': summaries,
    }
    _emit(ctx, '\n'.join(lines), payload)
    if not all(summary['all_passed'] for summary in summaries):
        ctx.exit(1)


@main.command()
@click.argument('n_max', type=click.IntRange(min=2, max=MAX_TRIANGULAR_INDEX))
@click.pass_context
def survey(ctx: click.Context, n_max: int) -> None:
    """Square roots of the triangular numbers T_2 .. T_N_MAX."""
    rows = run_survey(n_max)
    _emit(ctx, survey_table(rows), [row.to_dict() for row in rows])


@main.command()
@click.argument('k', type=click.IntRange(min=1))
@click.argument('b_max', type=click.IntRange(min=1))
@click.pass_context
def oracle(ctx: click.Context, k: int, b_max: int) -> None:
    """Searches a^2 = K b^2 for 1 <= b <= B_MAX."""
    result = brute_force_no_solution(k, b_max)
    if result.no_solution:
        text = f'k={k}: no solution with 1 <= b <= {b_max}'
    else:
        a, b = result.witness
        text = f'k={k}: solution a={a} b={b}'
    _emit(ctx, text, result.to_dict())


@main.command('pentagon-lemma')
@click.pass_context
def pentagon_lemma(ctx: click.Context) -> None:
    """Exact side and angles of the doubly covered pentagons."""
    try:
        side = pentagon_lemma_side()
        chase = pentagon_angle_chase()
    except LemmaFailure as error:
        logger.error('%s', error)
        ctx.exit(1)
    lines = [f'x = {side} = a - 2b with a = sqrt(5), b = 1']
    lines += [f'{label}: {value} pi' for label, value in chase]
    payload = {
        'side': str(side),
        'equals_a_minus_2b': True,
        'angles': [{'label': label, 'multiple_of_pi': str(value)} for label, value in chase],
    }
    _emit(ctx, '\n'.join(lines), payload)


if __name__ == '__main__':
    main()
