import typing as tp

from . import operations
from .analysis import convergents
from .constructions import FigureKind, build_figure, verify_figure
from .descent import decrease_factor, is_descent_factor, preserves_ray, safe_form_multiplier
from .exact import q_to_decimal
from .graph import Graph

LAMBDA_DIGITS = 10

CATALOG_COLUMNS = ('name', 'k', 'c', 'lambda', 'lambda_decimal', 'valid_descent', 'identity_holds')


def _text(value: tp.Any) -> tp.Optional[str]:
    return None if value is None else str(value)


def catalog_graph(input_stream_name: str) -> Graph:
    """Constructs graph which checks every descent map of rows {'map': DescentMap}.

    Args:
        input_stream_name: name of the iterator with the maps.

    Return:
        graph yielding name, k, c, lambda, lambda_decimal, valid_descent and
        identity_holds (the form multiplier exists and exact solutions map to
        exact solutions). Values are JSON ready.
    """
    return Graph.graph_from_iter(input_stream_name) \
        .map(operations.Apply(lambda descent_map: descent_map.name, ['map'], 'name')) \
        .map(operations.Apply(lambda descent_map: descent_map.k, ['map'], 'k')) \
        .map(operations.Apply(safe_form_multiplier, ['map'], 'multiplier')) \
        .map(operations.Apply(decrease_factor, ['map'], 'factor')) \
        .map(operations.Apply(lambda factor: q_to_decimal(factor, LAMBDA_DIGITS), ['factor'], 'lambda_decimal')) \
        .map(operations.Apply(is_descent_factor, ['factor'], 'valid_descent')) \
        .map(operations.Apply(preserves_ray, ['map'], 'preserves_ray')) \
        .map(operations.Apply(lambda c, ray: c is not None and ray, ['multiplier', 'preserves_ray'], 'identity_holds')) \
        .map(operations.Apply(_text, ['multiplier'], 'c')) \
        .map(operations.Apply(_text, ['factor'], 'lambda')) \
        .map(operations.Project(CATALOG_COLUMNS))


def summary_graph(input_stream_name: str,
                  column: str,
                  result_column: str,
                  keys: tp.Sequence[str] = (),
                  label_column: tp.Optional[str] = None) -> Graph:
    """Constructs graph which checks that a boolean column holds in every group.

    Args:
        input_stream_name: name of the iterator with the rows, grouped by keys.
        column: boolean column.
        result_column: name for result column.
        keys: grouping columns; no keys summarize the whole table.
        label_column: column naming the failing rows.

    Return:
        graph yielding one summary row per group.
    """
    return Graph.graph_from_iter(input_stream_name) \
        .reduce(operations.AllTrue(column, result_column, label_column), keys)


def convergent_figure_rows(kind: FigureKind, count: int) -> tp.Iterator[operations.TRow]:
    """Rows {'kind', 'a', 'b'} for the convergents of sqrt(k) a figure can be drawn for."""
    for a, b in convergents(kind.k, count).pairs:
        if b < a < kind.upper_ratio * b:
            yield {'kind': kind, 'a': a, 'b': b}


def convergent_figures_graph(input_stream_name: str) -> Graph:
    """Constructs graph which builds and verifies a figure per row {'kind', 'a', 'b'}.

    Args:
        input_stream_name: name of the iterator with the figure parameters.

    Return:
        graph yielding label, a, b, report and passed.
    """
    return Graph.graph_from_iter(input_stream_name) \
        .map(operations.Apply(lambda kind: kind.label, ['kind'], 'label')) \
        .map(operations.Apply(build_figure, ['kind', 'a', 'b'], 'figure')) \
        .map(operations.Apply(verify_figure, ['figure'], 'report')) \
        .map(operations.Apply(lambda report: report.passed, ['report'], 'passed')) \
        .map(operations.Project(['label', 'a', 'b', 'report', 'passed']))
