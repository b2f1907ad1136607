from abc import abstractmethod, ABC
import typing as tp

from itertools import groupby

TRow = dict[str, tp.Any]
TRowsIterable = tp.Iterable[TRow]
TRowsGenerator = tp.Generator[TRow, None, None]


class Operation(ABC):
    """Abstract class for all operations."""

    @abstractmethod
    def __call__(self,
                 rows: TRowsIterable,
                 *args: tp.Any,
                 **kwargs: tp.Any) -> TRowsGenerator:
        """Abstract method call for all operations.

        Args:
            rows: table rows as an iterator.

        Yields:
            yield table row.
        """
        pass


class ReadIterFactory(Operation):
    """Reads a table from an iterator factory passed to Graph.run.

    Attributes:
        name: keyword under which the factory is passed.
    """

    def __init__(self, name: str) -> None:
        """Initializes the instance ReadIterFactory.

        Args:
            name: keyword under which the factory is passed.
        """
        self.name = name

    def __call__(self, *args: tp.Any, **kwargs: tp.Any) -> TRowsGenerator:
        """Reads rows from kwargs[self.name]().

        Yields:
            yield next row of the source.
        """
        if self.name not in kwargs:
            raise KeyError(f'no row source named {self.name!r} was passed to run')
        for row in kwargs[self.name]():
            yield row


# Operations


class Mapper(ABC):
    """Base class for mappers."""

    @abstractmethod
    def __call__(self, row: TRow) -> TRowsGenerator:
        """Abstract method call for all mappers.

        Args:
            row: one table row.

        Yields:
            yield table row or rows.
        """
        pass


class Map(Operation):
    """Applies a mapper to each row.

    Attributes:
        mapper: class that applies to each row.
    """

    def __init__(self, mapper: Mapper) -> None:
        """Initializes the instance Map.

        Args:
            mapper: class that applies to each row.
        """
        self.mapper = mapper

    def __call__(self,
                 rows: TRowsIterable,
                 *args: tp.Any,
                 **kwargs: tp.Any) -> TRowsGenerator:
        for row in rows:
            yield from self.mapper(row)


class Reducer(ABC):
    """Base class for reducers."""

    @abstractmethod
    def __call__(self,
                 group_key: tuple[str, ...],
                 rows: TRowsIterable) -> TRowsGenerator:
        """Abstract method call for all reducers.

        Args:
            group_key: names of the columns the table is grouped by.
            rows: rows of one group.

        Yields:
            yield table row or rows.
        """
        pass


class Reduce(Operation):
    """Applies a reducer to groups of consecutive rows with equal keys.

    Rows are not sorted: sources emit them already ordered by the keys.
    An empty key sequence puts the whole table into one group.

    Attributes:
        reducer: class that applies to each group.
        keys: names of the columns the table is grouped by.
    """

    def __init__(self, reducer: Reducer, keys: tp.Sequence[str]) -> None:
        """Initializes the instance Reduce.

        Args:
            reducer: class that applies to each group.
            keys: names of the columns the table is grouped by.
        """
        self.reducer = reducer
        self.keys = tuple(keys)

    def group_key(self, row: TRow) -> tuple[tp.Any, ...]:
        """Values of the key columns of a row.

        Args:
            row: one table row.

        Returns:
            tuple of key values.
        """
        return tuple(row[key] for key in self.keys)

    def __call__(self,
                 rows: TRowsIterable,
                 *args: tp.Any,
                 **kwargs: tp.Any) -> TRowsGenerator:
        """Applies the reducer to each group.

        Args:
            rows: table as an iterator.

        Yields:
            yield table row.
        """
        for _, group_rows in groupby(rows, key=self.group_key):
            yield from self.reducer(self.keys, group_rows)


# Reducers


class FirstReducer(Reducer):
    """Yield only first row from passed ones."""

    def __call__(self,
                 group_key: tuple[str, ...],
                 rows: TRowsIterable) -> TRowsGenerator:
        for row in rows:
            yield row
            break


class Count(Reducer):
    """Counts the rows of a group.

    Example for group_key=('kind',) and column='figures'
        {'kind': 'sqrt2', 'a': 7, 'b': 5}
        {'kind': 'sqrt2', 'a': 17, 'b': 12}
        =>
        {'kind': 'sqrt2', 'figures': 2}

    Attributes:
        column: name for result column.
    """

    def __init__(self, column: str) -> None:
        """Initializes the instance Count.

        Args:
            column: name for result column.
        """
        self.column = column

    def __call__(self,
                 group_key: tuple[str, ...],
                 rows: TRowsIterable) -> TRowsGenerator:
        result: TRow = {}
        count = 0
        for row in rows:
            if count == 0:
                result = {column: row[column] for column in group_key}
            count += 1
        if count:
            result[self.column] = count
            yield result


class AllTrue(Reducer):
    """Conjunction of a boolean column over a group.

    Example for group_key=() and column='valid'
        {'name': 'sqrt2', 'valid': True}
        {'name': 'tri5', 'valid': False}
        =>
        {'all_valid': False, 'count': 2, 'failed': ['tri5']}

    Attributes:
        column: boolean column.
        result_column: name for result column.
        label_column: column whose values name the failing rows.
    """

    def __init__(self, column: str, result_column: str, label_column: tp.Optional[str] = None) -> None:
        """Initializes the instance AllTrue.

        Args:
            column: boolean column.
            result_column: name for result column.
            label_column: column whose values name the failing rows.
        """
        self.column = column
        self.result_column = result_column
        self.label_column = label_column

    def __call__(self,
                 group_key: tuple[str, ...],
                 rows: TRowsIterable) -> TRowsGenerator:
        result: TRow = {}
        failed = []
        count = 0
        for row in rows:
            if count == 0:
                result = {column: row[column] for column in group_key}
            count += 1
            if not row[self.column]:
                failed.append(row[self.label_column] if self.label_column else count - 1)
        if count:
            result[self.result_column] = not failed
            result['count'] = count
            result['failed'] = failed
            yield result


# Mappers


class Apply(Mapper):
    """Stores function(*columns) in a result column.

    Example for function=lambda n: n * (n + 1) // 2, columns=('n',) and
    result_column='T_n'
        {'n': 4} => {'n': 4, 'T_n': 10}

    Attributes:
        function: callable applied to the column values.
        columns: names of the argument columns.
        result_column: name for result column.
    """

    def __init__(self,
                 function: tp.Callable[..., tp.Any],
                 columns: tp.Sequence[str],
                 result_column: str) -> None:
        """Initializes the instance Apply.

        Args:
            function: callable applied to the column values.
            columns: names of the argument columns.
            result_column: name for result column.
        """
        self.function = function
        self.columns = tuple(columns)
        self.result_column = result_column

    def __call__(self, row: TRow) -> TRowsGenerator:
        """Computes the result column of a row.

        Args:
           row: one table row.

        Yields:
           yield a copy of the row with the result column set.
        """
        result = dict(row)
        result[self.result_column] = self.function(*(row[column] for column in self.columns))
        yield result


class Filter(Mapper):
    """Remove records that don't satisfy some condition.

    Attributes:
        condition: if condition is not true - remove record
    """

    def __init__(self, condition: tp.Callable[[TRow], bool]) -> None:
        """Initializes the instance Filter.

        Args:
            condition: if condition is not true - remove record
        """
        self.condition = condition

    def __call__(self, row: TRow) -> TRowsGenerator:
        if self.condition(row):
            yield row


class Project(Mapper):
    """Leave only mentioned columns.

    Attributes:
        columns: names of columns.
    """

    def __init__(self, columns: tp.Sequence[str]) -> None:
        """Initializes the instance Project.

        Args:
            columns: names of columns
        """
        self.columns = columns

    def __call__(self, row: TRow) -> TRowsGenerator:
        yield {column: row[column] for column in self.columns}
