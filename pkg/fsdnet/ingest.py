"""
Streaming parsers for edge lists and attribute tables.

Edge lists are read in one pass into degree counters (memory grows with
distinct nodes, never with the file).  Attribute CSVs are iterated row by
row; column histograms are accumulated in fixed-size chunks

"""
from __future__ import annotations  # forward reference

import csv
import sys
import logging
import contextlib

import numpy as np

from collections import Counter, defaultdict, namedtuple
from pathlib import Path
from typing import (
    Iterable, Iterator, Optional, Union, Mapping, Sequence, TextIO
)

from . import config
from .stats import FsdHistogram
from .utils import errors

_log = logging.getLogger(__name__)

_UINT64_MAX = 2 ** 64 - 1

AttributeRow = namedtuple('AttributeRow', 'rowno user values')


@contextlib.contextmanager
def open_lines(path: Union[str, Path]) -> Iterator[TextIO]:
    """
    Open a text input for streaming. '-' is stdin.  A UTF-8 BOM is dropped

    Parameters
    ----------
    path: Union[str, Path]
        file to read

    """
    if str(path) == '-':
        yield sys.stdin
        return

    try:
        fp = open(path, 'r', encoding='utf-8-sig', newline='')
    except OSError as e:
        raise errors.DataError(f'Cannot read {path}: {e.strerror}') from e

    with fp:
        yield fp


def _node_id(token: str) -> Optional[int]:
    """Parse a nonnegative uint64 node id, None if not one"""
    if not (token.isascii() and token.isdigit()):
        return None

    value = int(token)
    return value if value <= _UINT64_MAX else None


class DegreeTable:
    """
    Directed degree counts built by streaming an edge list

    Parameters
    ----------
    out_degree: Optional[Mapping[int, int]]
        node id to number of outgoing edges
    in_degree: Optional[Mapping[int, int]]
        node id to number of incoming edges
    adjacency: Optional[Mapping[int, list[int]]]
        node id to the ids it points to (friends). Needed for ego analysis

    Attributes
    ----------
    edge_count: int
        number of edges seen

    """
    def __init__(
            self,
            out_degree: Optional[Mapping[int, int]] = None,
            in_degree: Optional[Mapping[int, int]] = None,
            adjacency: Optional[Mapping[int, list[int]]] = None
    ):
        self.out_degree = Counter(out_degree or {})
        self.in_degree = Counter(in_degree) if in_degree is not None else None
        self.adjacency = (defaultdict(list, adjacency)
                          if adjacency is not None else None)

    @property
    def edge_count(self) -> int:
        return sum(self.out_degree.values())

    @property
    def node_count(self) -> int:
        return len(self.nodes())

    @property
    def has_adjacency(self) -> bool:
        return self.adjacency is not None

    def nodes(self) -> set[int]:
        nodes = set(self.out_degree)
        if self.in_degree is not None:
            nodes.update(self.in_degree)
        if self.adjacency is not None:
            nodes.update(self.adjacency)
        return nodes

    def __contains__(self, node) -> bool:
        return (node in self.out_degree
                or (self.in_degree is not None and node in self.in_degree)
                or (self.adjacency is not None and node in self.adjacency))

    def degree(self, node: int, kind: str = 'out') -> Optional[int]:
        """
        Degree of a node, None if the node has no record at all

        Parameters
        ----------
        node: int
            node id
        kind: str
            'out' (following) or 'in' (followers)

        Returns
        -------
        Optional[int]
            the degree, 0 for a known node without edges of that kind

        """
        if node not in self:
            return None

        if kind == 'out':
            return self.out_degree.get(node, 0)
        elif kind == 'in':
            if self.in_degree is None:
                raise errors.ConfigError('In-degrees were not recorded')
            return self.in_degree.get(node, 0)

        raise errors.ConfigError(f'Unknown degree kind {kind!r}')

    def degree_values(self, kind: str = 'out') -> np.ndarray:
        """Degree of every node as uint64, zeros included"""
        counts = self.out_degree if kind == 'out' else self.in_degree
        if kind not in ('out', 'in'):
            raise errors.ConfigError(f'Unknown degree kind {kind!r}')
        if counts is None:
            raise errors.ConfigError('In-degrees were not recorded')

        nodes = self.nodes()
        return np.fromiter((counts.get(n, 0) for n in nodes),
                           dtype=np.uint64, count=len(nodes))

    def friends(self, node: int) -> list[int]:
        """Out-neighbors of node"""
        if not self.has_adjacency:
            raise errors.ConfigError('Edge list was parsed without adjacency')
        if node not in self:
            raise errors.UnknownUser(node)
        return self.adjacency.get(node, [])

    def merge(self, other: DegreeTable) -> DegreeTable:
        """Combine two tables, as if their edge lists were concatenated"""
        if (self.in_degree is None) != (other.in_degree is None):
            raise errors.ConfigError('Cannot merge tables with and without '
                                     'in-degrees')
        if self.has_adjacency != other.has_adjacency:
            raise errors.ConfigError('Cannot merge tables with and without '
                                     'adjacency')

        # update keeps zero-degree nodes, Counter + would drop them
        res = DegreeTable(self.out_degree)
        res.out_degree.update(other.out_degree)
        if self.in_degree is not None:
            res.in_degree = Counter(self.in_degree)
            res.in_degree.update(other.in_degree)
        if self.has_adjacency:
            res.adjacency = defaultdict(list)
            for table in (self, other):
                for node, friends in table.adjacency.items():
                    res.adjacency[node].extend(friends)

        return res

    def __eq__(self, other):
        if not isinstance(other, DegreeTable):
            return NotImplemented

        def adj(table):  # multiset view, independent of line order
            if not table.has_adjacency:
                return None
            return {k: sorted(v) for k, v in table.adjacency.items() if v}

        return (+self.out_degree == +other.out_degree
                and (self.in_degree is None) == (other.in_degree is None)
                and (self.in_degree is None
                     or +self.in_degree == +other.in_degree)
                and adj(self) == adj(other))

    def __repr__(self):
        return (f'DegreeTable(nodes={self.node_count:,}, '
                f'edges={self.edge_count:,})')


def parse_edge_list(
        source: Iterable[str],
        strict: Optional[bool] = None,
        keep_adjacency: bool = False,
        track_in_degree: bool = True
) -> DegreeTable:
    """
    Single pass over "src dst" lines. '#' lines and blank lines are ignored.
    Self-loops and duplicate edges are kept

    Parameters
    ----------
    source: Iterable[str]
        lines of text (LF or CRLF)
    strict: Optional[bool]
        raise on a malformed line, else log and skip it.
        Default config.ingest.strict
    keep_adjacency: bool
        whether or not to retain friend lists for ego analysis
    track_in_degree: bool
        whether or not to count incoming edges

    Returns
    -------
    DegreeTable
        out (and in) degrees of every node seen

    """
    strict = config.ingest.strict if strict is None else strict
    progress = config.ingest.progress_every

    out_degree = Counter()
    in_degree = Counter() if track_in_degree else None
    adjacency = defaultdict(list) if keep_adjacency else None
    skipped = 0
    lineno = 0

    for lineno, line in enumerate(source, 1):
        text = line.rstrip('\r\n')
        stripped = text.strip()

        if not stripped or stripped.startswith('#'):
            continue

        parts = stripped.split()
        ids = [_node_id(p) for p in parts] if len(parts) == 2 else [None]

        if None in ids:
            reason = ('expected two nonnegative integers' if len(parts) == 2
                      else f'expected 2 fields, found {len(parts)}')
            if strict:
                raise errors.ParseError(lineno, text, reason)
            _log.warning(f'Skipping line {lineno}: {text!r} ({reason})')
            skipped += 1
            continue

        src, dst = ids
        out_degree[src] += 1
        if in_degree is not None:
            in_degree[dst] += 1
        else:
            out_degree[dst] += 0  # record the node, out-degree 0 so far
        if adjacency is not None:
            adjacency[src].append(dst)

        if progress and lineno % progress == 0:
            _log.debug(f'{lineno:,} lines read')

    # counters are already built, skip the copies __init__ would make
    table = DegreeTable()
    table.out_degree = out_degree
    table.in_degree = in_degree
    table.adjacency = adjacency
    _log.info(f'Parsed {lineno:,} lines: {table.edge_count:,} edges, '
              f'{table.node_count:,} nodes, {skipped:,} skipped')

    return table


def parse_edge_file(path: Union[str, Path], **kwargs) -> DegreeTable:
    """parse_edge_list over a file path"""
    with open_lines(path) as fp:
        return parse_edge_list(fp, **kwargs)


class AttributeTable:
    """
    Streaming view over a CSV of per-user counts.  The header is read on
    construction so a missing column fails before any row is touched.
    Iterating yields AttributeRow(rowno, user, values) where values maps each
    selected column to an int, or None when the cell is empty

    Parameters
    ----------
    source: Iterable[str]
        lines of CSV text, header first
    columns: Optional[Sequence[str]]
        count columns to parse. Default every column but the id column
    id_column: Optional[str]
        user id column. Default the first header column
    strict: Optional[bool]
        raise on an unparseable cell, else log and skip the row.
        Default config.ingest.strict

    """
    def __init__(
            self,
            source: Iterable[str],
            columns: Optional[Sequence[str]] = None,
            id_column: Optional[str] = None,
            strict: Optional[bool] = None
    ):
        self.strict = config.ingest.strict if strict is None else strict
        self._reader = csv.reader(source)

        try:
            header = next(self._reader)
        except StopIteration:
            raise errors.DataError('CSV input is empty; expected a header')

        self.header = [h.strip().lstrip('\ufeff') for h in header]
        if id_column and id_column not in self.header:
            raise errors.MissingColumn(id_column, self.header)

        self.id_column = id_column or self.header[0]
        self.columns = (list(columns) if columns
                        else [h for h in self.header if h != self.id_column])

        if not self.columns:
            raise errors.ConfigError('No count columns to read')

        for col in self.columns:
            if col not in self.header:
                raise errors.MissingColumn(col, self.header)

        self._id_index = self.header.index(self.id_column)
        self._indices = [self.header.index(c) for c in self.columns]
        self.rows_read = 0
        self.rows_skipped = 0

    def __iter__(self) -> Iterator[AttributeRow]:
        width = len(self.header)
        progress = config.ingest.progress_every

        for rowno, cells in enumerate(self._reader, 2):  # header is row 1
            if not cells:
                continue

            self.rows_read += 1
            if progress and self.rows_read % progress == 0:
                _log.debug(f'{self.rows_read:,} rows read')

            try:
                if len(cells) != width:
                    raise errors.ParseError(
                        rowno, ','.join(cells),
                        f'expected {width} cells, found {len(cells)}', 'row'
                    )
                values = {col: self._cell(rowno, cells, i)
                          for col, i in zip(self.columns, self._indices)}
            except errors.ParseError as e:
                if self.strict:
                    raise
                _log.warning(f'Skipping {e.msg}')
                self.rows_skipped += 1
                continue

            user = cells[self._id_index].strip()
            if user.isascii() and user.isdigit():
                user = int(user)

            yield AttributeRow(rowno, user, values)

    @staticmethod
    def _cell(rowno: int, cells: list[str], i: int) -> Optional[int]:
        text = cells[i].strip()

        if not text:
            return None  # explicit missing, never zero

        if not (text.isascii() and text.isdigit()):
            raise errors.ParseError(rowno, ','.join(cells),
                                    f'{text!r} is not a nonnegative integer',
                                    'row')

        value = int(text)
        if value > _UINT64_MAX:
            raise errors.ParseError(rowno, ','.join(cells),
                                    f'{text!r} exceeds 64 unsigned bits', 'row')

        return value


def parse_attribute_csv(
        source: Iterable[str],
        columns: Sequence[str],
        **kwargs
) -> AttributeTable:
    return AttributeTable(source, columns, **kwargs)


def filter_rows(
        rows: Iterable[AttributeRow],
        columns: Sequence[str],
        mode: str = 'any'
) -> Iterator[AttributeRow]:
    """
    Drop rows by zero counts. 'any' keeps rows with at least one positive
    value among columns (drops users with no followers and no posts); 'all'
    keeps rows where every column is positive

    Parameters
    ----------
    rows: Iterable[AttributeRow]
    columns: Sequence[str]
        columns the rule looks at
    mode: str
        'any' or 'all'

    """
    if mode not in ('any', 'all'):
        raise errors.ConfigError(f"Filter mode must be 'any' or 'all', not {mode!r}")

    test = any if mode == 'any' else all
    kept = dropped = 0

    for row in rows:
        if test((row.values.get(c) or 0) > 0 for c in columns):
            kept += 1
            yield row
        else:
            dropped += 1

    _log.info(f'Filter require-positive={mode} on {", ".join(columns)}: '
              f'kept {kept:,}, dropped {dropped:,}')


def iter_column_chunks(
        rows: Iterable[AttributeRow],
        columns: Sequence[str],
        chunk_size: Optional[int] = None
) -> Iterator[dict[str, np.ndarray]]:
    """
    Buffer column values into uint64 arrays of at most chunk_size.
    Missing cells are left out

    Parameters
    ----------
    rows: Iterable[AttributeRow]
    columns: Sequence[str]
    chunk_size: Optional[int]
        default config.ingest.chunk_size

    """
    chunk_size = chunk_size or config.ingest.chunk_size
    buffers = {c: [] for c in columns}
    n = 0

    for row in rows:
        for c in columns:
            v = row.values.get(c)
            if v is not None:
                buffers[c].append(v)
        n += 1

        if n >= chunk_size:
            yield {c: np.array(buf, dtype=np.uint64) for c, buf in buffers.items()}
            buffers = {c: [] for c in columns}
            n = 0

    if n:
        yield {c: np.array(buf, dtype=np.uint64) for c, buf in buffers.items()}


def column_histograms(
        rows: Iterable[AttributeRow],
        columns: Sequence[str],
        chunk_size: Optional[int] = None
) -> dict[str, FsdHistogram]:
    """One streaming pass accumulating a histogram per column"""
    hists = {c: FsdHistogram() for c in columns}

    for chunk in iter_column_chunks(rows, columns, chunk_size):
        for c, values in chunk.items():
            hists[c].update(values)

    return hists


def column_histogram(
        table: Union[AttributeTable, Iterable[AttributeRow]],
        column: str,
        chunk_size: Optional[int] = None
) -> FsdHistogram:
    """
    Accumulate every row's value in column

    Parameters
    ----------
    table: Union[AttributeTable, Iterable[AttributeRow]]
        rows to consume
    column: str
        a selected column

    Returns
    -------
    FsdHistogram
        histogram of the column. Zeros land in excluded_zero

    """
    if isinstance(table, AttributeTable) and column not in table.columns:
        raise errors.MissingColumn(column, table.columns)

    return column_histograms(table, [column], chunk_size)[column]
