"""
Readers and writers shared by the commands

"""
import csv
import json
import hashlib
import logging

from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from ...ego import ClassificationThresholds
from ...ingest import AttributeTable, open_lines, parse_edge_file, filter_rows, column_histograms
from ...resources import SCHEMA_VERSION
from ...stats import FsdHistogram, DIGITS
from ...utils import errors

_log = logging.getLogger(__name__)

DIGIT_HEADER = ('digit', 'observed', 'expected', 'deviation_pct')
SUMMARY_HEADER = ('label', 'n', 'excluded_zero', 'pearson_r', 'mad',
                  'chi_square')


def record(kind: str, **fields) -> dict:
    """Top level report object tagged with its schema"""
    return {'kind': kind, 'schema_version': SCHEMA_VERSION, **fields}


def format_r(r: Optional[float]) -> str:
    return 'undefined' if r is None else f'{r:.4f}'


def write_json(path: Path, obj: dict) -> Path:
    with open(path, 'w', encoding='utf-8') as fp:
        json.dump(obj, fp, indent=2)
        fp.write('\n')
    _log.info(f'Wrote {path}')
    return path


def write_jsonl(path: Path, rows: Iterable[dict]) -> int:
    n = 0
    with open(path, 'w', encoding='utf-8') as fp:
        for row in rows:
            fp.write(json.dumps(row) + '\n')
            n += 1
    _log.info(f'Wrote {n:,} records to {path}')
    return n


def read_json(path: Union[str, Path]) -> dict:
    with open_lines(path) as fp:
        try:
            return json.load(fp)
        except json.JSONDecodeError as e:
            raise errors.DataError(f'{path} is not valid JSON: {e}')


def write_digit_csv(path: Path, rows: Iterable[Sequence[float]]) -> Path:
    """digit,observed,expected,deviation_pct with fixed 10 decimals"""
    with open(path, 'w', newline='', encoding='ascii') as fp:
        writer = csv.writer(fp, lineterminator='\n')
        writer.writerow(DIGIT_HEADER)
        for d, obs, exp, dev in rows:
            writer.writerow((int(d), f'{obs:.10f}', f'{exp:.10f}', f'{dev:.10f}'))
    _log.info(f'Wrote {path}')
    return path


def digit_rows_from_dict(report: dict) -> list[tuple[int, float, float, float]]:
    """Rebuild plot rows from a serialized conformance report"""
    try:
        return list(zip(DIGITS, report['observed'], report['expected'],
                        report['deviation_pct']))
    except (KeyError, TypeError):
        raise errors.DataError('Report has no observed/expected/deviation_pct')


def write_summary_csv(path: Path, labelled: Iterable[tuple[str, dict]]) -> Path:
    """One line per analyzed column, for side by side comparison"""
    with open(path, 'w', newline='', encoding='utf-8') as fp:
        writer = csv.writer(fp, lineterminator='\n')
        writer.writerow(SUMMARY_HEADER)
        for label, rep in labelled:
            r = rep['pearson_r']
            writer.writerow((label, rep['n'], rep['excluded_zero'],
                             '' if r is None else f'{r:.10f}',
                             f'{rep["mad"]:.10f}',
                             f'{rep["chi_square"]["statistic"]:.6f}'))
    _log.info(f'Wrote {path}')
    return path


def file_sha256(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, 'rb') as fp:
        for block in iter(lambda: fp.read(1 << 20), b''):
            h.update(block)
    return h.hexdigest()


def edge_histograms(path, degree: str, strict: Optional[bool]) -> dict[str, FsdHistogram]:
    """
    Degree histograms of an edge list

    Parameters
    ----------
    path
        edge list file or '-'
    degree: str
        'out', 'in' or 'both'

    Returns
    -------
    dict[str, FsdHistogram]
        keyed out_degree / in_degree

    """
    kinds = ('out', 'in') if degree == 'both' else (degree,)
    table = parse_edge_file(path, strict=strict, track_in_degree='in' in kinds)

    return {f'{k}_degree': FsdHistogram.from_values(table.degree_values(k))
            for k in kinds}


def csv_histograms(
        path,
        columns: Sequence[str],
        id_column: Optional[str] = None,
        require_positive: Optional[str] = None,
        strict: Optional[bool] = None
) -> dict[str, FsdHistogram]:
    """
    Column histograms of an attribute CSV in one pass

    Parameters
    ----------
    path
        CSV file or '-'
    columns: Sequence[str]
        count columns. Empty means every non-id column
    id_column: Optional[str]
    require_positive: Optional[str]
        'any' or 'all' to drop rows with zero counts first

    """
    with open_lines(path) as fp:
        table = AttributeTable(fp, columns or None, id_column, strict)
        rows = iter(table)
        if require_positive:
            rows = filter_rows(rows, table.columns, require_positive)

        hists = column_histograms(rows, table.columns)

    if table.rows_skipped:
        _log.warning(f'Skipped {table.rows_skipped:,} malformed rows')

    return hists


def degree_lookup(
        path,
        column: str,
        id_column: Optional[str] = None,
        strict: Optional[bool] = None
) -> dict[int, int]:
    """user -> count from one column of an attribute CSV"""
    lookup = {}
    with open_lines(path) as fp:
        for row in AttributeTable(fp, [column], id_column, strict):
            value = row.values[column]
            if value is not None:
                lookup[row.user] = value

    _log.info(f'Loaded {len(lookup):,} friend counts from {path}')
    return lookup


def thresholds_from(run) -> ClassificationThresholds:
    conf, susp = run.thresholds if run.get('thresholds') else (None, None)
    return ClassificationThresholds(conf, susp, run.get('min_degree'))