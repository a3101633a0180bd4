"""
ego: score every egocentric network in an edge list and rank the most
deviant for review

"""
import click

from .utils import io, parameters, runconfig
from .. import config
from ..ego import EgoScan, rank, top_deviating
from ..ingest import parse_edge_file
from ..utils import errors


@click.command()
@click.option('-i', '--input', help='Edge list, - for stdin.')
@click.option('-o', '--output', help='Directory for the reports.')
@click.option('--min-degree', type=click.IntRange(min=1),
              help='Friends needed for an ego to be scored.')
@click.option('--thresholds', type=parameters.THRESHOLDS,
              help='Conformant minimum and suspicious maximum r.')
@click.option('--degree', type=click.Choice(['out', 'in']),
              help="Which degree of each friend to read.")
@click.option('--degrees', help='CSV of friend counts overriding graph degrees.')
@click.option('-c', '--column', multiple=True,
              help='Count column of the --degrees CSV.')
@click.option('--id-column', help='User id column of the --degrees CSV.')
@click.option('--top', type=click.IntRange(min=0),
              help='Egos written to review.jsonl.')
@click.option('--chi-warn', type=click.IntRange(min=1),
              help='n above which chi-square is flagged.')
@click.option('--strict/--skip', default=None,
              help='Fail on malformed input, or skip it with a warning.')
@click.pass_context
def ego(ctx: click.Context, **kwargs):
    """Bin egocentric networks by Benford conformance"""
    run = runconfig.resolve(ctx, kwargs)
    runconfig.require(run, 'input', 'output')

    src = runconfig.input_path(run.input)
    out = runconfig.output_dir(run.output)
    thresholds = io.thresholds_from(run)
    degree = run.degree or config.ego.degree

    lookup = None
    if run.degrees:
        columns = runconfig.as_list(run.column)
        if len(columns) != 1:
            raise errors.ConfigError('--degrees needs exactly one --column')
        lookup = io.degree_lookup(runconfig.input_path(run.degrees), columns[0],
                                  run.id_column, run.strict)

    graph = parse_edge_file(src, strict=run.strict, keep_adjacency=True)
    scan = EgoScan(graph, thresholds, degree, lookup, run.chi_warn)
    reports = rank(scan)
    summary = scan.summary

    io.write_jsonl(out / 'egos.jsonl', (r.to_dict() for r in reports))
    io.write_jsonl(out / 'review.jsonl',
                   (r.to_dict() for r in top_deviating(reports, run.top)))
    io.write_json(out / 'summary.json', io.record(
        'ego_summary', input=str(src), **summary.to_dict()
    ))

    bins = ', '.join(f'{b}={n:,}' for b, n in summary.to_dict()['bins'].items())
    click.echo(f'egos: {summary.evaluated:,} evaluated ({summary.skipped:,} below '
               f'{thresholds.min_degree}) {bins} '
               f'conformant={summary.fraction_at_least():.3f}')


def setup(group: click.Group):
    group.add_command(ego)
