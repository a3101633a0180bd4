"""
analyze: Benford conformance of the degrees in an edge list or the count
columns of a CSV

"""
import click

from .utils import io, runconfig
from ..stats import conformance


@click.command()
@click.option('-i', '--input', help='Edge list or CSV file, - for stdin.')
@click.option('-o', '--output', help='Directory for the reports.')
@click.option('--format', 'format', type=click.Choice(['edges', 'csv']),
              help='Input format. Default from the file extension.')
@click.option('-c', '--column', multiple=True,
              help='CSV count column, repeatable. Default every non-id column.')
@click.option('--id-column', help='CSV user id column. Default the first.')
@click.option('--degree', type=click.Choice(['out', 'in', 'both']),
              default='out', show_default=True, help='Edge list degree.')
@click.option('--require-positive', type=click.Choice(['any', 'all']),
              help='Drop CSV rows without a positive value in any/all columns.')
@click.option('--digits-csv', is_flag=True, help='Also write <label>.digits.csv.')
@click.option('--chi-warn', type=click.IntRange(min=1),
              help='n above which chi-square is flagged.')
@click.option('--strict/--skip', default=None,
              help='Fail on malformed input, or skip it with a warning.')
@click.pass_context
def analyze(ctx: click.Context, **kwargs):
    """Score first-digit conformance of every selected count"""
    run = runconfig.resolve(ctx, kwargs)
    runconfig.require(run, 'input', 'output')

    src = runconfig.input_path(run.input)
    out = runconfig.output_dir(run.output)
    fmt = runconfig.infer_format(src, run.format)

    if fmt == 'edges':
        hists = io.edge_histograms(src, run.degree, run.strict)
    else:
        hists = io.csv_histograms(src, runconfig.as_list(run.column),
                                  run.id_column, run.require_positive,
                                  run.strict)

    labelled = []
    for label, hist in hists.items():
        report = conformance(hist, chi_warn=run.chi_warn)
        rep = report.to_dict()
        labelled.append((label, rep))

        io.write_json(out / f'{label}.json', io.record(
            'analysis',
            label=label,
            input=str(src),
            format=fmt,
            filter=run.require_positive,
            histogram=hist.to_dict(),
            report=rep
        ))
        if run.digits_csv:
            io.write_digit_csv(out / f'{label}.digits.csv', report.digit_rows())

        deviating = ', '.join(map(str, rep['deviating_digits'])) or 'none'
        click.echo(f'{label}: n={report.n:,} r={io.format_r(report.pearson_r)} '
                   f'mad={report.mad:.4f} deviating digits: {deviating}')

    if len(labelled) > 1:
        io.write_summary_csv(out / 'summary.csv', labelled)


def setup(group: click.Group):
    group.add_command(analyze)
