"""
validate: PASS / WARN / FAIL verdicts for the count columns of a dataset.
Any FAIL makes the command exit with ValidationFailed's code

"""
import click

from .utils import io, runconfig
from ..stats import conformance
from ..utils import errors
from ..validation import Verdict, VerdictThresholds, verdict


@click.command()
@click.option('-i', '--input', help='CSV file, - for stdin.')
@click.option('-o', '--output', help='Directory for validation.json.')
@click.option('-c', '--column', multiple=True,
              help='Count column, repeatable. Default every non-id column.')
@click.option('--id-column', help='User id column. Default the first.')
@click.option('--require-positive', type=click.Choice(['any', 'all']),
              help='Drop rows without a positive value in any/all columns.')
@click.option('--pass-min', type=float, help='r above this passes.')
@click.option('--warn-min', type=float, help='r above this warns, else fails.')
@click.option('--chi-warn', type=click.IntRange(min=1),
              help='n above which chi-square is flagged.')
@click.option('--strict/--skip', default=None,
              help='Fail on malformed input, or skip it with a warning.')
@click.pass_context
def validate(ctx: click.Context, **kwargs):
    """Check whether a dataset's counts look organic"""
    run = runconfig.resolve(ctx, kwargs)
    runconfig.require(run, 'input', 'output')

    thresholds = VerdictThresholds(run.pass_min, run.warn_min)
    src = runconfig.input_path(run.input)
    out = runconfig.output_dir(run.output)

    hists = io.csv_histograms(src, runconfig.as_list(run.column), run.id_column,
                              run.require_positive, run.strict)

    columns, failed = [], []
    for column, hist in hists.items():
        report = conformance(hist, chi_warn=run.chi_warn)
        result = verdict(report, thresholds)
        if result is Verdict.FAIL:
            failed.append(column)

        columns.append({'column': column, 'verdict': result.value,
                        'report': report.to_dict()})
        click.echo(f'{column}: {result.value} r={io.format_r(report.pearson_r)} '
                   f'n={report.n:,}')

    io.write_json(out / 'validation.json', io.record(
        'validation',
        input=str(src),
        thresholds=dict(thresholds._asdict()),
        filter=run.require_positive,
        columns=columns
    ))

    if failed:
        raise errors.ValidationFailed(
            f'Columns failing Benford conformance: {", ".join(failed)}'
        )


def setup(group: click.Group):
    group.add_command(validate)
