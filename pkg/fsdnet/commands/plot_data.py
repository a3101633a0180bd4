"""
plot-data: digit,observed,expected,deviation_pct CSV from a saved report

"""
import click

from .utils import io, runconfig
from ..utils import errors


@click.command('plot-data')
@click.option('-i', '--input', help='analysis or validation JSON report.')
@click.option('-o', '--output',
              help='CSV to write. A validation report writes one per column, '
                   'suffixed with the column name.')
@click.pass_context
def plot_data(ctx: click.Context, **kwargs):
    """Export the per-digit series behind a report for plotting"""
    run = runconfig.resolve(ctx, kwargs)
    runconfig.require(run, 'input', 'output')

    doc = io.read_json(runconfig.input_path(run.input))
    out = runconfig.output_file(run.output)
    kind = doc.get('kind') if isinstance(doc, dict) else None

    if kind == 'analysis':
        io.write_digit_csv(out, io.digit_rows_from_dict(doc['report']))
        click.echo(str(out))
    elif kind == 'validation':
        for entry in doc['columns']:
            path = out.with_name(f'{out.stem}.{entry["column"]}{out.suffix}')
            io.write_digit_csv(path, io.digit_rows_from_dict(entry['report']))
            click.echo(str(path))
    else:
        raise errors.DataError(f'{run.input} is not an analysis or '
                               f'validation report')


def setup(group: click.Group):
    group.add_command(plot_data)
