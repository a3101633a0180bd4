"""
generate: seeded synthetic fixtures.  Either a population written as an
id,count CSV, or an ego graph edge list mixing model-drawn egos with
botnet egos whose friends all sit in a narrow degree band.  A manifest next
to the output records everything needed to regenerate it byte for byte

"""
import logging

import click

from pathlib import Path

from .utils import io, parameters, runconfig
from .. import config
from ..synthetics import (
    GeneratorSpec, Model, build_synthetic_graph, generate as draw_chunks,
    plan_egos, stream_digest
)
from ..utils import errors

_log = logging.getLogger(__name__)


@click.command()
@click.option('--model', type=click.Choice([m.value for m in Model]),
              help='Population model.')
@click.option('-n', '--n', type=click.IntRange(min=1),
              help='Population size (csv format).')
@click.option('--seed', type=click.IntRange(0, 2 ** 64 - 1),
              help='64-bit seed.')
@click.option('-p', '--param', multiple=True, type=parameters.KEY_VALUE,
              help='Model parameter, repeatable, e.g. -p alpha=2.')
@click.option('--format', 'format', type=click.Choice(['csv', 'edges']),
              default='csv', show_default=True, help='Fixture kind.')
@click.option('-o', '--output', help='File to write.')
@click.option('-c', '--column', default='count', show_default=True,
              help='Count column name (csv format).')
@click.option('--egos', type=click.IntRange(min=0), default=0,
              help='Egos drawn from the model (edges format).')
@click.option('--friends', type=click.IntRange(min=1), default=100,
              show_default=True, help='Friends per ego (edges format).')
@click.option('--bot-egos', type=click.IntRange(min=0), default=0,
              help='Egos whose friends sit in --band (edges format).')
@click.option('--band', type=parameters.BAND,
              help='Botnet friend degree band A,B. Default 400,600.')
@click.pass_context
def generate(ctx: click.Context, **kwargs):
    """Write a reproducible synthetic population or ego graph"""
    run = runconfig.resolve(ctx, kwargs)
    runconfig.require(run, 'output')
    out = runconfig.output_file(run.output)

    if run.format == 'csv':
        runconfig.require(run, 'model', 'n')
        spec = GeneratorSpec(run.model, run.n, run.seed, **dict(run.param))
        manifest = _write_population(out, spec, run.column)
    else:
        manifest = _write_graph(out, run)

    manifest.update(file=out.name, sha256=io.file_sha256(out))
    io.write_json(Path(f'{out}.manifest.json'), io.record('manifest', **manifest))
    click.echo(f'{out}: sha256 {manifest["sha256"]}')


def _write_population(out: Path, spec: GeneratorSpec, column: str) -> dict:
    """id,<column> rows streamed one chunk at a time"""
    digest = []
    next_id = 0

    with open(out, 'w', newline='', encoding='ascii') as fp:
        fp.write(f'id,{column}\n')
        for chunk in draw_chunks(spec, config.synthetics.chunk_size):
            ids = range(next_id, next_id + len(chunk))
            fp.writelines(f'{i},{v}\n' for i, v in zip(ids, chunk.tolist()))
            next_id += len(chunk)
            digest.append(chunk)

    _log.info(f'Wrote {next_id:,} {spec.model.value} values to {out}')
    return {
        'format': 'csv',
        'column': column,
        'rows': next_id,
        'values_sha256': stream_digest(digest),
        'spec': spec.to_dict()
    }


def _write_graph(out: Path, run) -> dict:
    """Model egos take ids 0..egos-1, botnet egos follow"""
    if run.egos + run.bot_egos == 0:
        raise errors.ConfigError('Edge fixtures need --egos or --bot-egos')

    plans, specs = [], {}
    if run.egos:
        runconfig.require(run, 'model')
        spec = GeneratorSpec(run.model, run.friends, run.seed, **dict(run.param))
        plans += plan_egos(range(run.egos), run.friends, spec)
        specs['model'] = spec.to_dict()

    if run.bot_egos:
        a, b = run.band or (None, None)
        band = {k: v for k, v in (('a', a), ('b', b)) if v is not None}
        bots = GeneratorSpec(Model.BOTNET_BAND, run.friends, run.seed,
                             stream=run.egos, **band)
        users = range(run.egos, run.egos + run.bot_egos)
        plans += plan_egos(users, run.friends, bots)
        specs['botnet'] = bots.to_dict()

    edges = 0
    with open(out, 'w', newline='', encoding='ascii') as fp:
        for line in build_synthetic_graph(plans):
            fp.write(line)
            edges += not line.startswith('#')

    _log.info(f'Wrote {edges:,} edges to {out}')
    return {
        'format': 'edges',
        'egos': run.egos,
        'bot_egos': run.bot_egos,
        'friends': run.friends,
        'edges': edges,
        'spec': specs
    }


def setup(group: click.Group):
    group.add_command(generate)
