"""
Command line entry point.  Commands live in fsdnet.commands and register
themselves on the group through setup(group)

"""
import importlib
import logging

import click

from pathlib import Path

from . import config
from .commands.utils import runconfig

initial_extensions = (
    'commands.error_handler',
    'commands.analyze',
    'commands.ego',
    'commands.validate',
    'commands.generate',
    'commands.plot_data'
)


class FsdGroup(click.Group):
    """
    Group that routes errors escaping a command to the installed handler

    Attributes
    ----------
    error_handler: Optional[Callable[[click.Context, Exception], int]]
        returns the exit code for an error. Set by commands.error_handler

    """
    error_handler = None

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except (click.exceptions.ClickException, click.exceptions.Exit,
                click.exceptions.Abort):
            raise
        except Exception as error:
            if self.error_handler is None:
                raise
            ctx.exit(self.error_handler(ctx, error))


@click.group(cls=FsdGroup)
@click.version_option(config.core.version, prog_name=config.core.name)
@click.option('--config', 'config_file',
              type=click.Path(dir_okay=False, path_type=Path),
              help='YAML file mirroring any command flags. Flags win.')
@click.option('-v', '--verbose', is_flag=True, help='Debug logging.')
@click.option('-q', '--quiet', is_flag=True, help='Warnings and errors only.')
@click.pass_context
def cli(ctx: click.Context, config_file, verbose, quiet):
    """Benford first-digit forensics for social network counts"""
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    else:
        level = getattr(logging, str(config.logging.level).upper(), logging.INFO)

    logging.basicConfig(level=level, format=config.logging.format, force=True)
    ctx.call_on_close(_detach_handlers)
    ctx.obj = runconfig.load_file(config_file)


def _detach_handlers():
    """Handlers hold this invocation's stderr"""
    root = logging.getLogger()
    for handler in root.handlers[:]:
        root.removeHandler(handler)
        handler.close()


def load_extensions(group: click.Group) -> None:
    for ext in initial_extensions:
        module = importlib.import_module(f'{__package__}.{ext}')
        module.setup(group)


load_extensions(cli)


def main(argv=None):
    cli.main(args=argv, prog_name=config.core.name)
