"""
Error handler

"""
import sys
import traceback

import click

from ..utils import errors


class ErrorHandler:
    """
    Turns errors escaping a command into a one-line message and the
    error's exit code.  Anything unexpected gets a traceback and exit 1

    """
    def __init__(self, group: click.Group):
        self.group = group
        group.error_handler = self.handle

    def handle(self, ctx: click.Context, error: Exception) -> int:
        """
        Report the error

        Parameters
        ----------
        ctx: click.Context
        error: Exception

        Returns
        -------
        int
            exit code

        """
        cmd = ctx.invoked_subcommand or ctx.command.name

        if isinstance(error, errors.FsdError):
            click.echo(self.format_error(error.msg, cmd), err=True)
            return error.exit_code
        elif isinstance(error, OSError):
            msg = f'{error.strerror or error}: {error.filename or ""}'.rstrip(': ')
            click.echo(self.format_error(msg, cmd), err=True)
            return errors.DataError.exit_code

        print(f'Unhandled exception in command `{cmd}`:', file=sys.stderr)
        traceback.print_exception(type(error), error, error.__traceback__,
                                  file=sys.stderr)
        return errors.FsdError.exit_code

    @staticmethod
    def format_error(msg: str, cmd: str) -> str:
        return f'Error [{cmd}]: {msg}'


def setup(group: click.Group):
    ErrorHandler(group)
