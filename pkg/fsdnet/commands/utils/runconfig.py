"""
Per-run configuration.  A YAML file given with --config mirrors the command
flags (dashes or underscores) and fills whatever was not passed on the
command line.  Package defaults from config.yaml sit underneath both

"""
import logging

import click
import munch
import yaml

from click.core import ParameterSource
from pathlib import Path
from typing import Any, Iterable, Optional, Union

from ...utils import errors

_log = logging.getLogger(__name__)

STDIN = '-'


def load_file(path: Optional[Union[str, Path]]) -> munch.Munch:
    """
    Read a user config file

    Parameters
    ----------
    path: Optional[Union[str, Path]]
        YAML mapping of flag names to values, or None

    Returns
    -------
    munch.Munch
        keys with dashes normalized to underscores

    """
    if path is None:
        return munch.Munch()

    try:
        with open(path, 'rb') as fp:
            data = yaml.safe_load(fp)
    except OSError as e:
        raise errors.ConfigError(f'Cannot read config file {path}: {e.strerror}')
    except yaml.YAMLError as e:
        raise errors.ConfigError(f'Config file {path} is not valid YAML: {e}')

    if data is None:
        data = {}
    if not isinstance(data, dict):
        raise errors.ConfigError(f'Config file {path} must hold a mapping')

    _log.debug(f'Loaded run config from {path}')
    return munch.Munch({str(k).replace('-', '_'): v for k, v in data.items()})


def resolve(ctx: click.Context, values: dict[str, Any]) -> munch.Munch:
    """
    Merge the config file under the flags of the running command

    Parameters
    ----------
    ctx: click.Context
        context of the command
    values: dict[str, Any]
        the command's parsed parameters

    Returns
    -------
    munch.Munch
        one entry per command parameter

    """
    file = ctx.find_root().obj or munch.Munch()
    params = {p.name: p for p in ctx.command.params}

    unknown = set(file) - set(params)
    if unknown:
        raise errors.ConfigError(
            f'Unknown keys in config file for `{ctx.command.name}`: '
            f'{", ".join(sorted(unknown))}'
        )

    run = munch.Munch()
    for name, param in params.items():
        value = values.get(name)
        source = ctx.get_parameter_source(name)

        if name in file and source in (None, ParameterSource.DEFAULT):
            raw = file[name]
            if isinstance(raw, dict):
                raw = list(raw.items())  # KEY: VALUE mapping for --param
            if getattr(param, 'multiple', False) and not isinstance(raw, (list, tuple)):
                raw = [raw]
            try:
                value = param.type_cast_value(ctx, raw)
            except click.BadParameter as e:
                raise errors.ConfigError(f'Config file key {name!r}: {e.message}')

        run[name] = value

    return run


def require(run: munch.Munch, *names: str) -> None:
    """Options that must come from a flag or the config file"""
    for name in names:
        if run.get(name) in (None, (), []):
            flag = '--' + name.replace('_', '-')
            raise errors.ConfigError(f'Missing option {flag}')


def input_path(value: Union[str, Path]) -> Union[str, Path]:
    """An existing input file, or '-' for stdin"""
    if str(value) == STDIN:
        return STDIN

    path = Path(value)
    if not path.is_file():
        raise errors.DataError(f'Input file not found: {path}')

    return path


def output_dir(value: Union[str, Path]) -> Path:
    """Output directory, created if needed"""
    path = Path(value)
    path.mkdir(parents=True, exist_ok=True)
    return path


def output_file(value: Union[str, Path]) -> Path:
    """Output file whose parent directory is created if needed"""
    path = Path(value)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def infer_format(path: Union[str, Path], fmt: Optional[str]) -> str:
    """Explicit format, else csv for a .csv suffix and edges otherwise"""
    if fmt:
        return fmt
    return 'csv' if str(path).lower().endswith('.csv') else 'edges'


def as_list(value: Optional[Iterable[str]]) -> list[str]:
    return list(value) if value else []
