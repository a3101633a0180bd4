"""
Click parameter types for the compound flags

"""
import click
import yaml

from typing import Any


class _PairType(click.ParamType):
    """Two comma separated numbers, or a 2 item list from a config file"""
    cast = float

    def convert(self, value, param, ctx):
        if isinstance(value, (tuple, list)):
            parts = list(value)
        else:
            parts = str(value).split(',')

        if len(parts) != 2:
            self.fail(f'{value!r} is not of the form {self.name}', param, ctx)

        try:
            return tuple(self.cast(str(p).strip()) for p in parts)
        except ValueError:
            self.fail(f'{value!r} is not of the form {self.name}', param, ctx)


class ThresholdsType(_PairType):
    """conformant_min,suspicious_max"""
    name = 'CONF,SUSP'


class BandType(_PairType):
    """Inclusive integer band a,b"""
    name = 'A,B'
    cast = int


class KeyValueType(click.ParamType):
    """
    KEY=VALUE generator parameter.  VALUE is read as YAML so numbers come
    back as numbers

    """
    name = 'KEY=VALUE'

    def convert(self, value, param, ctx) -> tuple[str, Any]:
        if isinstance(value, tuple):
            return value

        key, sep, text = str(value).partition('=')
        if not sep or not key.strip():
            self.fail(f'{value!r} is not of the form KEY=VALUE', param, ctx)

        try:
            parsed = yaml.safe_load(text)
        except yaml.YAMLError:
            self.fail(f'Cannot read value in {value!r}', param, ctx)

        if isinstance(parsed, str):
            try:
                parsed = float(parsed)  # YAML reads 1e6 as a string
            except ValueError:
                pass

        return key.strip(), parsed


THRESHOLDS = ThresholdsType()
BAND = BandType()
KEY_VALUE = KeyValueType()
