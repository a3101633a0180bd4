"""
Report schemas shipped with the package

"""
import json

from importlib import resources


with resources.files(__package__).joinpath('schemas.json').open('rb') as fp:
    _schemas = json.load(fp)

SCHEMA_VERSION = _schemas['version']
SCHEMAS = _schemas['definitions']
