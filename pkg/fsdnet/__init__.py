"""
Parse config and make it accessible

"""
import munch
import os

from importlib import resources
from dotenv import load_dotenv

load_dotenv()  # use env variables from .env

file = os.getenv('FSDNET_CONFIG_FILE') or 'config.yaml'

with resources.files(__package__).joinpath(file).open('rb') as fp:
    config = munch.Munch.fromYAML(fp)
