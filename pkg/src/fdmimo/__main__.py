"""Allow ``python -m fdmimo`` as an alternative to the console script."""

from .cli import entrypoint

entrypoint()
