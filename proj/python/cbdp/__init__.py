"""Nearest-neighbour chains on grids whose axis moves commute."""

from ._cbdp import *  # noqa: F401,F403
from ._cbdp import __doc__  # noqa: F401
