"""Minimum Sum Vertex Cover: exact and approximate solvers, hardness ratio
computations, the long-code reduction and the unweighting gadgets."""

from ._msvc import *  # noqa: F401,F403
from ._msvc import __version__  # noqa: F401
