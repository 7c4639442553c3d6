"""Rotating waves on phase oscillator lattices."""

from rotwave._core import *  # noqa: F401,F403
from rotwave._core import __version__  # noqa: F401
