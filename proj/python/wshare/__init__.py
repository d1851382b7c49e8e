"""Supervised W-state entanglement sharing simulator (C++ core)."""

from ._wshare import *  # noqa: F401,F403
from ._wshare import __doc__  # noqa: F401

__version__ = "0.1.0"
