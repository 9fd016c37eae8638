"""Lattice theta functions, their minima over shifts, and applications."""

from ._lattheta import *  # noqa: F401,F403
from ._lattheta import LatthetaError, Lattice

__all__ = [name for name in dir() if not name.startswith("_")]
