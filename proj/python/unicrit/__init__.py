"""Dynamical diagnostics for unicritical polynomials z^d + c.

The compiled core exposes orbits with derivative cocycles, preimage-tree
enumeration, Poincare and forward series truncations, pressure-based
exponent estimation, disk pull-back enclosures, backward-contraction
profiles, and the close-return staircase.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
