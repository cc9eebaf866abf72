"""Exact weight-level combinatorics of windows, chambers and decompositions
for quasi-symmetric torus and reductive-group representations."""

from .rootdata import RootDatum, build_root_datum
from .repspec import RepSpec, validate

__all__ = ["RootDatum", "build_root_datum", "RepSpec", "validate"]
