"""Exact cone computations deciding admissibility of restrictions of representations."""
from __future__ import annotations

from .kernels import BACKEND
from .ratcone import Cone, ConeUnion
from .rootdata import RootDatum

__all__ = ["BACKEND", "Cone", "ConeUnion", "RootDatum"]
__version__ = "0.1.0"
