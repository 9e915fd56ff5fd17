"""Exact computation of the polyhedral invariants D^k and related Hodge data."""

from .dinv import d_profile, d_profile_dual_route, minkowski_space
from .polytope import Polytope, from_vertices, polar_dual
from .zoo import get as zoo_get

__all__ = ["Polytope", "d_profile", "d_profile_dual_route", "from_vertices", "minkowski_space", "polar_dual", "zoo_get"]
