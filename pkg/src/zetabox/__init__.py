"""Zeta-regularized thermodynamics of a scalar field on a circle times a box or torus."""
from . import casimir, errors, geomzeta, lattice, specfun, thermo, validate
from .geomzeta import Geometry, GeometryKind, ModelParams

__version__ = "0.1.0"

__all__ = ["casimir", "errors", "geomzeta", "lattice", "specfun", "thermo", "validate",
           "Geometry", "GeometryKind", "ModelParams", "__version__"]
