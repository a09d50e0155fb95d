"""Exact construction and verification of H-polar cylinders on Du Val del Pezzo surfaces.

Everything is computed with divisor classes on the minimal resolution, written in the
blow-up basis ``e_0, e_1, ..., e_k`` of its Picard lattice, using exact rationals.
"""

from duval_cylinders.lattice import DivisorClass, canonical_class, enumerate_classes, pair
from duval_cylinders.surface import ClassOnS, SurfaceModel, build_surface, is_ample, mumford_pullback
from duval_cylinders.fibration import FibrationData, SingularFiber, decompose_fibers, find_fibrations, select_fibration
from duval_cylinders.cylinder import CylinderCertificate, construct_cylinder, coords_of
from duval_cylinders.verify import VerifyReport, verify_certificate
from duval_cylinders.sampling import ample_stream, random_ample
from duval_cylinders.catalog import catalog_surface, load_catalog, regenerate_table

__all__ = [
    "ClassOnS",
    "CylinderCertificate",
    "DivisorClass",
    "FibrationData",
    "SingularFiber",
    "SurfaceModel",
    "VerifyReport",
    "ample_stream",
    "build_surface",
    "canonical_class",
    "catalog_surface",
    "construct_cylinder",
    "coords_of",
    "decompose_fibers",
    "enumerate_classes",
    "find_fibrations",
    "is_ample",
    "load_catalog",
    "mumford_pullback",
    "pair",
    "random_ample",
    "regenerate_table",
    "select_fibration",
    "verify_certificate",
]

__version__ = "0.1.0"
