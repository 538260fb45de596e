"""Exact supports, cosupports and coassociated primes over finite commutative rings."""

from ._kernel import BACKEND
from .dercat import Complex, build_complex, concentrated, two_term
from .finmod import FinModule, ModuleMap, build_module
from .finring import Ideal, PrimeIdeal, Ring, build_ring, catalog_ring
from .supports import SupportSet, all_routes, ass_coass, support_set

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Complex", "build_complex", "concentrated", "two_term", "FinModule", "ModuleMap",
    "build_module", "Ideal", "PrimeIdeal", "Ring", "build_ring", "catalog_ring", "SupportSet",
    "all_routes", "ass_coass", "support_set", "__version__",
]
