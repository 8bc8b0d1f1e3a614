"""Exact computational commutative algebra: Groebner bases, minimal free
resolutions, Castelnuovo-Mumford regularity, and certified regularity bounds
from approximation systems."""

from .errors import *  # noqa: F401,F403
from .groebner import GroebnerBasis, buchberger, is_groebner_basis, normal_form, syzygies
from .ideals import (
    IdealHandle,
    SubmoduleHandle,
    colon,
    colon_element,
    intersect,
    maximal_ideal,
    saturate,
)
from .resolve import (
    MINUS_INFINITY,
    BettiTable,
    PresentedModule,
    betti,
    betti_table,
    free_resolution,
    regularity,
)
from .ring import QQ, GradedFreeModule, PolynomialRing, PrimeField

__version__ = "0.1.0"
