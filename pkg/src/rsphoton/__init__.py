"""Complexified Clifford algebra, Riemann-Silberstein fields and photon
wave functions on a periodic box."""

from .algebra import I, Multivector, Paravector, gp
from .constants import NATURAL, SI, PhysicalConstants
from .em.grid import Grid
from .modes import ModeExpansion, PlaneWaveMode, expand_rs, one_photon_potential, project_modes

__version__ = "0.1.0"

__all__ = [
    "Grid", "I", "ModeExpansion", "Multivector", "NATURAL", "Paravector",
    "PhysicalConstants", "PlaneWaveMode", "SI", "expand_rs", "gp",
    "one_photon_potential", "project_modes",
]
