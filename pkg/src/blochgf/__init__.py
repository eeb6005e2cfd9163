"""Green's functions of doubly periodic wave media.

Floquet-Bloch double integrals over the Brillouin zone, their far-field
asymptotics extracted from special points of the dispersion diagram
(saddles on singularities, transverse crossings, flat segments), canonical
integrals for degeneracies (parabolic extrema, hyperbolic reconnection,
conical double points), and a quasi-periodic finite-element pipeline for a
meshed unit cell, cross-validated against time-domain simulation.
"""

from .errors import *  # noqa: F401,F403
from .kernels import backend_name  # noqa: F401
from .spectral import (BlochPoint, LatticeIndex, SpectralModel,  # noqa: F401
                       Wavenumber, lattice_model)

__version__ = "0.1.0"
