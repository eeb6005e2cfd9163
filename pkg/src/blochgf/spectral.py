"""Complexified Bloch variables and spectral functions of periodic media.

The medium enters every other module only through a :class:`SpectralModel`:
the scalar function ``F(xi; k, kappa)`` whose inverse Floquet-Bloch integral
over the Brillouin zone ``[-pi, pi]^2`` is the Green's function, together
with the defining functions ``g_j`` of its singularity set and, when
available, the eigen-expansion ``F = sum_j E_j / (k^2 - lambda_j)``.

Two concrete models are provided:

* the square-lattice discrete Helmholtz model, where everything is closed
  form:  ``F = 1 / (2 cos xi1 + 2 cos xi2 + (k + i kappa)^2 - 4)``, a single
  defining function and a single eigenvalue ``lambda0 = 4 - 2 cos xi1
  - 2 cos xi2``;
* a generic truncated eigen-expansion model assembled from user-supplied
  ``(lambda_j, E_j)`` pairs (the FEM bands of :mod:`blochgf.fem` use this).

All operations are pure functions of immutable values and broadcast over
numpy arrays of Bloch points.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import SingularEvaluation

__all__ = [
    "BlochPoint",
    "Wavenumber",
    "LatticeIndex",
    "SpectralModel",
    "wrap_to_zone",
    "lattice_spectral_value",
    "lattice_defining_function",
    "lattice_defining_gradient",
    "lattice_defining_hessian",
    "lattice_eigenvalue",
    "eigen_expansion_value",
    "lattice_model",
    "eigen_expansion_model",
    "SINGULAR_TOL",
    "LATTICE_BAND_EDGES",
]

# Relative tolerance below which a denominator counts as "on the polar set".
SINGULAR_TOL = 1e-14

# Wavenumbers at which the square lattice loses trace regularity (P3):
# loop shrinks at k = 0 and k = 2*sqrt(2), straight-line crossing at k = 2.
LATTICE_BAND_EDGES = (0.0, 2.0, 2.0 * np.sqrt(2.0))


@dataclass(frozen=True)
class BlochPoint:
    """A point of the complexified Brillouin zone (radians per lattice step)."""

    xi1: complex
    xi2: complex

    def __post_init__(self):
        for v in (self.xi1, self.xi2):
            if not np.isfinite(complex(v).real) or not np.isfinite(complex(v).imag):
                raise ValueError("BlochPoint components must be finite")

    @property
    def real(self) -> np.ndarray:
        return np.array([self.xi1.real, self.xi2.real])

    @property
    def imag(self) -> np.ndarray:
        return np.array([self.xi1.imag, self.xi2.imag])

    def as_array(self) -> np.ndarray:
        return np.array([self.xi1, self.xi2], dtype=complex)


@dataclass(frozen=True)
class Wavenumber:
    """Wavenumber k with absorption kappa >= 0; kappa = 0 is the limiting case."""

    k: float
    kappa: float = 0.0

    def __post_init__(self):
        if self.k < 0 or self.kappa < 0:
            raise ValueError("require k >= 0 and kappa >= 0")

    @property
    def ktilde(self) -> complex:
        return self.k + 1j * self.kappa


@dataclass(frozen=True)
class LatticeIndex:
    """Integer cell index m = (m1, m2)."""

    m1: int
    m2: int

    def as_array(self) -> np.ndarray:
        return np.array([self.m1, self.m2], dtype=int)

    def __abs__(self) -> float:
        return float(np.hypot(self.m1, self.m2))


def wrap_to_zone(xi1, xi2):
    """Wrap real parts into [-pi, pi] (explicit operation, never implicit)."""
    def _wrap(z):
        z = np.asarray(z, dtype=complex)
        re = np.mod(z.real + np.pi, 2 * np.pi) - np.pi
        return re + 1j * z.imag
    return _wrap(xi1), _wrap(xi2)


# ---------------------------------------------------------------------------
# Square-lattice closed forms
# ---------------------------------------------------------------------------

def lattice_defining_function(xi1, xi2, k: float, kappa: float = 0.0):
    """g1(xi; k, kappa) = 2 cos xi1 + 2 cos xi2 + (k + i kappa)^2 - 4."""
    xi1 = np.asarray(xi1, dtype=complex)
    xi2 = np.asarray(xi2, dtype=complex)
    c = (k + 1j * kappa) ** 2 - 4.0
    return 2.0 * np.cos(xi1) + 2.0 * np.cos(xi2) + c


def lattice_spectral_value(xi1, xi2, k: float, kappa: float = 0.0, *,
                           singular_tol: float = SINGULAR_TOL):
    """F(xi; k, kappa) = 1/g1 for the discrete square lattice.

    Raises SingularEvaluation when |g1| falls below ``singular_tol`` relative
    to the size of its terms, which signals a point on the dispersion set.
    """
    g = lattice_defining_function(xi1, xi2, k, kappa)
    scale = 4.0 + abs((k + 1j * kappa) ** 2 - 4.0)
    if np.any(np.abs(g) < singular_tol * scale):
        raise SingularEvaluation(
            f"denominator below {singular_tol:g} relative at k={k}, kappa={kappa}")
    return 1.0 / g


def lattice_defining_gradient(xi1, xi2, k: float, kappa: float = 0.0):
    """Return (g1, (dg/dxi1, dg/dxi2)) analytically."""
    xi1 = np.asarray(xi1, dtype=complex)
    xi2 = np.asarray(xi2, dtype=complex)
    g = lattice_defining_function(xi1, xi2, k, kappa)
    return g, (-2.0 * np.sin(xi1), -2.0 * np.sin(xi2))


def lattice_defining_hessian(xi1, xi2):
    """Hessian of g1 w.r.t. xi (diagonal: d2g/dxi_i^2 = -2 cos xi_i)."""
    xi1 = np.asarray(xi1, dtype=complex)
    xi2 = np.asarray(xi2, dtype=complex)
    z = np.zeros(np.broadcast(xi1, xi2).shape, dtype=complex)
    return np.array([[-2.0 * np.cos(xi1), z], [z, -2.0 * np.cos(xi2)]])


def lattice_eigenvalue(xi1, xi2):
    """lambda0(xi) = 4 - 2 cos xi1 - 2 cos xi2 on real Bloch points."""
    xi1 = np.asarray(xi1, dtype=float)
    xi2 = np.asarray(xi2, dtype=float)
    return 4.0 - 2.0 * np.cos(xi1) - 2.0 * np.cos(xi2)


# ---------------------------------------------------------------------------
# Generic spectral model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralModel:
    """Spectral function with its defining functions and optional eigen data.

    evaluate(xi1, xi2, k, kappa)          -> complex value(s) of F
    defining_functions[j](xi1, xi2, k, kappa) -> g_j value(s)
    defining_gradients[j](xi1, xi2, k, kappa) -> (g_j, (d1 g_j, d2 g_j))
    defining_hessians[j](xi1, xi2)        -> 2x2 Hessian (optional, may be None)
    eigen_terms                           -> [(lambda_j(xi1, xi2), E_j(xi1, xi2))]
    """

    evaluate: Callable
    defining_functions: Sequence[Callable]
    defining_gradients: Sequence[Callable]
    defining_hessians: Sequence[Optional[Callable]] = field(default=())
    eigen_terms: Sequence[tuple] = field(default=())
    dk_defining: Sequence[Optional[Callable]] = field(default=())
    name: str = "model"

    def gradient(self, j: int, xi1, xi2, k: float, kappa: float = 0.0):
        return self.defining_gradients[j](xi1, xi2, k, kappa)

    def hessian(self, j: int, xi1, xi2):
        h = self.defining_hessians[j] if j < len(self.defining_hessians) else None
        if h is not None:
            return h(xi1, xi2)
        return _fd_hessian(lambda a, b: self.defining_functions[j](a, b, 0.0, 0.0), xi1, xi2)


def _fd_hessian(f2, xi1, xi2, step: float = 1e-4):
    """5-point central-difference Hessian of a scalar function of (xi1, xi2)."""
    h = step

    def d2(fa, fb, fc):
        return (fa - 2.0 * fb + fc) / h**2

    f0 = f2(xi1, xi2)
    fxx = d2(f2(xi1 + h, xi2), f0, f2(xi1 - h, xi2))
    fyy = d2(f2(xi1, xi2 + h), f0, f2(xi1, xi2 - h))
    fxy = (f2(xi1 + h, xi2 + h) - f2(xi1 + h, xi2 - h)
           - f2(xi1 - h, xi2 + h) + f2(xi1 - h, xi2 - h)) / (4.0 * h**2)
    return np.array([[fxx, fxy], [fxy, fyy]])


def eigen_expansion_value(terms, xi1, xi2, k: float, kappa: float = 0.0, *,
                          singular_tol: float = SINGULAR_TOL):
    """Truncated sum_j E_j / ((k + i kappa)^2 - lambda_j) at real Bloch points."""
    ksq = (k + 1j * kappa) ** 2
    total = 0.0 + 0.0j
    for lam, num in terms:
        lam_v = lam(xi1, xi2)
        den = ksq - lam_v
        if np.any(np.abs(den) < singular_tol * (1.0 + np.abs(ksq) + np.abs(lam_v))):
            raise SingularEvaluation(f"k^2 hits eigenvalue branch at k={k}")
        total = total + num(xi1, xi2) / den
    return total


def _unit_numerator(xi1, xi2):
    shape = np.broadcast(np.asarray(xi1), np.asarray(xi2)).shape
    return np.ones(shape, dtype=complex) if shape else 1.0 + 0.0j


def lattice_model() -> SpectralModel:
    """The discrete square-lattice spectral model (single closed-form branch)."""
    return SpectralModel(
        evaluate=lattice_spectral_value,
        defining_functions=(lattice_defining_function,),
        defining_gradients=(lattice_defining_gradient,),
        defining_hessians=(lattice_defining_hessian,),
        eigen_terms=((lattice_eigenvalue, _unit_numerator),),
        dk_defining=(lambda xi1, xi2, k, kappa=0.0: 2.0 * (k + 1j * kappa),),
        name="lattice",
    )


def eigen_expansion_model(terms, gradients=None, hessians=None,
                          name: str = "eigen") -> SpectralModel:
    """Assemble a SpectralModel from truncated eigen terms.

    Each term is ``(lambda_j, E_j)``; the defining functions are
    ``g_j = (k + i kappa)^2 - lambda_j(xi)``.  Gradients default to central
    differences of ``lambda_j`` (step 1e-6), adequate for smooth band maps.
    """
    terms = tuple(terms)

    def _eval(xi1, xi2, k, kappa=0.0):
        return eigen_expansion_value(terms, xi1, xi2, k, kappa)

    def _gj(j):
        lam = terms[j][0]

        def g(xi1, xi2, k, kappa=0.0):
            return (k + 1j * kappa) ** 2 - lam(xi1, xi2)
        return g

    def _grad(j):
        lam = terms[j][0]
        gj = _gj(j)

        def grad(xi1, xi2, k, kappa=0.0, _h=1e-6):
            d1 = -(lam(xi1 + _h, xi2) - lam(xi1 - _h, xi2)) / (2 * _h)
            d2 = -(lam(xi1, xi2 + _h) - lam(xi1, xi2 - _h)) / (2 * _h)
            return gj(xi1, xi2, k, kappa), (d1, d2)
        return grad

    grads = tuple(gradients) if gradients is not None else tuple(
        _grad(j) for j in range(len(terms)))
    return SpectralModel(
        evaluate=_eval,
        defining_functions=tuple(_gj(j) for j in range(len(terms))),
        defining_gradients=grads,
        defining_hessians=tuple(hessians) if hessians is not None else
        tuple(None for _ in terms),
        eigen_terms=terms,
        dk_defining=tuple((lambda xi1, xi2, k, kappa=0.0: 2.0 * (k + 1j * kappa))
                          for _ in terms),
        name=name,
    )
