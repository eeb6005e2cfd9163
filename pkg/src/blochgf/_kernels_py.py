"""Pure-numpy implementations of the quadrature hot kernels.

These are the import-time fallbacks for :mod:`blochgf._kernels_cy`.  Both
backends compute identical node arrays; the (pairwise, deterministic)
reduction happens in the caller so results do not depend on the backend's
summation order.
"""

import numpy as np


def lattice_f_grid(x1, x2, c):
    """F = 1/(2 cos x1 + 2 cos x2 + c) on the outer product of two real axes.

    x1, x2 : 1D real arrays; c : complex constant (k + i kappa)^2 - 4.
    Returns the (len(x1), len(x2)) complex array.
    """
    g = 2.0 * np.cos(x1)[:, None] + 2.0 * np.cos(x2)[None, :] + c
    return 1.0 / g


def lattice_phase_grid(x1, x2, m1, m2):
    """exp(-i(m1 x1 + m2 x2)) on the outer product of two real axes."""
    return np.exp(-1j * m1 * x1)[:, None] * np.exp(-1j * m2 * x2)[None, :]


def lattice_deformed_node_data(x1, x2, eps_sign, ksq_m4):
    """Deformed-surface node data for the standard lattice bypass field.

    The surface is xi + i*eta with eta = eps_sign * exp(-g^2) (sin x1, sin x2),
    g = 2 cos x1 + 2 cos x2 + ksq_m4 evaluated on the REAL grid (the field is
    real).  eps_sign carries both the bypass orientation and the amplitude
    epsilon.  Returns (z1, z2, F, det) where z = xi + i eta on the outer
    product grid, F = 1/g(z) and det = det(I + i J_eta), the pullback factor
    of the area form onto the parametrised surface.
    """
    X1 = np.asarray(x1)[:, None]
    X2 = np.asarray(x2)[None, :]
    s1, c1 = np.sin(X1), np.cos(X1)
    s2, c2 = np.sin(X2), np.cos(X2)
    g = 2.0 * c1 + 2.0 * c2 + ksq_m4
    amp = eps_sign * np.exp(-g * g)
    e1 = amp * s1
    e2 = amp * s2
    # analytic Jacobian of eta (d g / d xi_i = -2 sin xi_i)
    d1e1 = amp * (c1 + 4.0 * g * s1 * s1)
    d2e1 = amp * 4.0 * g * s1 * s2
    d1e2 = amp * 4.0 * g * s2 * s1
    d2e2 = amp * (c2 + 4.0 * g * s2 * s2)
    det = (1.0 + 1j * d1e1) * (1.0 + 1j * d2e2) - (1j * d2e1) * (1j * d1e2)
    z1 = X1 + 1j * e1
    z2 = X2 + 1j * e2
    F = 1.0 / (2.0 * np.cos(z1) + 2.0 * np.cos(z2) + ksq_m4)
    return z1 + 0.0 * z2, z2 + 0.0 * z1, F, det


def deformed_integrand(z1, z2, F, det, m1, m2):
    """Full deformed-surface integrand F * exp(-i m.z) * det on node arrays."""
    return F * det * np.exp(-1j * (m1 * z1 + m2 * z2))
