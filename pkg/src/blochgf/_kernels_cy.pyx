# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled quadrature hot kernels (see _kernels_py for the reference versions).

The Brillouin-zone quadratures evaluate the lattice spectral function and the
deformed-surface integrand on n x n tensor grids for many (m, k, kappa)
combinations; fusing the trigonometry into single C loops avoids the large
temporaries of the numpy fallback.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, sin

cnp.import_array()


def lattice_f_grid(cnp.ndarray[double, ndim=1] x1,
                   cnp.ndarray[double, ndim=1] x2,
                   double complex c):
    cdef Py_ssize_t n1 = x1.shape[0], n2 = x2.shape[0], i, j
    cdef cnp.ndarray[double complex, ndim=2] out = np.empty((n1, n2), dtype=np.complex128)
    cdef double g1
    for i in range(n1):
        g1 = 2.0 * cos(x1[i])
        for j in range(n2):
            out[i, j] = 1.0 / (g1 + 2.0 * cos(x2[j]) + c)
    return out


def lattice_phase_grid(cnp.ndarray[double, ndim=1] x1,
                       cnp.ndarray[double, ndim=1] x2,
                       double m1, double m2):
    cdef Py_ssize_t n1 = x1.shape[0], n2 = x2.shape[0], i, j
    cdef cnp.ndarray[double complex, ndim=2] out = np.empty((n1, n2), dtype=np.complex128)
    cdef double complex p1
    for i in range(n1):
        p1 = cos(m1 * x1[i]) - 1j * sin(m1 * x1[i])
        for j in range(n2):
            out[i, j] = p1 * (cos(m2 * x2[j]) - 1j * sin(m2 * x2[j]))
    return out


def lattice_deformed_node_data(cnp.ndarray[double, ndim=1] x1,
                               cnp.ndarray[double, ndim=1] x2,
                               double eps_sign, double complex ksq_m4):
    cdef Py_ssize_t n1 = x1.shape[0], n2 = x2.shape[0], i, j
    cdef cnp.ndarray[double complex, ndim=2] z1 = np.empty((n1, n2), dtype=np.complex128)
    cdef cnp.ndarray[double complex, ndim=2] z2 = np.empty((n1, n2), dtype=np.complex128)
    cdef cnp.ndarray[double complex, ndim=2] F = np.empty((n1, n2), dtype=np.complex128)
    cdef cnp.ndarray[double complex, ndim=2] det = np.empty((n1, n2), dtype=np.complex128)
    cdef double s1, c1, s2, c2, gr, gi, amp_r, amp_i
    cdef double complex g, amp, e1, e2, d1e1, d2e1, d1e2, d2e2, w1, w2
    for i in range(n1):
        s1 = sin(x1[i]); c1 = cos(x1[i])
        for j in range(n2):
            s2 = sin(x2[j]); c2 = cos(x2[j])
            g = 2.0 * c1 + 2.0 * c2 + ksq_m4
            amp = eps_sign * _cexp(-g * g)
            e1 = amp * s1
            e2 = amp * s2
            d1e1 = amp * (c1 + 4.0 * g * s1 * s1)
            d2e1 = amp * 4.0 * g * s1 * s2
            d1e2 = amp * 4.0 * g * s2 * s1
            d2e2 = amp * (c2 + 4.0 * g * s2 * s2)
            det[i, j] = (1.0 + 1j * d1e1) * (1.0 + 1j * d2e2) - (1j * d2e1) * (1j * d1e2)
            w1 = x1[i] + 1j * e1
            w2 = x2[j] + 1j * e2
            z1[i, j] = w1
            z2[i, j] = w2
            F[i, j] = 1.0 / (2.0 * _ccos(w1) + 2.0 * _ccos(w2) + ksq_m4)
    return z1, z2, F, det


cdef inline double complex _cexp(double complex z):
    cdef double er = exp(z.real)
    return er * cos(z.imag) + 1j * (er * sin(z.imag))


cdef inline double complex _ccos(double complex z):
    # cos(a + ib) = cos a cosh b - i sin a sinh b
    cdef double a = z.real, b = z.imag
    cdef double eb = exp(b), emb = exp(-b)
    return cos(a) * 0.5 * (eb + emb) - 1j * (sin(a) * 0.5 * (eb - emb))


def deformed_integrand(cnp.ndarray[double complex, ndim=2] z1,
                       cnp.ndarray[double complex, ndim=2] z2,
                       cnp.ndarray[double complex, ndim=2] F,
                       cnp.ndarray[double complex, ndim=2] det,
                       double m1, double m2):
    cdef Py_ssize_t n1 = z1.shape[0], n2 = z1.shape[1], i, j
    cdef cnp.ndarray[double complex, ndim=2] out = np.empty((n1, n2), dtype=np.complex128)
    for i in range(n1):
        for j in range(n2):
            out[i, j] = F[i, j] * det[i, j] * _cexp(-1j * (m1 * z1[i, j] + m2 * z2[i, j]))
    return out
