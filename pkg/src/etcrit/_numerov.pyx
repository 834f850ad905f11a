# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Numerov sweep.

Statement-for-statement twin of etcrit._numerov_py.numerov_sweep; the build
disables floating-point contraction so both backends produce identical bits.
"""

from libc.math cimport fabs


def numerov_sweep(double[::1] w, double energy, double h2, double u1):
    cdef Py_ssize_t n = w.shape[0] - 1
    cdef double c = h2 / 12.0
    cdef double up = 0.0
    cdef double tp = 0.0
    cdef double u = u1
    cdef double t = c * (w[1] - energy)
    cdef long nodes = 0
    cdef double umax = fabs(u)
    cdef double un, tn, au
    cdef Py_ssize_t i
    for i in range(2, n + 1):
        tn = c * (w[i] - energy)
        un = (u * (2.0 + 10.0 * t) - up * (1.0 - tp)) / (1.0 - tn)
        if (un < 0.0 and u > 0.0) or (un > 0.0 and u < 0.0):
            nodes += 1
        up = u
        tp = t
        u = un
        t = tn
        au = fabs(u)
        if au > umax:
            umax = au
        if au > 1e250:
            up /= au
            u /= au
            umax /= au
    return nodes, up, u, umax
