# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled counting kernels: ordered torus sup-norm pair counts.

Mirror of qmcpairs._kernels_py; see that module for the contract.
"""

from libc.math cimport fabs

import numpy as np

BACKEND = "cython"

DEF MAXD = 16


cdef inline double _axis_dist(double a, double b) nogil:
    cdef double dx = fabs(a - b)
    if dx > 0.5:
        dx = 1.0 - dx
    return dx


def count_leq_naive(double[:, ::1] pts, double radius):
    """Ordered pairs (i, j), i != j, with torus sup-norm distance <= radius."""
    cdef Py_ssize_t n = pts.shape[0], d = pts.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double dx, best
    cdef long long total = 0
    if n < 2:
        return 0
    with nogil:
        for i in range(n):
            for j in range(i + 1, n):
                best = 0.0
                for k in range(d):
                    dx = _axis_dist(pts[i, k], pts[j, k])
                    if dx > best:
                        best = dx
                        if best > radius:
                            break
                if best <= radius:
                    total += 2
    return total


def count_leq_naive_block(double[:, ::1] pts, double radius, Py_ssize_t i0, Py_ssize_t i1):
    """Ordered-pair contribution of rows i0..i1-1 paired with all j > i."""
    cdef Py_ssize_t n = pts.shape[0], d = pts.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double dx, best
    cdef long long total = 0
    if i1 > n:
        i1 = n
    with nogil:
        for i in range(i0, i1):
            for j in range(i + 1, n):
                best = 0.0
                for k in range(d):
                    dx = _axis_dist(pts[i, k], pts[j, k])
                    if dx > best:
                        best = dx
                        if best > radius:
                            break
                if best <= radius:
                    total += 2
    return total


def count_leq_grid(double[:, ::1] pts, double radius, Py_ssize_t g):
    """Grid-accelerated count; result is exactly count_leq_naive(pts, radius)."""
    cdef Py_ssize_t n = pts.shape[0], d = pts.shape[1]
    if n < 2:
        return 0
    if d > MAXD:
        raise ValueError(f"dimension {d} exceeds the compiled limit {MAXD}")
    cdef Py_ssize_t ncells = 1
    cdef Py_ssize_t k
    for k in range(d):
        ncells *= g

    starts_np = np.zeros(ncells + 1, dtype=np.int64)
    cid_np = np.empty(n, dtype=np.int64)
    order_np = np.empty(n, dtype=np.int64)
    fill_np = np.zeros(ncells, dtype=np.int64)
    cdef long long[::1] starts = starts_np
    cdef long long[::1] cid = cid_np
    cdef long long[::1] order = order_np
    cdef long long[::1] fill = fill_np

    cdef Py_ssize_t i, j, c, t
    cdef long long cc
    cdef double dx, best
    cdef long long total = 0
    cdef Py_ssize_t cand[MAXD][3]
    cdef Py_ssize_t nc[MAXD]
    cdef Py_ssize_t odo[MAXD]
    cdef Py_ssize_t coord[MAXD]
    cdef Py_ssize_t axis, m, done
    cdef long long nbr

    with nogil:
        for i in range(n):
            cc = 0
            for k in range(d):
                c = <Py_ssize_t>(pts[i, k] * g)
                if c < 0:
                    c = 0
                elif c >= g:
                    c = g - 1
                cc = cc * g + c
            cid[i] = cc
            starts[cc + 1] += 1
        for i in range(ncells):
            starts[i + 1] += starts[i]
        for i in range(n):
            cc = cid[i]
            order[starts[cc] + fill[cc]] = i
            fill[cc] += 1

        for i in range(n):
            # decode cell coordinates and collect deduplicated neighbors
            cc = cid[i]
            for k in range(d - 1, -1, -1):
                coord[k] = cc % g
                cc //= g
            for k in range(d):
                c = coord[k]
                cand[k][0] = c
                m = 1
                if g > 1:
                    cand[k][m] = (c + 1) % g
                    m += 1
                    if g > 2:
                        cand[k][m] = (c + g - 1) % g
                        m += 1
                nc[k] = m
                odo[k] = 0
            done = 0
            while done == 0:
                nbr = 0
                for k in range(d):
                    nbr = nbr * g + cand[k][odo[k]]
                for t in range(starts[nbr], starts[nbr + 1]):
                    j = order[t]
                    if j == i:
                        continue
                    best = 0.0
                    for k in range(d):
                        dx = _axis_dist(pts[i, k], pts[j, k])
                        if dx > best:
                            best = dx
                            if best > radius:
                                break
                    if best <= radius:
                        total += 1
                axis = d - 1
                while axis >= 0:
                    odo[axis] += 1
                    if odo[axis] < nc[axis]:
                        break
                    odo[axis] = 0
                    axis -= 1
                if axis < 0:
                    done = 1
    return total
