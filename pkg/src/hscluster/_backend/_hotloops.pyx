# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled distance kernels (Poincare disc + Euclidean pairwise loops)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport asinh, sqrt

cnp.import_array()

NAME = "cython"


def pairwise_sq_dist(object x_in, object y_in):
    cdef double[:, ::1] x = np.ascontiguousarray(x_in, dtype=np.float64)
    cdef double[:, ::1] y = np.ascontiguousarray(y_in, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0], n = y.shape[0], d = x.shape[1]
    cdef cnp.ndarray[double, ndim=2] out = np.empty((m, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef Py_ssize_t i, j, l
    cdef double acc, diff
    for i in range(m):
        for j in range(n):
            acc = 0.0
            for l in range(d):
                diff = x[i, l] - y[j, l]
                acc += diff * diff
            o[i, j] = acc
    return out


def paired_sq_dist(object x_in, object y_in):
    cdef double[:, ::1] x = np.ascontiguousarray(x_in, dtype=np.float64)
    cdef double[:, ::1] y = np.ascontiguousarray(y_in, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, l
    cdef double acc, diff
    for i in range(n):
        acc = 0.0
        for l in range(d):
            diff = x[i, l] - y[i, l]
            acc += diff * diff
        o[i] = acc
    return out


def pairwise_disc_dist(object x_in, object y_in):
    cdef double[:, ::1] x = np.ascontiguousarray(x_in, dtype=np.float64)
    cdef double[:, ::1] y = np.ascontiguousarray(y_in, dtype=np.float64)
    cdef Py_ssize_t m = x.shape[0], n = y.shape[0], d = x.shape[1]
    cdef cnp.ndarray[double, ndim=2] out = np.empty((m, n), dtype=np.float64)
    cdef double[:, ::1] o = out
    cdef cnp.ndarray[double, ndim=1] cx_arr = np.empty(m, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] cy_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] cx = cx_arr
    cdef double[::1] cy = cy_arr
    cdef Py_ssize_t i, j, l
    cdef double acc, diff
    for i in range(m):
        acc = 0.0
        for l in range(d):
            acc += x[i, l] * x[i, l]
        cx[i] = 1.0 - acc
    for j in range(n):
        acc = 0.0
        for l in range(d):
            acc += y[j, l] * y[j, l]
        cy[j] = 1.0 - acc
    for i in range(m):
        for j in range(n):
            acc = 0.0
            for l in range(d):
                diff = x[i, l] - y[j, l]
                acc += diff * diff
            o[i, j] = 2.0 * asinh(sqrt(acc / (cx[i] * cy[j])))
    return out


def paired_disc_dist(object x_in, object y_in):
    cdef double[:, ::1] x = np.ascontiguousarray(x_in, dtype=np.float64)
    cdef double[:, ::1] y = np.ascontiguousarray(y_in, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], d = x.shape[1]
    cdef cnp.ndarray[double, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t i, l
    cdef double sq, nx, ny, diff
    for i in range(n):
        sq = 0.0
        nx = 0.0
        ny = 0.0
        for l in range(d):
            diff = x[i, l] - y[i, l]
            sq += diff * diff
            nx += x[i, l] * x[i, l]
            ny += y[i, l] * y[i, l]
        o[i] = 2.0 * asinh(sqrt(sq / ((1.0 - nx) * (1.0 - ny))))
    return out
