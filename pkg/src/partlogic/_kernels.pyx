# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; see ``_kernels_py`` for the reference semantics."""

import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef enum:
    ARBITRARY = 0
    INJECTIVE = 1
    SURJECTIVE = 2


def _bell(int n):
    cdef list row = [1]
    cdef list nxt
    cdef int step
    cdef object v
    # explicit indices: negative indexing is off under wraparound=False
    for step in range(n):
        nxt = [row[len(row) - 1]]
        for v in row:
            nxt.append(nxt[len(nxt) - 1] + v)
        row = nxt
    return row[0]


def rgs_array(int n):
    if n == 0:
        return np.zeros((1, 0), dtype=np.uint8)
    cdef Py_ssize_t total = _bell(n)
    out_obj = np.empty((total, n), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] out = out_obj
    cdef int *a = <int *> malloc(n * sizeof(int))
    cdef int *bound = <int *> malloc(n * sizeof(int))
    cdef Py_ssize_t r = 0
    cdef int i, j
    try:
        for i in range(n):
            a[i] = 0
            bound[i] = 1
        bound[0] = 0
        while True:
            for j in range(n):
                out[r, j] = a[j]
            r += 1
            i = n - 1
            while i > 0 and a[i] == bound[i]:
                i -= 1
            if i == 0:
                break
            a[i] += 1
            for j in range(i + 1, n):
                a[j] = 0
                bound[j] = bound[j - 1] if bound[j - 1] > a[j - 1] + 1 else a[j - 1] + 1
    finally:
        free(a)
        free(bound)
    return out_obj


def refinement_matrix(cnp.ndarray rgs_obj):
    cdef cnp.uint8_t[:, ::1] rgs = np.ascontiguousarray(rgs_obj, dtype=np.uint8)
    cdef Py_ssize_t m = rgs.shape[0]
    cdef Py_ssize_t n = rgs.shape[1]
    out_obj = np.zeros((m, m), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] out = out_obj
    cdef int *image = <int *> malloc((n + 1) * sizeof(int))
    cdef Py_ssize_t i, j, x
    cdef bint ok
    try:
        for i in range(m):
            for j in range(m):
                for x in range(n):
                    image[x] = -1
                ok = True
                for x in range(n):
                    if image[rgs[j, x]] == -1:
                        image[rgs[j, x]] = rgs[i, x]
                    elif image[rgs[j, x]] != rgs[i, x]:
                        ok = False
                        break
                out[i, j] = ok
    finally:
        free(image)
    return out_obj.astype(bool)


def count_orbit_representatives(int k, int n, int map_kind, bint balls_indist, bint boxes_indist):
    cdef int *f = <int *> malloc((k + 1) * sizeof(int))
    cdef long long *hits = <long long *> malloc((n + 1) * sizeof(long long))
    cdef long long count = 0
    cdef int i, v, top, distinct
    cdef bint ok
    try:
        for i in range(k):
            f[i] = 0
        while True:
            ok = True
            for v in range(n):
                hits[v] = 0
            distinct = 0
            for i in range(k):
                if hits[f[i]] == 0:
                    distinct += 1
                hits[f[i]] += 1
            if map_kind == INJECTIVE and distinct != k:
                ok = False
            if ok and map_kind == SURJECTIVE and distinct != n:
                ok = False
            if ok and balls_indist:
                for i in range(k - 1):
                    if f[i] > f[i + 1]:
                        ok = False
                        break
            if ok and boxes_indist:
                top = -1
                for i in range(k):
                    if f[i] > top + 1:
                        ok = False
                        break
                    if f[i] > top:
                        top = f[i]
            if ok and balls_indist and boxes_indist:
                # canonical map uses labels 0..top; run lengths must not increase
                for v in range(n - 1):
                    if hits[v] < hits[v + 1]:
                        ok = False
                        break
            if ok:
                count += 1
            # odometer, last position fastest (matches itertools.product order)
            i = k - 1
            while i >= 0:
                f[i] += 1
                if f[i] < n:
                    break
                f[i] = 0
                i -= 1
            if i < 0:
                break
    finally:
        free(f)
        free(hits)
    return count
