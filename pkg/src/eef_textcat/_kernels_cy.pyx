# cython: language_level=3
"""Compiled batch scorer for linear decision rules over CSR document batches."""

import numpy as np

cimport numpy as cnp

cnp.import_array()


def linear_scores(cnp.int64_t[::1] indptr,
                  cnp.int64_t[::1] indices,
                  cnp.float64_t[::1] data,
                  cnp.float64_t[::1] lengths,
                  cnp.float64_t[:, ::1] weights_t,
                  cnp.float64_t[::1] length_coef,
                  cnp.float64_t[::1] offsets):
    """score[d, i] = offsets[i] + length_coef[i]*lengths[d] + sum_j data[j]*weights_t[indices[j], i]."""
    cdef Py_ssize_t n_docs = indptr.shape[0] - 1
    cdef Py_ssize_t n_classes = weights_t.shape[1]
    out_arr = np.empty((n_docs, n_classes), dtype=np.float64)
    cdef cnp.float64_t[:, ::1] out = out_arr
    cdef Py_ssize_t d, i, j
    cdef cnp.int64_t t
    cdef double c
    for d in range(n_docs):
        for i in range(n_classes):
            out[d, i] = offsets[i] + length_coef[i] * lengths[d]
        for j in range(indptr[d], indptr[d + 1]):
            t = indices[j]
            c = data[j]
            for i in range(n_classes):
                out[d, i] += c * weights_t[t, i]
    return out_arr
