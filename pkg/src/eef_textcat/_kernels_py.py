"""Pure-Python (numpy/scipy) batch scorer; semantics match _kernels_cy exactly."""

import numpy as np
import scipy.sparse as sp


def linear_scores(indptr, indices, data, lengths, weights_t, length_coef, offsets):
    n_docs = indptr.shape[0] - 1
    mat = sp.csr_matrix((data, indices, indptr), shape=(n_docs, weights_t.shape[0]))
    scores = mat @ weights_t
    scores += np.outer(lengths, length_coef)
    scores += offsets
    return np.asarray(scores)
