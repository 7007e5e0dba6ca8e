"""Numba-compiled kernel implementations (fast path).

No fastmath: IEEE semantics must match the numpy fallback so backend
choice never changes rankings.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def dense_scores(mat, query):
    n, d = mat.shape
    out = np.zeros(n, dtype=np.float64)
    for i in range(n):
        acc = 0.0
        for j in range(d):
            acc += np.float64(mat[i, j]) * query[j]
        out[i] = acc
    return out


@njit(cache=True)
def bm25_scores(doc_count, doc_norms, posting_rows, posting_tfs, term_offsets, idfs, k1):
    out = np.zeros(doc_count, dtype=np.float64)
    for t in range(len(idfs)):
        for p in range(term_offsets[t], term_offsets[t + 1]):
            row = posting_rows[p]
            tf = posting_tfs[p]
            out[row] += idfs[t] * (tf * (k1 + 1.0)) / (tf + doc_norms[row])
    return out
