"""Pure-numpy kernel implementations (fallback path)."""

import numpy as np


def dense_scores(mat: np.ndarray, query: np.ndarray) -> np.ndarray:
    """Dot product of every row of ``mat`` (float32) against ``query`` (float64)."""
    if mat.shape[0] == 0:
        return np.zeros(0, dtype=np.float64)
    return mat.astype(np.float64) @ query


def bm25_scores(doc_count: int, doc_norms: np.ndarray, posting_rows: np.ndarray,
                posting_tfs: np.ndarray, term_offsets: np.ndarray,
                idfs: np.ndarray, k1: float) -> np.ndarray:
    """Accumulate BM25 contributions for one query over packed postings.

    Term ``t``'s postings occupy ``posting_rows[term_offsets[t]:term_offsets[t+1]]``
    (document row ids) and the matching slice of ``posting_tfs``.
    ``doc_norms[d]`` holds the precomputed length normalizer
    ``k1 * (1 - b + b * len_d / avg_len)``.
    """
    out = np.zeros(doc_count, dtype=np.float64)
    for t in range(len(idfs)):
        lo, hi = term_offsets[t], term_offsets[t + 1]
        rows = posting_rows[lo:hi]
        tfs = posting_tfs[lo:hi]
        contrib = idfs[t] * (tfs * (k1 + 1.0)) / (tfs + doc_norms[rows])
        np.add.at(out, rows, contrib)
    return out
