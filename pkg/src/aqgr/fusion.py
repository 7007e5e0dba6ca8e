"""Reciprocal rank fusion of sparse and dense hit lists.

BM25 and cosine scores are incommensurable, so the ensemble combines the
two legs purely by rank: each occurrence of a document contributes
``weight / (c + rank)``. Chunk-level keys use the form ``docId#seq`` and
collapse to judgment level via :func:`dedupe_to_judgments`.
"""

from dataclasses import dataclass

from .errors import AqgrError, InvalidConfigError

SOURCE_SPARSE = "sparse"
SOURCE_DENSE = "dense"
SOURCE_FUSED = "fused"


@dataclass(frozen=True)
class RetrievalHit:
    doc_key: str
    score: float
    source: str
    rank: int


@dataclass(frozen=True)
class FusionConfig:
    per_retriever_k: int = 12
    rrf_constant: float = 60.0
    weights: tuple[float, float] = (0.5, 0.5)

    def validate(self) -> None:
        if self.per_retriever_k < 1:
            raise InvalidConfigError(f"per_retriever_k must be >= 1, got {self.per_retriever_k}")
        if self.rrf_constant <= 0:
            raise InvalidConfigError(f"rrf_constant must be positive, got {self.rrf_constant}")
        sparse_w, dense_w = self.weights
        if sparse_w < 0 or dense_w < 0 or (sparse_w == 0 and dense_w == 0):
            raise InvalidConfigError(f"weights must be nonnegative and not both zero, got {self.weights}")


def _check_rank_consistent(hits: list[RetrievalHit], leg: str) -> None:
    for i, h in enumerate(hits):
        if h.rank != i + 1:
            raise AqgrError(f"{leg} hit list is not rank-consistent at position {i}: rank {h.rank}")


def fuse(sparse_hits: list[RetrievalHit], dense_hits: list[RetrievalHit],
         cfg: FusionConfig | None = None) -> list[RetrievalHit]:
    """Combine two rank-consistent hit lists into one fused ranking.

    Each leg is truncated to ``per_retriever_k`` before fusion; ties in the
    fused score break by ascending doc key so runs are reproducible.
    """
    cfg = cfg or FusionConfig()
    cfg.validate()
    _check_rank_consistent(sparse_hits, "sparse")
    _check_rank_consistent(dense_hits, "dense")

    sparse_w, dense_w = cfg.weights
    scores: dict[str, float] = {}
    for weight, hits in ((sparse_w, sparse_hits), (dense_w, dense_hits)):
        for hit in hits[:cfg.per_retriever_k]:
            scores[hit.doc_key] = scores.get(hit.doc_key, 0.0) + weight / (cfg.rrf_constant + hit.rank)

    ordered = sorted(scores.items(), key=lambda kv: (-kv[1], kv[0]))
    return [RetrievalHit(key, score, SOURCE_FUSED, i + 1) for i, (key, score) in enumerate(ordered)]


def dedupe_to_judgments(hits: list[RetrievalHit]) -> list[RetrievalHit]:
    """Collapse chunk-level fused hits to judgment level, keeping max score."""
    best: dict[str, float] = {}
    for hit in hits:
        doc_id = hit.doc_key.split("#", 1)[0]
        if doc_id not in best or hit.score > best[doc_id]:
            best[doc_id] = hit.score
    ordered = sorted(best.items(), key=lambda kv: (-kv[1], kv[0]))
    return [RetrievalHit(key, score, SOURCE_FUSED, i + 1) for i, (key, score) in enumerate(ordered)]
