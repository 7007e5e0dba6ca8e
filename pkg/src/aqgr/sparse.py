"""Okapi BM25 inverted index over whole rendered summaries.

Tokenization is bare Unicode alphanumeric runs, lowercased -- no stemming
and no stopword removal, so statute names and legal terms of art match
literally. The idf uses the +1-smoothed (Lucene-style) variant and is
therefore nonnegative for every document frequency.
"""

import json
import math
import re
from pathlib import Path

import numpy as np

from . import kernels
from .errors import AqgrError, InvalidConfigError, UnknownDocError
from .fusion import SOURCE_SPARSE, RetrievalHit

DEFAULT_K1 = 1.2
DEFAULT_B = 0.75

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


def tokenize(text: str) -> list[str]:
    """Lowercased Unicode alphanumeric runs, in document order."""
    return _TOKEN_RE.findall(text.lower())


class SparseIndex:
    """Immutable BM25 index built once from (key, text) pairs."""

    def __init__(self, k1: float = DEFAULT_K1, b: float = DEFAULT_B):
        if k1 <= 0:
            raise InvalidConfigError(f"k1 must be positive, got {k1}")
        if not 0.0 <= b <= 1.0:
            raise InvalidConfigError(f"b must be in [0, 1], got {b}")
        self.k1 = k1
        self.b = b
        self.doc_keys: list[str] = []
        self.doc_lengths: dict[str, int] = {}
        self.avg_doc_length = 0.0
        # term -> {doc_key: tf}, postings in insertion (row) order
        self.postings: dict[str, dict[str, int]] = {}
        self._row_of: dict[str, int] = {}
        self._packed: dict | None = None

    @classmethod
    def build(cls, docs: list[tuple[str, str]], k1: float = DEFAULT_K1,
              b: float = DEFAULT_B) -> "SparseIndex":
        idx = cls(k1=k1, b=b)
        for key, text in docs:
            if key in idx._row_of:
                raise AqgrError(f"duplicate doc key: {key}")
            terms = tokenize(text)
            idx._row_of[key] = len(idx.doc_keys)
            idx.doc_keys.append(key)
            idx.doc_lengths[key] = len(terms)
            counts: dict[str, int] = {}
            for term in terms:
                counts[term] = counts.get(term, 0) + 1
            for term, tf in counts.items():
                idx.postings.setdefault(term, {})[key] = tf
        if idx.doc_keys:
            idx.avg_doc_length = sum(idx.doc_lengths.values()) / len(idx.doc_keys)
        return idx

    @property
    def doc_count(self) -> int:
        return len(self.doc_keys)

    def idf(self, term: str) -> float:
        df = len(self.postings.get(term, {}))
        if df == 0:
            return 0.0
        return math.log((self.doc_count - df + 0.5) / (df + 0.5) + 1.0)

    def _doc_norm(self, doc_key: str) -> float:
        length = self.doc_lengths[doc_key]
        return self.k1 * (1.0 - self.b + self.b * length / self.avg_doc_length)

    def bm25_score(self, query_terms: list[str], doc_key: str) -> float:
        """BM25 score of one document for the given query terms."""
        if doc_key not in self.doc_lengths:
            raise UnknownDocError(f"document not indexed: {doc_key}")
        score = 0.0
        for term in query_terms:
            tf = self.postings.get(term, {}).get(doc_key, 0)
            if tf == 0:
                continue
            score += self.idf(term) * (tf * (self.k1 + 1.0)) / (tf + self._doc_norm(doc_key))
        return score

    def _pack(self) -> dict:
        """Flatten postings into the array layout the scoring kernels expect."""
        if self._packed is None:
            norms = np.empty(self.doc_count, dtype=np.float64)
            for key, row in self._row_of.items():
                norms[row] = self._doc_norm(key)
            flat: dict[str, tuple[np.ndarray, np.ndarray]] = {}
            for term, docs in self.postings.items():
                rows = np.fromiter((self._row_of[k] for k in docs), dtype=np.int64, count=len(docs))
                tfs = np.fromiter(docs.values(), dtype=np.float64, count=len(docs))
                flat[term] = (rows, tfs)
            self._packed = {"norms": norms, "terms": flat}
        return self._packed

    def search(self, query_text: str, k: int) -> list[RetrievalHit]:
        """Top-k documents by BM25, zero-score documents excluded."""
        if k < 1:
            raise InvalidConfigError(f"k must be >= 1, got {k}")
        query_terms = tokenize(query_text)
        if not query_terms or not self.doc_keys:
            return []
        packed = self._pack()
        matched = [t for t in query_terms if t in packed["terms"]]
        if not matched:
            return []
        offsets = np.zeros(len(matched) + 1, dtype=np.int64)
        for i, term in enumerate(matched):
            offsets[i + 1] = offsets[i] + len(packed["terms"][term][0])
        rows = np.concatenate([packed["terms"][t][0] for t in matched])
        tfs = np.concatenate([packed["terms"][t][1] for t in matched])
        idfs = np.fromiter((self.idf(t) for t in matched), dtype=np.float64, count=len(matched))

        scores = kernels.get_backend().bm25_scores(
            self.doc_count, packed["norms"], rows, tfs, offsets, idfs, self.k1)
        hit_rows = [(float(scores[r]), self.doc_keys[r]) for r in np.nonzero(scores > 0.0)[0]]
        hit_rows.sort(key=lambda sk: (-sk[0], sk[1]))
        return [RetrievalHit(key, score, SOURCE_SPARSE, i + 1)
                for i, (score, key) in enumerate(hit_rows[:k])]

    def save(self, path: str | Path) -> None:
        """Persist as JSON lines: one meta line, one line per doc, one per term."""
        path = Path(path)
        tmp = path.with_suffix(path.suffix + ".tmp")
        with tmp.open("w", encoding="utf-8") as fh:
            fh.write(json.dumps({
                "kind": "meta", "version": 1, "k1": self.k1, "b": self.b,
                "doc_count": self.doc_count, "avg_doc_length": self.avg_doc_length,
            }) + "\n")
            for key in self.doc_keys:
                fh.write(json.dumps({"kind": "doc", "key": key,
                                     "length": self.doc_lengths[key]}) + "\n")
            for term in sorted(self.postings):
                entries = [[k, tf] for k, tf in self.postings[term].items()]
                fh.write(json.dumps({"kind": "term", "term": term, "postings": entries},
                                    ensure_ascii=False) + "\n")
        tmp.replace(path)

    @classmethod
    def load(cls, path: str | Path) -> "SparseIndex":
        idx: SparseIndex | None = None
        with Path(path).open("r", encoding="utf-8") as fh:
            for line in fh:
                rec = json.loads(line)
                if rec["kind"] == "meta":
                    idx = cls(k1=rec["k1"], b=rec["b"])
                elif rec["kind"] == "doc":
                    assert idx is not None
                    idx._row_of[rec["key"]] = len(idx.doc_keys)
                    idx.doc_keys.append(rec["key"])
                    idx.doc_lengths[rec["key"]] = rec["length"]
                elif rec["kind"] == "term":
                    assert idx is not None
                    idx.postings[rec["term"]] = {k: tf for k, tf in rec["postings"]}
        if idx is None:
            raise AqgrError(f"no meta record in sparse index file {path}")
        if idx.doc_keys:
            idx.avg_doc_length = sum(idx.doc_lengths.values()) / len(idx.doc_keys)
        return idx
