"""Embedding providers and an exact cosine-similarity vector index.

The index is brute force by design: corpora are at most a few thousand
summaries, exact search keeps oracle testing trivial, and all vectors are
L2-normalized at insertion so cosine similarity is a plain dot product.
"""

import hashlib
import os
import struct
import threading
from pathlib import Path

import httpx
import numpy as np

from . import kernels
from .errors import (AqgrError, DimensionMismatchError, InvalidConfigError,
                     InvalidVectorError, ProviderError)
from .fusion import SOURCE_DENSE, RetrievalHit
from .sparse import tokenize

DEFAULT_MOCK_DIM = 256

_MAGIC = b"AQGRDIDX"
_VERSION = 1


def l2_normalize(values: np.ndarray) -> np.ndarray:
    """Return the unit-norm float32 copy of a vector; reject zero/non-finite."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise InvalidVectorError(f"expected a 1-d vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidVectorError("vector contains non-finite values")
    norm = float(np.linalg.norm(arr))
    if norm == 0.0:
        raise InvalidVectorError("zero vector cannot be normalized")
    return (arr / norm).astype(np.float32)


class DenseIndex:
    """Exact top-k cosine index keyed by (doc_id, chunk_seq)."""

    def __init__(self, dim: int):
        if dim < 1:
            raise InvalidConfigError(f"dim must be >= 1, got {dim}")
        self.dim = dim
        self._entries: dict[tuple[str, int], np.ndarray] = {}
        self._sealed = False
        self._packed: tuple[list[tuple[str, int]], np.ndarray] | None = None

    def __len__(self) -> int:
        return len(self._entries)

    def add(self, doc_id: str, seq: int, values: np.ndarray) -> None:
        """Insert or replace one vector; unnormalized input is normalized silently."""
        if self._sealed:
            raise AqgrError("index is sealed; rebuild instead of mutating")
        if "#" in doc_id:
            raise AqgrError(f"doc id may not contain '#': {doc_id!r}")
        arr = np.asarray(values)
        if arr.shape != (self.dim,):
            raise DimensionMismatchError(f"expected dim {self.dim}, got shape {arr.shape}")
        self._entries[(doc_id, seq)] = l2_normalize(arr)
        self._packed = None

    def seal(self) -> None:
        self._pack()
        self._sealed = True

    def _pack(self) -> tuple[list[tuple[str, int]], np.ndarray]:
        if self._packed is None:
            keys = sorted(self._entries)
            mat = (np.stack([self._entries[k] for k in keys])
                   if keys else np.zeros((0, self.dim), dtype=np.float32))
            self._packed = (keys, mat)
        return self._packed

    @staticmethod
    def hit_key(doc_id: str, seq: int) -> str:
        return doc_id if seq == 0 else f"{doc_id}#{seq}"

    def search(self, query: np.ndarray, k: int) -> list[RetrievalHit]:
        """Exhaustive top-k by dot product; ties break by ascending key."""
        if k < 1:
            raise InvalidConfigError(f"k must be >= 1, got {k}")
        arr = np.asarray(query)
        if arr.shape != (self.dim,):
            raise DimensionMismatchError(f"expected dim {self.dim}, got shape {arr.shape}")
        if not self._entries:
            return []
        keys, mat = self._pack()
        scores = kernels.get_backend().dense_scores(
            mat, l2_normalize(arr).astype(np.float64))
        # rows are pre-sorted by key, so a stable argsort resolves ties by key
        order = np.argsort(-scores, kind="stable")[:k]
        return [RetrievalHit(self.hit_key(*keys[r]), float(scores[r]), SOURCE_DENSE, i + 1)
                for i, r in enumerate(order)]

    def save(self, path: str | Path) -> None:
        """Flat binary: magic, version, dim, count, then key-prefixed float32 records."""
        keys, mat = self._pack()
        path = Path(path)
        tmp = path.with_suffix(path.suffix + ".tmp")
        with tmp.open("wb") as fh:
            fh.write(_MAGIC)
            fh.write(struct.pack("<IIQ", _VERSION, self.dim, len(keys)))
            for row, (doc_id, seq) in enumerate(keys):
                raw = doc_id.encode("utf-8")
                fh.write(struct.pack("<HI", len(raw), seq))
                fh.write(raw)
                fh.write(mat[row].astype("<f4").tobytes())
        tmp.replace(path)

    @classmethod
    def load(cls, path: str | Path) -> "DenseIndex":
        with Path(path).open("rb") as fh:
            magic = fh.read(8)
            if magic != _MAGIC:
                raise AqgrError(f"not a dense index file: {path}")
            version, dim, count = struct.unpack("<IIQ", fh.read(16))
            if version != _VERSION:
                raise AqgrError(f"unsupported dense index version {version}")
            idx = cls(dim)
            for _ in range(count):
                key_len, seq = struct.unpack("<HI", fh.read(6))
                doc_id = fh.read(key_len).decode("utf-8")
                vec = np.frombuffer(fh.read(4 * dim), dtype="<f4").copy()
                idx._entries[(doc_id, seq)] = vec
        idx.seal()
        return idx


class MockEmbeddingProvider:
    """Deterministic offline provider: hashed token-multiset projection.

    Each token lands in a seeded hash bucket with weight equal to its
    count; the bucket vector is L2-normalized. Empty text maps to the
    fixed unit vector on bucket 0.
    """

    def __init__(self, dim: int = DEFAULT_MOCK_DIM, seed: int = 0):
        if dim < 1:
            raise InvalidConfigError(f"dim must be >= 1, got {dim}")
        self.dim = dim
        self.seed = seed

    def _bucket(self, token: str) -> int:
        digest = hashlib.blake2b(f"{self.seed}\x00{token}".encode("utf-8"),
                                 digest_size=8).digest()
        return int.from_bytes(digest, "little") % self.dim

    def embed(self, texts: list[str]) -> list[np.ndarray]:
        out = []
        for text in texts:
            vec = np.zeros(self.dim, dtype=np.float64)
            for token in tokenize(text):
                vec[self._bucket(token)] += 1.0
            if not vec.any():
                vec[0] = 1.0
            out.append(l2_normalize(vec))
        return out


class HttpEmbeddingProvider:
    """JSON-over-HTTP provider: POST {"texts": [...]} -> {"embeddings": [[...]]}."""

    def __init__(self, url: str, api_key_env: str = "EMBED_API_KEY",
                 dim: int | None = None, timeout: float = 30.0,
                 max_concurrent: int = 4, transport: httpx.BaseTransport | None = None):
        self.url = url
        self.api_key_env = api_key_env
        self._dim = dim
        self._semaphore = threading.Semaphore(max_concurrent)
        self._client = httpx.Client(timeout=timeout, transport=transport)

    @property
    def dim(self) -> int:
        if self._dim is None:
            self._dim = len(self.embed(["probe"])[0])
        return self._dim

    def embed(self, texts: list[str]) -> list[np.ndarray]:
        headers = {}
        key = os.environ.get(self.api_key_env, "")
        if key:
            headers["Authorization"] = f"Bearer {key}"
        with self._semaphore:
            try:
                resp = self._client.post(self.url, json={"texts": texts}, headers=headers)
            except httpx.HTTPError as exc:
                raise ProviderError(f"embedding request failed: {exc}") from exc
        if resp.status_code != 200:
            raise ProviderError(f"embedding provider returned {resp.status_code}")
        try:
            rows = resp.json()["embeddings"]
            vectors = [l2_normalize(np.asarray(row, dtype=np.float64)) for row in rows]
        except (KeyError, TypeError, ValueError) as exc:
            raise ProviderError(f"embedding response malformed: {exc}") from exc
        if len(vectors) != len(texts):
            raise ProviderError(f"embedding count mismatch: {len(vectors)} != {len(texts)}")
        return vectors
