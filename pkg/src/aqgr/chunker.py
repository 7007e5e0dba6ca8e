"""Recursive character splitter producing overlapping chunks with offsets.

Split points snap to the highest-priority separator available: chunk ends
snap to the latest separator occurrence inside the size window, and the
next chunk's start snaps to the earliest boundary inside the overlap
window. The trailing empty-string separator is the character-level
fallback, so a split point always exists. Offsets count Unicode scalar
values, never bytes.
"""

from dataclasses import dataclass
from math import ceil

from .errors import InvalidConfigError

DEFAULT_CHUNK_SIZE = 20_000
DEFAULT_CHUNK_OVERLAP = 10_000
DEFAULT_SEPARATORS = ("\n\n", "\n", ". ", " ", "")


@dataclass(frozen=True)
class ChunkConfig:
    chunk_size: int = DEFAULT_CHUNK_SIZE
    chunk_overlap: int = DEFAULT_CHUNK_OVERLAP
    separators: tuple[str, ...] = DEFAULT_SEPARATORS

    def validate(self) -> None:
        if self.chunk_size <= 0:
            raise InvalidConfigError(f"chunk_size must be positive, got {self.chunk_size}")
        if not 0 <= self.chunk_overlap < self.chunk_size:
            raise InvalidConfigError(
                f"chunk_overlap must satisfy 0 <= overlap < chunk_size, "
                f"got overlap={self.chunk_overlap} size={self.chunk_size}"
            )
        if not self.separators or self.separators[-1] != "":
            raise InvalidConfigError("separators must be non-empty and end with the empty string")
        if "" in self.separators[:-1]:
            raise InvalidConfigError("empty-string separator is only allowed in final position")


@dataclass(frozen=True)
class Chunk:
    doc_id: str
    text: str
    start_char: int
    end_char: int
    seq: int


def estimate_tokens(text: str) -> int:
    """Character-count token estimate at 4 characters per token."""
    return ceil(len(text) / 4)


def _snap_end(text: str, start: int, end_max: int, separators: tuple[str, ...]) -> int:
    """Latest boundary in (start, end_max] after the best-priority separator."""
    for sep in separators:
        if sep == "":
            return end_max
        j = text.rfind(sep, start, end_max)
        if j != -1:
            return j + len(sep)
    return end_max


def _snap_start(text: str, prev_start: int, end: int, overlap: int,
                separators: tuple[str, ...]) -> int:
    """Earliest boundary in the overlap window before ``end``.

    The window floor guarantees forward progress even when the snapped end
    left the chunk shorter than the configured overlap.
    """
    lo = max(prev_start + 1, end - overlap)
    for sep in separators:
        if sep == "":
            return lo
        j = text.find(sep, max(0, lo - len(sep)), end)
        if j != -1 and j + len(sep) >= lo:
            return j + len(sep)
    return lo


def split(doc_id: str, text: str, cfg: ChunkConfig | None = None) -> list[Chunk]:
    """Split a document into overlapping chunks covering every character.

    Guarantees: chunks cover [0, len(text)) with no gaps, each chunk is at
    most ``chunk_size`` characters, consecutive chunks overlap by at most
    ``chunk_overlap``, and a document that fits in one chunk is returned
    whole.
    """
    cfg = cfg or ChunkConfig()
    cfg.validate()
    n = len(text)
    if n == 0:
        return []
    if n <= cfg.chunk_size:
        return [Chunk(doc_id, text, 0, n, 0)]

    chunks: list[Chunk] = []
    start = 0
    while True:
        end_max = start + cfg.chunk_size
        if end_max >= n:
            chunks.append(Chunk(doc_id, text[start:n], start, n, len(chunks)))
            break
        end = _snap_end(text, start, end_max, cfg.separators)
        chunks.append(Chunk(doc_id, text[start:end], start, end, len(chunks)))
        start = _snap_start(text, start, end, cfg.chunk_overlap, cfg.separators)
    return chunks
