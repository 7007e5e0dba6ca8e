"""Case-law retrieval engine: structured judgment summaries, hybrid
BM25 + dense retrieval with rank fusion, question-guided querying, and an
offline evaluation harness."""

__version__ = "0.1.0"
