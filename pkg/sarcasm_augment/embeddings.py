"""
GloVe-format word vectors and exact cosine nearest-neighbor search.

Example:
    >>> from sarcasm_augment.embeddings import load_embeddings, nearest_neighbors
    >>> table = load_embeddings("glove.twitter.27B.100d.txt")
    >>> [n.word for n in nearest_neighbors(table, "good", k=3)]
    ['great', 'bad', 'nice']
"""

from __future__ import annotations

import logging
import struct
from collections.abc import Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from types import MappingProxyType

import numpy as np

from .exceptions import DimensionMismatchError, ParseError, ValidationError
from .parsers.base import split_lines
from .parsers.glove import GloveChunk, GloveParser
from .utils import atomic_write_bytes, sha256_file
from .validation import validate_file_exists, validate_positive

logger = logging.getLogger(__name__)

__all__ = [
    "CACHE_MAGIC",
    "EmbeddingTable",
    "Neighbor",
    "cosine_similarity",
    "load_embeddings",
    "lookup",
    "nearest_neighbors",
    "read_cache",
    "write_cache",
]

CACHE_MAGIC = b"SAEMB1\x00\x00"
_HEADER = struct.Struct("<8sII32s")
_WORD_LEN = struct.Struct("<I")
_CHUNK_LINES = 50_000


@dataclass(frozen=True)
class Neighbor:
    """A vocabulary word and its cosine similarity to a query word."""

    word: str
    similarity: float


class EmbeddingTable:
    """
    Read-only word -> vector table.

    Row norms are computed once at construction so a neighbor query costs a
    single matrix-vector product. With ``normalized=True`` a unit-row copy of
    the matrix is kept as well (twice the memory, no per-query division).

    Attributes:
        dim: Vector dimension.
        vocab: Mapping word -> row index.
        vectors: ``len(vocab) x dim`` float64 matrix (not writeable).
        unit_norms: Euclidean norm of every row.
    """

    def __init__(
        self,
        words: Sequence[str],
        vectors: np.ndarray,
        normalized: bool = False,
    ):
        matrix = np.array(vectors, dtype=np.float64, copy=True)
        if matrix.ndim != 2 or matrix.shape[0] != len(words):
            raise ValidationError(
                "vectors must be a 2-D matrix with one row per word",
                parameter="vectors",
                value=matrix.shape,
                expected=f"({len(words)}, dim)",
            )
        if matrix.shape[0] == 0 or matrix.shape[1] == 0:
            raise ValidationError(
                "Embedding table must hold at least one word of dimension >= 1",
                parameter="vectors",
                value=matrix.shape,
                expected="non-empty matrix",
            )
        vocab: dict[str, int] = {}
        for index, word in enumerate(words):
            if word in vocab:
                raise ValidationError(
                    f"Duplicate word {word!r} in embedding table",
                    parameter="words",
                    value=word,
                    expected="unique words",
                )
            vocab[word] = index

        matrix.setflags(write=False)
        norms = np.linalg.norm(matrix, axis=1)
        norms.setflags(write=False)
        self._words = tuple(words)
        self._vocab = MappingProxyType(vocab)
        self._vectors = matrix
        self._norms = norms
        self._nonzero = norms > 0
        self._unit: np.ndarray | None = None
        if normalized:
            safe = np.where(self._nonzero, norms, 1.0)
            unit = matrix / safe[:, None]
            unit.setflags(write=False)
            self._unit = unit

    @property
    def dim(self) -> int:
        """Vector dimension."""
        return int(self._vectors.shape[1])

    @property
    def vocab(self) -> Mapping[str, int]:
        """Word -> row index."""
        return self._vocab

    @property
    def words(self) -> tuple[str, ...]:
        """Words in row order."""
        return self._words

    @property
    def vectors(self) -> np.ndarray:
        """The (read-only) embedding matrix."""
        return self._vectors

    @property
    def unit_norms(self) -> np.ndarray:
        """Euclidean norm of each row."""
        return self._norms

    @property
    def normalized(self) -> bool:
        """Whether a unit-row matrix is kept for queries."""
        return self._unit is not None

    @property
    def zero_rows(self) -> list[str]:
        """Words whose vector is all zeros (never returned as neighbors)."""
        return [self._words[i] for i in np.flatnonzero(~self._nonzero)]

    def __len__(self) -> int:
        return len(self._words)

    def __contains__(self, word: object) -> bool:
        return word in self._vocab

    def __repr__(self) -> str:
        return f"<EmbeddingTable: {len(self)} words x {self.dim} dims>"

    def lookup(self, word: str) -> np.ndarray | None:
        """Vector of ``word`` (exact, case-sensitive match) or None."""
        index = self._vocab.get(word)
        return None if index is None else self._vectors[index]

    def similarities(self, word: str) -> np.ndarray:
        """
        Cosine similarity of ``word`` against every row.

        Zero-norm rows get ``-inf``.

        Raises:
            ValidationError: If the word is out of vocabulary or zero-norm.
        """
        index = self._vocab.get(word)
        if index is None:
            raise ValidationError(
                f"Query word {word!r} is not in the vocabulary",
                parameter="word",
                value=word,
                expected="in-vocabulary word",
            )
        if not self._nonzero[index]:
            raise ValidationError(
                f"Query word {word!r} has a zero vector",
                parameter="word",
                value=word,
                expected="word with non-zero vector",
            )
        if self._unit is not None:
            sims = self._unit @ self._unit[index]
        else:
            query = self._vectors[index]
            safe = np.where(self._nonzero, self._norms, 1.0)
            sims = (self._vectors @ query) / (safe * self._norms[index])
        return np.where(self._nonzero, sims, -np.inf)

    def nearest_neighbors(
        self, word: str, k: int, min_similarity: float = -1.0
    ) -> list[Neighbor]:
        """See :func:`nearest_neighbors`."""
        validate_positive(k, "k")
        sims = self.similarities(word)
        sims[self._vocab[word]] = -np.inf
        candidates = np.flatnonzero(np.isfinite(sims) & (sims >= min_similarity))
        if candidates.size == 0:
            return []
        cand_sims = sims[candidates]
        if candidates.size > k:
            # keep everything tied with the k-th best so tie-breaking stays exact
            kth = np.partition(cand_sims, cand_sims.size - k)[cand_sims.size - k]
            keep = cand_sims >= kth
            candidates, cand_sims = candidates[keep], cand_sims[keep]
        order = np.lexsort((candidates, -cand_sims))[:k]
        return [
            Neighbor(word=self._words[candidates[i]], similarity=float(cand_sims[i]))
            for i in order
        ]


def lookup(t: EmbeddingTable, word: str) -> np.ndarray | None:
    """
    Vector for ``word`` or None when it is out of vocabulary.

    Matching is exact and case-sensitive; tables are queried with lowercased
    pipeline output.
    """
    return t.lookup(word)


def cosine_similarity(u: np.ndarray | Sequence[float], v: np.ndarray | Sequence[float]) -> float:
    """
    Cosine of the angle between two vectors.

    Raises:
        DimensionMismatchError: If the vectors differ in length.
        ValidationError: If either vector has zero norm.

    Example:
        >>> round(cosine_similarity([1, 1], [1, 0]), 8)
        0.70710678
    """
    a = np.asarray(u, dtype=np.float64)
    b = np.asarray(v, dtype=np.float64)
    if a.shape != b.shape:
        raise DimensionMismatchError(
            "Vectors must share a dimension", expected=a.size, actual=b.size
        )
    norm_a = float(np.linalg.norm(a))
    norm_b = float(np.linalg.norm(b))
    if norm_a == 0.0 or norm_b == 0.0:
        raise ValidationError(
            "Cosine similarity is undefined for a zero vector",
            parameter="u" if norm_a == 0.0 else "v",
            value=0.0,
            expected="non-zero norm",
        )
    return float(np.dot(a, b) / (norm_a * norm_b))


def nearest_neighbors(
    t: EmbeddingTable,
    word: str,
    k: int,
    min_similarity: float = -1.0,
) -> list[Neighbor]:
    """
    The ``k`` most cosine-similar vocabulary words to ``word``.

    The query word and zero-norm rows are never returned; entries below
    ``min_similarity`` are dropped. Results are sorted by similarity
    descending, ties broken by vocabulary (row) order.

    Raises:
        ValidationError: If ``word`` is out of vocabulary or ``k < 1``.
    """
    return t.nearest_neighbors(word, k, min_similarity)


def _parse_lines(lines: list[str], workers: int, source: str) -> GloveChunk:
    first = next((i for i, line in enumerate(lines) if line.strip()), None)
    if first is None:
        raise ParseError("Embedding file is empty", raw_output="", source=source)
    dim = len(lines[first].rstrip().split(" ")) - 1
    if dim < 1:
        raise ParseError(
            "Embedding line has no vector components",
            raw_output=lines[first],
            line_number=first + 1,
            source=source,
        )

    starts = range(0, len(lines), _CHUNK_LINES)

    def parse_chunk(start: int) -> GloveChunk:
        parser = GloveParser(dim=dim, first_line=start + 1, source=source)
        return parser.parse("\n".join(lines[start : start + _CHUNK_LINES]))

    if workers > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(parse_chunk, starts))
    else:
        chunks = [parse_chunk(start) for start in starts]

    words = [w for chunk in chunks for w in chunk.words]
    line_numbers = [n for chunk in chunks for n in chunk.line_numbers]
    vectors = np.vstack([chunk.vectors for chunk in chunks])
    return GloveChunk(words=words, vectors=vectors, line_numbers=line_numbers)


def write_cache(t: EmbeddingTable, path: str | Path, source_checksum: str) -> Path:
    """
    Write the binary cache of a table.

    Layout: 8 magic bytes, uint32 dim, uint32 count, 32-byte SHA-256 of the
    source file, then per word a uint32 byte length plus UTF-8 bytes, then the
    row-major matrix as little-endian float32. All integers little-endian.
    """
    header = _HEADER.pack(CACHE_MAGIC, t.dim, len(t), bytes.fromhex(source_checksum))
    vocab_block = b"".join(
        _WORD_LEN.pack(len(encoded)) + encoded
        for encoded in (word.encode("utf-8") for word in t.words)
    )
    matrix = np.ascontiguousarray(t.vectors, dtype="<f4").tobytes()
    return atomic_write_bytes(path, header + vocab_block + matrix)


def read_cache(
    path: str | Path, source_checksum: str | None = None, normalized: bool = False
) -> EmbeddingTable | None:
    """
    Read a binary cache written by :func:`write_cache`.

    Returns:
        The table, or None when the file is missing, corrupt, or was built
        from a source whose checksum differs from ``source_checksum``.
    """
    cache_path = Path(path)
    if not cache_path.is_file():
        return None
    data = cache_path.read_bytes()
    if len(data) < _HEADER.size:
        return None
    magic, dim, count, digest = _HEADER.unpack_from(data, 0)
    if magic != CACHE_MAGIC:
        logger.warning("Ignoring %s: not an embedding cache", cache_path)
        return None
    if source_checksum is not None and digest != bytes.fromhex(source_checksum):
        logger.info("Embedding cache %s is stale; rebuilding", cache_path)
        return None
    offset = _HEADER.size
    words = []
    try:
        for _ in range(count):
            (length,) = _WORD_LEN.unpack_from(data, offset)
            offset += _WORD_LEN.size
            words.append(data[offset : offset + length].decode("utf-8"))
            offset += length
        matrix = np.frombuffer(data, dtype="<f4", count=count * dim, offset=offset)
    except (struct.error, UnicodeDecodeError, ValueError):
        logger.warning("Ignoring corrupt embedding cache %s", cache_path)
        return None
    return EmbeddingTable(
        words, matrix.reshape(count, dim).astype(np.float64), normalized=normalized
    )


def load_embeddings(
    path: str | Path,
    cache_dir: str | Path | None = None,
    normalized: bool = False,
    workers: int = 1,
) -> EmbeddingTable:
    """
    Load a GloVe text file (``word v1 ... vd`` per line, no header).

    The dimension comes from the first line. Duplicate words keep their first
    occurrence; zero vectors are kept but flagged, both with a warning.

    Args:
        path: GloVe text file.
        cache_dir: If given, a binary cache named after the source is read
            from / written to this directory. Cached tables hold float32
            values, and a freshly built table is rounded the same way so
            cached and uncached loads agree exactly.
        normalized: Keep a unit-row matrix for faster queries.
        workers: Threads for parsing line chunks; output order is unchanged.

    Raises:
        InputFileNotFoundError: If the file does not exist.
        ParseError: Empty file, inconsistent dimension or unparsable real;
            the error names the line.
    """
    source = validate_file_exists(path)
    checksum: str | None = None
    cache_path: Path | None = None
    if cache_dir is not None:
        checksum = sha256_file(source)
        cache_path = Path(cache_dir) / f"{source.name}.saemb"
        cached = read_cache(cache_path, checksum, normalized=normalized)
        if cached is not None:
            logger.info("Loaded %d vectors from cache %s", len(cached), cache_path)
            return cached

    try:
        lines = split_lines(source.read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(
            f"Cannot read embedding file: {exc}", raw_output="", source=str(source)
        ) from exc
    chunk = _parse_lines(lines, workers, str(source))

    first_row: dict[str, int] = {}
    duplicates = 0
    for row, word in enumerate(chunk.words):
        if word in first_row:
            duplicates += 1
            logger.debug(
                "%s line %d: duplicate word %r ignored",
                source,
                chunk.line_numbers[row],
                word,
            )
            continue
        first_row[word] = row
    if duplicates:
        logger.warning(
            "%s: %d duplicate word(s) ignored, first occurrence kept", source, duplicates
        )
    rows = list(first_row.values())
    vectors = chunk.vectors[rows]
    if cache_path is not None:
        vectors = vectors.astype("<f4").astype(np.float64)

    table = EmbeddingTable(list(first_row), vectors, normalized=normalized)
    zero = table.zero_rows
    if zero:
        logger.warning(
            "%s: %d zero vector(s) (e.g. %r) excluded from neighbor search",
            source,
            len(zero),
            zero[0],
        )
    if cache_path is not None and checksum is not None:
        write_cache(table, cache_path, checksum)
    logger.info("Loaded %d vectors of dim %d from %s", len(table), table.dim, source)
    return table
