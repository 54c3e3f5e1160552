"""
Tweet cleaning transforms.

Three pure, idempotent transforms (:func:`normalize`, :func:`clean`,
:func:`trim`) and an immutable :class:`TextPipeline` that chains them. The
stopword list and contraction table are plain data files shipped in
``sarcasm_augment/data`` and can be swapped through :class:`PipelineConfig`.
"""

from __future__ import annotations

import logging
import re
from functools import lru_cache
from pathlib import Path
from typing import TYPE_CHECKING, Callable

import pandas as pd

from .exceptions import ParseError, ValidationError
from .types.config import PipelineConfig
from .types.corpus import DroppedSample, DropReport, Sample
from .validation import validate_file_exists

if TYPE_CHECKING:
    from .types.corpus import Dataset

logger = logging.getLogger(__name__)

__all__ = [
    "TextPipeline",
    "clean",
    "load_contractions",
    "load_stopwords",
    "normalize",
    "preprocess_dataset",
    "resolve_stopwords",
    "trim",
]

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_STOPWORDS = DATA_DIR / "stopwords.txt"
DEFAULT_CONTRACTIONS = DATA_DIR / "contractions.csv"

_ELONGATION = re.compile(r"([a-z])\1{2,}", re.IGNORECASE)
_APOSTROPHES = str.maketrans({"’": "'", "‘": "'", "ʼ": "'"})
_BRACKETED = re.compile(r"\[[^\[\]]*\]|\([^()]*\)")
_URL = re.compile(
    r"(?:https?://|www\.)\S+|\b(?:[a-z0-9-]+\.)+[a-z]{2,}/\S*", re.IGNORECASE
)
_HASHTAG = re.compile(r"(?<!\w)#\w+")
_MENTION = re.compile(r"(?<!\w)@\w+")
_EMOJI = re.compile(
    "["
    "\U0001f000-\U0001faff"
    "\U00002600-\U000027bf"
    "\U00002b00-\U00002bff"
    "\U0000fe00-\U0000fe0f"
    "\U0000200d"
    "\U000020e3"
    "\U0001f1e6-\U0001f1ff"
    "]+"
)
_NON_ASCII = re.compile(r"[^\x00-\x7f]+")
_PUNCTUATION = re.compile(r"[^\w\s]+")


@lru_cache(maxsize=8)
def _read_stopwords(path: str) -> frozenset[str]:
    words = set()
    for line_number, line in enumerate(
        Path(path).read_text(encoding="utf-8").splitlines(), start=1
    ):
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        if word != word.lower() or len(word.split()) != 1:
            raise ParseError(
                "Stopwords must be lowercase single tokens",
                raw_output=line,
                line_number=line_number,
                source=path,
            )
        words.add(word)
    return frozenset(words)


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """
    Load a one-word-per-line stopword file (``#`` starts a comment line).

    Args:
        path: File to read; the shipped list when None.

    Raises:
        InputFileNotFoundError: If the file does not exist.
        ParseError: If an entry is not a lowercase single token.
    """
    file_path = validate_file_exists(path or DEFAULT_STOPWORDS)
    return _read_stopwords(str(file_path))


@lru_cache(maxsize=8)
def _read_contractions(path: str) -> tuple[tuple[str, str], ...]:
    frame = pd.read_csv(path, dtype=str, keep_default_na=False)
    if list(frame.columns[:2]) != ["contraction", "expansion"]:
        raise ParseError(
            "Contraction table needs a 'contraction,expansion' header",
            raw_output=",".join(frame.columns),
            line_number=1,
            source=path,
        )
    pairs = {
        c.strip().lower().translate(_APOSTROPHES): e.strip().lower()
        for c, e in zip(frame["contraction"], frame["expansion"])
        if c.strip()
    }
    return tuple(sorted(pairs.items()))


def load_contractions(path: str | Path | None = None) -> dict[str, str]:
    """
    Load the two-column contraction table (``contraction,expansion``).

    Args:
        path: CSV file; the shipped table when None.
    """
    file_path = validate_file_exists(path or DEFAULT_CONTRACTIONS)
    return dict(_read_contractions(str(file_path)))


@lru_cache(maxsize=8)
def _contraction_pattern(path: str) -> tuple[re.Pattern[str], dict[str, str]]:
    table = dict(_read_contractions(path))
    # longest first so "could've" wins over shorter overlapping keys
    keys = sorted(table, key=len, reverse=True)
    alternation = "|".join(re.escape(k) for k in keys) or r"(?!x)x"
    pattern = re.compile(rf"(?<![\w'])(?:{alternation})(?![\w'])", re.IGNORECASE)
    return pattern, table


def normalize(text: str, contractions_path: str | Path | None = None) -> str:
    """
    Lexically normalize a tweet.

    Collapses letters repeated three or more times to two, expands the
    contractions listed in the contraction table, and collapses whitespace.

    Example:
        >>> normalize("soooooo    cool")
        'soo cool'
        >>> normalize("can't stop")
        'cannot stop'
    """
    if not text:
        return ""
    path = str(validate_file_exists(contractions_path or DEFAULT_CONTRACTIONS))
    pattern, table = _contraction_pattern(path)
    text = _ELONGATION.sub(r"\1\1", text.translate(_APOSTROPHES))
    text = pattern.sub(lambda m: table[m.group(0).lower()], text)
    return " ".join(text.split())


def resolve_stopwords(cfg: PipelineConfig) -> frozenset[str]:
    """Stopwords in effect for ``cfg``; the explicit list wins over the file."""
    if cfg.stopword_list is not None:
        return cfg.stopword_list
    return load_stopwords(cfg.stopwords_path)


def clean(text: str, cfg: PipelineConfig | None = None) -> str:
    """
    Strip the noise a tweet carries.

    Steps, in order and each behind its config flag: lowercase; remove
    ``[...]`` and ``(...)`` spans; remove URLs; remove hashtag and mention
    tokens; remove emoji and non-ASCII characters; replace punctuation with
    spaces; drop stopword tokens; collapse whitespace. Removed spans become
    spaces so neighbouring words are never glued together.

    Example:
        >>> clean("Check THIS out!! https://t.co/xyz #sarcasm \U0001f602")
        'check'
        >>> clean("(aside) main point")
        'main point'
    """
    cfg = cfg or PipelineConfig()
    if cfg.lowercase:
        text = text.lower()
    if cfg.strip_bracketed:
        previous = None
        while previous != text:
            previous = text
            text = _BRACKETED.sub(" ", text)
    if cfg.strip_urls:
        text = _URL.sub(" ", text)
    if cfg.strip_hashtags:
        text = _HASHTAG.sub(" ", text)
    if cfg.strip_mentions:
        text = _MENTION.sub(" ", text)
    if cfg.strip_emoji:
        text = _EMOJI.sub(" ", text)
    if cfg.strip_non_ascii:
        text = _NON_ASCII.sub(" ", text)
    if cfg.strip_punctuation:
        text = _PUNCTUATION.sub(" ", text)
    tokens = text.split()
    if cfg.remove_stopwords:
        stopwords = resolve_stopwords(cfg)
        tokens = [t for t in tokens if t not in stopwords]
    return " ".join(tokens)


def trim(text: str, max_len_tokens: int, unit: str = "tokens") -> str:
    """
    Cut a text to at most ``max_len_tokens`` whitespace tokens.

    With ``unit="chars"`` the limit counts characters instead. Texts already
    within the limit are returned unchanged.

    Raises:
        ValidationError: If the limit is below 1 or the unit is unknown.
    """
    if max_len_tokens < 1:
        raise ValidationError(
            f"max_len_tokens must be >= 1, got {max_len_tokens}",
            parameter="max_len_tokens",
            value=max_len_tokens,
            expected="int >= 1",
        )
    if unit == "chars":
        return text if len(text) <= max_len_tokens else text[:max_len_tokens].rstrip()
    if unit != "tokens":
        raise ValidationError(
            f"Unknown length unit {unit!r}",
            parameter="unit",
            value=unit,
            expected="'tokens' or 'chars'",
        )
    tokens = text.split()
    if len(tokens) <= max_len_tokens:
        return text
    return " ".join(tokens[:max_len_tokens])


class TextPipeline:
    """
    Immutable, chainable composition of text transforms.

    Each builder method returns a new pipeline; nothing runs until
    :meth:`apply`.

    Example:
        >>> pipe = TextPipeline().normalize().clean(cfg).trim(100)
        >>> pipe
        <TextPipeline: normalize -> clean -> trim>
        >>> pipe.apply("Sooo   (lol) FUN")
        'soo fun'
    """

    def __init__(self, steps: tuple[tuple[str, Callable[[str], str]], ...] = ()):
        self._steps = steps

    def _add_step(self, name: str, fn: Callable[[str], str]) -> TextPipeline:
        return self.__class__((*self._steps, (name, fn)))

    def normalize(self, contractions_path: str | Path | None = None) -> TextPipeline:
        """Append :func:`normalize`."""
        return self._add_step("normalize", lambda t: normalize(t, contractions_path))

    def clean(self, cfg: PipelineConfig | None = None) -> TextPipeline:
        """Append :func:`clean` with ``cfg``."""
        config = cfg or PipelineConfig()
        return self._add_step("clean", lambda t: clean(t, config))

    def trim(self, max_len_tokens: int, unit: str = "tokens") -> TextPipeline:
        """Append :func:`trim`."""
        return self._add_step("trim", lambda t: trim(t, max_len_tokens, unit))

    @classmethod
    def from_config(cls, cfg: PipelineConfig) -> TextPipeline:
        """The full normalize -> clean -> trim pipeline for ``cfg``."""
        return (
            cls()
            .normalize(cfg.contractions_path)
            .clean(cfg)
            .trim(cfg.max_len_tokens, cfg.length_unit)
        )

    @property
    def step_names(self) -> list[str]:
        """Names of the steps in order."""
        return [name for name, _ in self._steps]

    def apply(self, text: str) -> str:
        """Run every step on ``text``."""
        for _, fn in self._steps:
            text = fn(text)
        return text

    def __call__(self, text: str) -> str:
        return self.apply(text)

    def __len__(self) -> int:
        return len(self._steps)

    def __repr__(self) -> str:
        steps = " -> ".join(self.step_names) or "(empty)"
        return f"<TextPipeline: {steps}>"


def preprocess_dataset(
    d: Dataset, cfg: PipelineConfig | None = None
) -> tuple[Dataset, DropReport]:
    """
    Run normalize -> clean -> trim over every sample.

    Samples whose text ends up empty are dropped and listed in the report
    (augmented children of a dropped sample go with it). Augmentation is not
    part of this step.

    Returns:
        The cleaned dataset and the drop report.
    """
    cfg = cfg or PipelineConfig()
    pipeline = TextPipeline.from_config(cfg)
    kept: list[Sample] = []
    dropped: list[DroppedSample] = []
    removed: set[str] = set()
    for sample in d.samples:
        if sample.parent_id is not None and sample.parent_id in removed:
            dropped.append(DroppedSample(sample.id, d.name, "orphan"))
            removed.add(sample.id)
            continue
        text = pipeline.apply(sample.text)
        if not text:
            dropped.append(DroppedSample(sample.id, d.name, "empty"))
            removed.add(sample.id)
            continue
        kept.append(
            Sample(
                id=sample.id,
                text=text,
                label=sample.label,
                origin=sample.origin,
                parent_id=sample.parent_id,
            )
        )
    if dropped:
        logger.info(
            "Preprocessing %s dropped %d of %d samples", d.name, len(dropped), len(d)
        )
    split_of = {s.id: d.split_of[s.id] for s in kept}
    return (
        d.replace(samples=kept, split_of=split_of),
        DropReport(dataset=d.name, dropped=tuple(dropped)),
    )
