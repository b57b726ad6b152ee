"""Arabic snippet cleaning: stop-word, Latin-word and special-character
removal, producing the token sequences the suffix tree is built from."""
from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .snippets import Snippet

# Harakat, superscript alef, Quranic annotation marks, plus tatweel.
_DIACRITICS = re.compile(r"[ؐ-ًؚ-ٰٟۖ-ۭـ]")
_ALEF_HAMZA = re.compile(r"[آأإ]")  # آ أ إ
_LATIN = re.compile(r"[A-Za-z]")
# Arabic letters incl. presentation range used in plain web text.
_ARABIC_RUN = re.compile(r"[ء-غف-يٱ-ۓ]+")
_ANY_WORD_RUN = re.compile(r"[A-Za-z]+|[ء-غف-يٱ-ۓ]+")


def strip_diacritics(text: str) -> str:
    """Remove vowel signs, Quranic marks and tatweel."""
    return _DIACRITICS.sub("", text)


def fold_alef_hamza(text: str) -> str:
    """Fold hamza-seated alef variants onto bare alef (off by default)."""
    return _ALEF_HAMZA.sub("ا", text)


def load_stop_words(path: str | Path | None = None) -> frozenset[str]:
    """Load the stop-word list (bundled default), one entry per line.

    Entries are stored diacritic-stripped so lookup is exact after
    normalization; blank lines and '#' comments are skipped.
    """
    if path is None:
        text = resources.files("stcb.data").joinpath("stopwords_ar.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    entries = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            entries.add(strip_diacritics(line))
    return frozenset(entries)


@dataclass(frozen=True)
class Token:
    """A cleaned word together with its index in the cleaned document."""

    surface: str
    position: int


@dataclass(frozen=True)
class TokenSequence:
    """Cleaned, ordered tokens of one snippet plus its unique end marker.

    ``boundary_index`` marks where the title tokens end and the body tokens
    begin; ``words()`` inserts a per-document sentinel there so no phrase in
    the tree can span the title/body boundary.
    """

    doc_id: int
    tokens: tuple[Token, ...]
    terminator: str
    boundary_index: int | None = None

    def words(self) -> list[str]:
        out = [t.surface for t in self.tokens]
        if self.boundary_index is not None:
            out.insert(self.boundary_index, boundary_word(self.doc_id))
        return out

    @property
    def is_empty(self) -> bool:
        return not self.tokens


def terminator_word(doc_id: int) -> str:
    return f"${doc_id}"


def boundary_word(doc_id: int) -> str:
    return f"#{doc_id}"


def is_sentinel_word(word: str) -> bool:
    return word.startswith(("$", "#"))


def clean_text(
    raw: str,
    stop_words: frozenset[str],
    *,
    normalize_hamza: bool = False,
    remove_latin: bool = True,
) -> list[Token]:
    """Tokenize ``raw`` keeping only content words.

    Whitespace chunks containing Latin letters are dropped whole (when
    ``remove_latin``); what remains is split on special characters
    ($, #, /, -, digits, punctuation), diacritics and tatweel are stripped,
    and stop words are removed. Total: never raises.
    """
    runs = _ARABIC_RUN if remove_latin else _ANY_WORD_RUN
    tokens: list[Token] = []
    for chunk in raw.split():
        if remove_latin and _LATIN.search(chunk):
            continue
        for piece in runs.findall(chunk):
            piece = strip_diacritics(piece)
            if normalize_hamza:
                piece = fold_alef_hamza(piece)
            if not piece or piece in stop_words:
                continue
            tokens.append(Token(piece, len(tokens)))
    return tokens


def snippet_to_sequence(
    snippet: Snippet,
    stop_words: frozenset[str],
    *,
    normalize_hamza: bool = False,
    remove_latin: bool = True,
) -> TokenSequence:
    """Clean one snippet into a TokenSequence, title tokens first."""
    flags = {"normalize_hamza": normalize_hamza, "remove_latin": remove_latin}
    title = clean_text(snippet.title, stop_words, **flags)
    body = clean_text(snippet.body, stop_words, **flags)
    merged = tuple(
        Token(t.surface, i) for i, t in enumerate(title + body)
    )
    boundary = len(title) if title and body else None
    return TokenSequence(
        doc_id=snippet.id,
        tokens=merged,
        terminator=terminator_word(snippet.id),
        boundary_index=boundary,
    )


def words_from_strings(doc_id: int, words: list[str]) -> TokenSequence:
    """Build a TokenSequence directly from already-clean words (fixtures,
    tests, worked examples)."""
    return TokenSequence(
        doc_id=doc_id,
        tokens=tuple(Token(w, i) for i, w in enumerate(words)),
        terminator=terminator_word(doc_id),
    )
