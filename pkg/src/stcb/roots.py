"""Khoja-style Arabic root extraction for post-clustering label consolidation.

Pattern-plus-lexicon extraction with an affix-strip fallback. Roots are only
used to decide which cluster labels are equivalent; they are never displayed,
so a fallback stem is acceptable whenever no template validates against the
root lexicon.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .arabic import fold_alef_hamza, strip_diacritics

DICTIONARY_PATTERN = "dictionary-pattern"
AFFIX_FALLBACK = "affix-strip-fallback"
UNCHANGED = "unchanged"

# Article/preposition compounds first; the bare conjunctions و and ف are only
# stripped after suffixes because a leading waw is often a root letter.
_PREFIXES = ("وبال", "فبال", "وال", "فال", "بال", "كال", "ولل", "ال", "لل")
_CONJUNCTIONS = ("و", "ف")

_SUFFIXES = (
    "اتها", "اتهم", "هما", "ها", "ان", "ات", "ون", "ين", "ية", "هم", "هن",
    "كم", "كن", "نا", "وا", "ما", "تم", "ة", "ه", "ي", "ك", "ت",
)

# Templates: ف/ع/ل mark root-letter slots, anything else is a literal.
_PATTERNS = (
    "استفعال",
    "استفعل", "مستفعل", "انفعال", "افتعال", "مفاعيل",
    "مفعول", "تفعيل", "افتعل", "انفعل", "تفاعل", "يفاعل", "مفاعل", "فواعل",
    "فعائل", "افعال", "فعلاء", "مفتعل", "منفعل", "متفعل",
    "فاعل", "فعال", "فعول", "فعيل", "افعل", "مفعل", "يفعل", "تفعل",
    "نفعل", "فعلي",
)
_SLOT = frozenset("فعل")
_ALEF_MAQSURA = re.compile("ى")  # ى


@dataclass(frozen=True)
class RootResult:
    input: str
    root: str
    method: str


def load_root_lexicon(path: str | Path | None = None) -> frozenset[str]:
    """Load the trilateral/quadrilateral root lexicon, one root per line."""
    if path is None:
        text = resources.files("stcb.data").joinpath("roots_ar.txt").read_text("utf-8")
    else:
        text = Path(path).read_text("utf-8")
    roots = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            roots.add(line)
    return frozenset(roots)


def _normalize(word: str) -> str:
    # Internal to the stemmer only: the clustering surface forms keep their
    # hamza seats, but roots compare on folded letters.
    word = strip_diacritics(word)
    word = fold_alef_hamza(word)
    return _ALEF_MAQSURA.sub("ي", word)


class RootExtractor:
    """Extracts roots against an immutable lexicon; results are memoized."""

    def __init__(self, lexicon: frozenset[str] | None = None):
        self.lexicon = lexicon if lexicon is not None else load_root_lexicon()
        self._cache: dict[str, RootResult] = {}

    def extract(self, word: str) -> RootResult:
        cached = self._cache.get(word)
        if cached is None:
            cached = self._extract(word)
            self._cache[word] = cached
        return cached

    def root(self, word: str) -> str:
        return self.extract(word).root

    def _extract(self, word: str) -> RootResult:
        base = _normalize(word)
        if len(base) < 3:
            return RootResult(word, base or word, UNCHANGED)
        stem = base
        while True:
            if len(stem) in (3, 4) and stem in self.lexicon:
                return RootResult(word, stem, DICTIONARY_PATTERN)
            matched = self._match_patterns(stem)
            if matched is not None:
                return RootResult(word, matched, DICTIONARY_PATTERN)
            shorter = self._strip_one(stem)
            if shorter == stem:
                break
            stem = shorter
        if stem == base:
            return RootResult(word, base, UNCHANGED)
        return RootResult(word, stem, AFFIX_FALLBACK)

    def _match_patterns(self, stem: str) -> str | None:
        for pattern in _PATTERNS:
            if len(pattern) != len(stem):
                continue
            root = []
            for s_ch, p_ch in zip(stem, pattern):
                if p_ch in _SLOT:
                    root.append(s_ch)
                elif s_ch != p_ch:
                    break
            else:
                candidate = "".join(root)
                if candidate in self.lexicon:
                    return candidate
        return None

    @staticmethod
    def _strip_one(stem: str) -> str:
        for prefix in _PREFIXES:
            if stem.startswith(prefix) and len(stem) - len(prefix) >= 2:
                return stem[len(prefix):]
        for suffix in _SUFFIXES:
            if stem.endswith(suffix) and len(stem) - len(suffix) >= 2:
                return stem[: -len(suffix)]
        for conj in _CONJUNCTIONS:
            if stem.startswith(conj) and len(stem) - 1 >= 2:
                return stem[1:]
        return stem

    def label_signature(self, label: Iterable[str]) -> tuple[str, ...]:
        """Multiset of roots of a label's words, as a sorted tuple."""
        return tuple(sorted(self.root(word) for word in label))

    def same_root_label(self, label_a: Iterable[str], label_b: Iterable[str]) -> bool:
        """True iff the two labels have equal root multisets."""
        return Counter(self.root(w) for w in label_a) == Counter(
            self.root(w) for w in label_b
        )
