"""Reference Khoja-style Arabic root stemmer, used only as a test oracle.

Self-contained on purpose: it carries its own (small) root table and affix
lists so it shares no code or data files with the package under test. It was
written first and its outputs for the golden word list are frozen in
tests/data/khoja_golden.json.
"""
import re

_DIACRITICS = re.compile(r"[ؐ-ًؚ-ٰٟۖ-ۭـ]")

# Roots needed to stem the golden vocabulary, bare-alef spelling.
ROOTS = {
    "سلم", "علم", "كتب", "درس", "خبر", "سير", "لعب", "سجد", "حكم",
    "جمع", "عمل", "وزر", "وقع", "درس", "مدن", "قبل", "طلب", "سيح",
    "نظم", "قدم", "رجع", "خدم", "شرك", "نشر", "بحث", "سفر", "حمل",
    "نقل", "كشف", "دعو", "بلغ", "شغل", "صنع", "فتح", "قرا", "ملك",
    "سكن", "عرف", "نصر", "وصل", "خرج", "دخل", "جهد", "ذكر", "شهر",
    "طور", "حدث", "وجد", "هدف", "سوق", "صحف", "حرر",
}

# Bare conjunctions (و ف) are stripped only after suffixes: a leading waw is
# often a root letter (وزارة), while the longer article forms are unambiguous.
PREFIXES = ["وبال", "وال", "فال", "بال", "كال", "ولل", "ال", "لل"]
CONJUNCTIONS = ["و", "ف"]

SUFFIXES = [
    "هما", "ها", "ان", "ات", "ون", "ين", "ية", "هم", "هن", "كم", "كن",
    "نا", "وا", "ما", "تم", "ة", "ه", "ي", "ك", "ت",
]

# Morphological templates: root-letter slots marked with ف ع ل, every other
# position is a literal that must match.
PATTERNS = [
    "استفعال",
    "استفعل", "مستفعل", "انفعال", "افتعال", "مفاعيل",
    "مفعول", "تفعيل", "افتعل", "انفعل", "تفاعل", "مفاعل", "فواعل",
    "فعائل", "افعال", "فعلاء", "مفتعل", "منفعل", "متفعل",
    "فاعل", "فعال", "فعول", "فعيل", "افعل", "مفعل", "يفعل", "تفعل",
    "نفعل", "فعلي",
]

_SLOTS = {"ف", "ع", "ل"}


def _normalize(word):
    word = _DIACRITICS.sub("", word)
    word = re.sub("[أإآ]", "ا", word)
    word = word.replace("ى", "ي")
    return word


def _match_pattern(stem, pattern):
    if len(stem) != len(pattern):
        return None
    root = []
    for s_ch, p_ch in zip(stem, pattern):
        if p_ch in _SLOTS:
            root.append(s_ch)
        elif s_ch != p_ch:
            return None
    candidate = "".join(root)
    return candidate if candidate in ROOTS else None


def _strip_prefix(stem, prefixes):
    for pre in prefixes:
        if stem.startswith(pre) and len(stem) - len(pre) >= 2:
            return stem[len(pre):]
    return stem


def _strip_suffix(stem):
    for suf in SUFFIXES:
        if stem.endswith(suf) and len(stem) - len(suf) >= 2:
            return stem[: -len(suf)]
    return stem


def reference_root(word):
    """Return the oracle's root for one Arabic word."""
    base = _normalize(word)
    if len(base) < 3:
        return base or word
    stem = base
    while True:
        if len(stem) in (3, 4) and stem in ROOTS:
            return stem
        for pattern in PATTERNS:
            candidate = _match_pattern(stem, pattern)
            if candidate:
                return candidate
        nxt = _strip_prefix(stem, PREFIXES)
        if nxt == stem:
            nxt = _strip_suffix(stem)
        if nxt == stem:
            nxt = _strip_prefix(stem, CONJUNCTIONS)
        if nxt == stem:
            return stem
        stem = nxt


# The 50 surface words whose oracle roots are frozen as the golden file.
GOLDEN_WORDS = [
    "المسلمون", "والتعليم", "الإسلامية", "السياحة", "كتب", "مكتبة",
    "الكاتب", "مكتوب", "المدرسة", "مدارس", "يدرسون", "الأخبار", "أخبار",
    "السيارات", "سيارة", "العلوم", "العالم", "معلومات", "تعليمية",
    "والكتاب", "اللاعبون", "الألعاب", "مسجد", "المساجد", "يكتبون",
    "استقبال", "الحكومة", "المكتبات", "معلم", "المعلمين", "الطلاب",
    "طالب", "الجامعة", "الجامعات", "أعمال", "العمال", "والعاملون",
    "الوزارة", "وزير", "الوزراء", "مواقع", "الموقع", "دراسة", "الدراسات",
    "مدينة", "يلعبون", "الملاعب", "المعلومات", "مكاتب", "التعليم",
]


if __name__ == "__main__":
    import json
    import pathlib

    golden = {w: reference_root(w) for w in GOLDEN_WORDS}
    out = pathlib.Path(__file__).parent / "data" / "khoja_golden.json"
    out.write_text(json.dumps(golden, ensure_ascii=False, indent=2), encoding="utf-8")
    for w, r in golden.items():
        print(f"{w} -> {r}")
