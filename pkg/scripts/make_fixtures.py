"""Generate the bundled snippet fixtures and the fixture-provider corpus.

Single source of truth for all fixture XML files. The Islam corpus is
engineered so that, across documents, the only repeated surface tokens are
the four intended cluster labels while many word families share roots; the
script asserts that accounting before writing anything.

Run from the repo root:  python scripts/make_fixtures.py
"""
from __future__ import annotations

import json
import sys
from collections import Counter, defaultdict
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(REPO / "src"))

from stcb.arabic import clean_text, load_stop_words
from stcb.providers import query_file_name
from stcb.roots import RootExtractor
from stcb.snippets import Snippet, serialize_snippet_jsonl, serialize_snippet_xml

FIXTURES = REPO / "fixtures"
CORPUS = REPO / "src" / "stcb" / "data" / "corpus"


def S(i, url, title, body):
    return Snippet(id=i, url=url, title=title, body=body)


# --- Figure-7 education corpus (verbatim from the worked example) -----------

EDUCATION = [
    S(
        0,
        "http://ar.wikipedia.org/wiki/%D8%AA%D8%B9%D9%84%D9%8A%D9%85",
        "التعليم والتربية - ويكيبيديا، الموسوعة الحرة",
        "...التعليم والتربية هو بناء الفرد ومحو الأمية في المجتمع، وهو المحرك "
        "الأساسي في تطور الحضارات ومحور قياس تطور ونماء المجتمعات فقيم تلك "
        "المجتمعات طابع حسب نسبة...",
    ),
    S(
        1,
        "http://www.mohe.gov.sa/",
        "وزارة التعليم العالي",
        "...المملكة العربية السعودية - يحتل الموقع كل ما يحتاجه المتصفح من "
        "معلومات خاصة بالتعليم العالي بالمملكة",
    ),
]

# --- three-document worked examples ------------------------------------------

CATS_EN = [
    S(0, "http://example.org/cats/0", "", "cat ate cheese"),
    S(1, "http://example.org/cats/1", "", "mouse ate cheese too"),
    S(2, "http://example.org/cats/2", "", "cat ate mouse too"),
]

CATS_AR = [
    S(0, "http://example.org/ar-cats/0", "", "القط ياكل الجبن"),
    S(1, "http://example.org/ar-cats/1", "", "الفار ياكل الجبن ايضا"),
    S(2, "http://example.org/ar-cats/2", "", "القط ياكل الفار ايضا"),
]

# --- Islam corpus: 19 snippets with controlled surface/root repetition ------

ISLAM = [
    S(0, "http://example.org/islam/0", "الموسوعة الإسلامية",
      "تاريخ العلماء المشهورين عبر العصور الذهبية القديمة"),
    S(1, "http://example.org/islam/1", "بوابة الإسلام",
      "أخبار يومية عاجلة حصرية عن تعليم القرآن مع مواقع مفيدة"),
    S(2, "http://example.org/islam/2", "الثقافة الإسلامية",
      "تقديم شروح قيمة حول الكتب العتيقة والمخطوطات"),
    S(3, "http://example.org/islam/3", "دراسة الحضارة الإسلامية",
      "مواقع تعرض نصوصا نادرة بالصور"),
    S(4, "http://example.org/islam/4", "كلية الشريعة والعلوم الإسلامية",
      "برامج أكاديمية متنوعة مميزة"),
    S(5, "http://example.org/islam/5", "رابطة المعلمين",
      "الموقع الرسمي للشؤون الإسلامية والفتاوى"),
    S(6, "http://example.org/islam/6", "منشورات حديثة",
      "مواقع مختارة بعناية للفتوى الدينية الإسلامية"),
    S(7, "http://example.org/islam/7", "أبحاث معمقة",
      "مجلة التراث والعلوم الإسلامية المحكمة"),
    S(8, "http://example.org/islam/8", "المدارس الإسلامية",
      "مشاركة الطلاب في المسابقات السنوية"),
    S(9, "http://example.org/islam/9", "مكتبة رقمية",
      "المسلمون عبر القارات يتبادلون المعرفة موقعا جديدا"),
    S(10, "http://example.org/islam/10", "الباحثون المعاصرون",
      "الحكومة تدعم المسلمين بمنح سخية"),
    S(11, "http://example.org/islam/11", "أعمال خيرية",
      "جمعيات الإغاثة الإسلامية تساعد المحتاجين"),
    S(12, "http://example.org/islam/12", "الأخبار الإسلامية",
      "مواقع المراجع المعتمدة بدقة عالية"),
    S(13, "http://example.org/islam/13", "المراجع التعليمية",
      "قوائم شاملة للمصادر المتقدمة"),
    S(14, "http://example.org/islam/14", "النشر المتخصص",
      "سلاسل والعلوم الإسلامية للناشئة"),
    S(15, "http://example.org/islam/15", "الكاتب المبدع",
      "دروس مباشرة لتأهيل مسلم مثقف"),
    S(16, "http://example.org/islam/16", "كتابات بارزة",
      "مراجعة المنظمة الدولية لمحتوى إسلامي هادف"),
    S(17, "http://example.org/islam/17", "الإسلامي الأصيل",
      "يشارك الخطباء بتفصيل الأحكام ثم ينشر التوضيحات"),
    S(18, "http://example.org/islam/18", "عملية التطوير",
      "تنظيم ورش للمسلمين في عدة مناطق"),
]

# Cross-document surface repeats the Islam corpus is allowed to contain.
ISLAM_SURFACE_REPEATS = {"الإسلامية", "مواقع", "المراجع", "والعلوم"}

# Root families that must recur across documents (>= 2 docs each).
ISLAM_ROOT_FAMILIES = {
    "سلم", "علم", "كتب", "درس", "خبر", "قدم", "رجع", "وقع", "حكم",
    "عمل", "نشر", "بحث", "نظم", "شرك",
}

# --- cars corpus: Table-1 style query (30 snippets) -------------------------

CARS_TAILS = [
    "تغطية شاملة لمعارض دبي",                      # 0..7 news
    "تقارير المحركات الجديدة",
    "مقابلات مصورة مستمرة",
    "تحليلات الأسواق الخليجية",
    "ملفات الصيانة الدورية",
    "مواعيد الطرح الرسمية",
    "تجارب القيادة الواقعية",
    "لقطات التمويه الأولى",
    "تحدي السرعة القصوى",                           # 8..12 games
    "مغامرات الطرق الوعرة",
    "التفحيط الحر المجاني",
    "بطولات الانترنت الجماعية",
    "محاكاة الشاحنات العملاقة",
    "جوائز الموسم الذهبي",                          # 13..16 racing
    "حلبات عالمية مشهورة",
    "فرق الصدارة المتنافسة",
    "نتائج الجولات الاخيرة",
]

CARS = (
    [
        S(i, f"http://example.org/cars/{i}", "",
          "اخبار السيارات " + CARS_TAILS[i])
        for i in range(8)
    ]
    + [
        S(i, f"http://example.org/cars/{i}", "",
          "العاب سيارات " + CARS_TAILS[i - 8 + 8])
        for i in range(8, 13)
    ]
    + [
        S(i, f"http://example.org/cars/{i}", "",
          "سباقات السيارات " + CARS_TAILS[i - 13 + 13])
        for i in range(13, 17)
    ]
    + [
        S(17, "http://example.org/cars/17", "", "قطع الغيار الاصلية بضمان طويل"),
        S(18, "http://example.org/cars/18", "", "قطع الغيار المستعملة بحالة ممتازة"),
        S(19, "http://example.org/cars/19", "", "المركبات الكهربائية توفر الوقود"),
        S(20, "http://example.org/cars/20", "", "الشواحن الكهربائية المنزلية السريعة"),
        S(21, "http://example.org/cars/21", "", "دليل الزيوت المناسبة لكل محرك"),
        S(22, "http://example.org/cars/22", "", "نصائح الشتاء للاطارات الثلجية"),
        S(23, "http://example.org/cars/23", "", "شرح انظمة الامان الحديثة"),
        S(24, "http://example.org/cars/24", "", "مقارنة الدفع الرباعي والامامي"),
        S(25, "http://example.org/cars/25", "", "اسرار العناية بالطلاء الخارجي"),
        S(26, "http://example.org/cars/26", "", "تركيب كاميرات الرجوع الخلفية"),
        S(27, "http://example.org/cars/27", "", "حساب استهلاك البنزين الشهري"),
        S(28, "http://example.org/cars/28", "", "خطوات فحص ناقل الحركة"),
        S(29, "http://example.org/cars/29", "", "تامين المركبة ضد الحوادث"),
    ]
)

# --- tourism corpus: consolidation demo (same-root labels merge) ------------

TOURISM = [
    S(0, "http://example.org/tour/0", "", "السياحة وجهات ساحرة للعائلات"),
    S(1, "http://example.org/tour/1", "", "السياحة برامج اقتصادية مدروسة"),
    S(2, "http://example.org/tour/2", "", "السياحة تجارب فريدة للمغامرين"),
    S(3, "http://example.org/tour/3", "", "السياحة عروض الصيف المخفضة"),
    S(4, "http://example.org/tour/4", "", "المعالم السياحية الاثرية تجذب الزوار"),
    S(5, "http://example.org/tour/5", "", "المنتجعات السياحية الشاطئية تستقبل الوفود"),
]

QUERIES = {
    "التعليم": EDUCATION,
    "الإسلام": ISLAM,
    "السيارات": CARS,
    "السياحة": TOURISM,
    "cats": CATS_EN,
}

FILES = {
    "education.xml": EDUCATION,
    "cats.xml": CATS_EN,
    "arabic_cats.xml": CATS_AR,
    "islam.xml": ISLAM,
    "cars.xml": CARS,
    "tourism.xml": TOURISM,
}


def validate_islam():
    stop_words = load_stop_words()
    extractor = RootExtractor()
    surface_docs = defaultdict(set)
    root_docs = defaultdict(set)
    for snippet in ISLAM:
        text = f"{snippet.title} {snippet.body}"
        for token in clean_text(text, stop_words):
            surface_docs[token.surface].add(snippet.id)
            root_docs[extractor.root(token.surface)].add(snippet.id)

    repeated_surfaces = {w for w, docs in surface_docs.items() if len(docs) > 1}
    if repeated_surfaces != ISLAM_SURFACE_REPEATS:
        raise SystemExit(
            "islam corpus: unexpected cross-document surface repeats:\n"
            f"  extra:   {sorted(repeated_surfaces - ISLAM_SURFACE_REPEATS)}\n"
            f"  missing: {sorted(ISLAM_SURFACE_REPEATS - repeated_surfaces)}"
        )
    repeated_roots = {r for r, docs in root_docs.items() if len(docs) > 1}
    if repeated_roots != ISLAM_ROOT_FAMILIES:
        raise SystemExit(
            "islam corpus: unexpected shared root families:\n"
            f"  extra:   {sorted(repeated_roots - ISLAM_ROOT_FAMILIES)}\n"
            f"  missing: {sorted(ISLAM_ROOT_FAMILIES - repeated_roots)}"
        )
    print(f"islam corpus ok: {len(ISLAM)} docs, "
          f"{len(repeated_surfaces)} repeated surfaces, "
          f"{len(repeated_roots)} shared root families")


def check_unique(snippets, name):
    urls = Counter(s.url for s in snippets)
    dupes = [u for u, n in urls.items() if n > 1]
    if dupes:
        raise SystemExit(f"{name}: duplicate urls {dupes}")


def main():
    validate_islam()
    for name, snippets in FILES.items():
        check_unique(snippets, name)

    FIXTURES.mkdir(exist_ok=True)
    for name, snippets in FILES.items():
        (FIXTURES / name).write_bytes(serialize_snippet_xml(snippets))
    (FIXTURES / "cats.jsonl").write_text(
        serialize_snippet_jsonl(CATS_EN), encoding="utf-8"
    )

    CORPUS.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for query, snippets in QUERIES.items():
        file_name = query_file_name(query)
        (CORPUS / file_name).write_bytes(serialize_snippet_xml(snippets))
        manifest[query] = file_name
    (CORPUS / "manifest.json").write_text(
        json.dumps(manifest, ensure_ascii=False, indent=2, sort_keys=True),
        encoding="utf-8",
    )
    print(f"wrote {len(FILES) + 1} fixture files and a {len(manifest)}-query corpus")


if __name__ == "__main__":
    main()
