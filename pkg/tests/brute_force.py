"""Brute-force oracles for suffix-tree node enumeration and cluster merging.

Deliberately naive (quadratic/cubic) so they stay independent of the
implementations they check.
"""
from itertools import combinations


def tree_nodes_brute_force(docs):
    """Enumerate (phrase, doc_id frozenset) pairs a compact word-level
    generalized suffix tree must expose as internal nodes.

    `docs` maps doc_id -> list of words (no terminators). A phrase is an
    internal node iff it is a non-empty prefix of >= 2 suffixes whose
    continuations diverge (right-maximal), terminators counted as unique
    per-document words.
    """
    suffixes = []
    for doc_id, words in docs.items():
        full = list(words) + [("$", doc_id)]
        for start in range(len(words)):
            suffixes.append((doc_id, full[start:]))

    nodes = {}
    for (_, s1), (_, s2) in combinations(suffixes, 2):
        common = []
        for a, b in zip(s1, s2):
            if a != b:
                break
            common.append(a)
        if common:
            key = tuple(common)
            if key not in nodes:
                prefixed = [
                    (doc_id, suf) for doc_id, suf in suffixes
                    if tuple(suf[: len(key)]) == key
                ]
                continuations = {
                    tuple(suf[len(key):len(key) + 1]) for _, suf in prefixed
                }
                if len(continuations) >= 2:
                    nodes[key] = frozenset(doc_id for doc_id, _ in prefixed)

    return {
        (tuple(w for w in phrase if not isinstance(w, tuple)), doc_set)
        for phrase, doc_set in nodes.items()
    }


def merge_components_brute_force(doc_sets, alpha):
    """Connected components over binary overlap similarity, by repeated
    transitive closure of the full reachability matrix."""
    n = len(doc_sets)
    reach = [[False] * n for _ in range(n)]
    for i in range(n):
        reach[i][i] = True
    for i, j in combinations(range(n), 2):
        inter = len(doc_sets[i] & doc_sets[j])
        if (
            inter / len(doc_sets[i]) >= alpha
            and inter / len(doc_sets[j]) >= alpha
        ):
            reach[i][j] = reach[j][i] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if reach[i][k] and reach[k][j]:
                    reach[i][j] = True
    components = []
    seen = set()
    for i in range(n):
        if i in seen:
            continue
        comp = frozenset(j for j in range(n) if reach[i][j])
        seen |= comp
        components.append(comp)
    return set(components)
