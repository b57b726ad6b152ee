"""Base clusters from tree nodes, top-k selection, binary overlap similarity
and connected-component merging into final clusters."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .suffixtree import GeneralizedSuffixTree


@dataclass(frozen=True)
class StcConfig:
    """Scoring/merging knobs. Defaults reproduce the published behavior where
    it is stated (overlap threshold 0.6); the single-word weight defaults to
    0.5 so one-word labels can survive, with 0 selectable for the literal
    zero-weight rule."""

    alpha_sim: float = 0.6
    k_top: int = 100
    min_docs: int = 2
    phrase_cap_weight: float = 6.0
    single_word_weight: float = 0.5
    max_phrase_words: int = 20

    def __post_init__(self) -> None:
        if not 0 < self.alpha_sim <= 1:
            raise ValueError(f"alpha_sim must be in (0, 1], got {self.alpha_sim}")
        if self.k_top < 1:
            raise ValueError(f"k_top must be positive, got {self.k_top}")
        if self.min_docs < 1:
            raise ValueError(f"min_docs must be >= 1, got {self.min_docs}")
        if self.single_word_weight < 0:
            raise ValueError("single_word_weight must be >= 0")


@dataclass(frozen=True)
class BaseCluster:
    """A tree internal node read as (shared phrase, documents containing it),
    scored by size times phrase weight."""

    phrase: tuple[str, ...]
    docs: frozenset[int]
    score: float

    def sorted_docs(self) -> list[int]:
        return sorted(self.docs)


@dataclass(frozen=True)
class ClusterGraph:
    nodes: tuple[BaseCluster, ...]
    edges: frozenset[tuple[int, int]]


@dataclass(frozen=True)
class FinalCluster:
    """A connected component of base clusters: union of their documents,
    labels ordered best-first."""

    labels: tuple[tuple[str, ...], ...]
    members: frozenset[int]
    score: float

    @property
    def top_label(self) -> tuple[str, ...]:
        return self.labels[0]

    def sorted_members(self) -> list[int]:
        return sorted(self.members)


def phrase_weight(length: int, config: StcConfig) -> float:
    """Piecewise phrase-length weight: configurable at 1 word, the length
    itself from 2 to 6 words, capped above 6."""
    if length < 1:
        raise ValueError(f"phrase length must be >= 1, got {length}")
    if length == 1:
        return config.single_word_weight
    if length <= 6:
        return float(length)
    return config.phrase_cap_weight


def score(doc_count: int, phrase_length: int, config: StcConfig) -> float:
    return doc_count * phrase_weight(phrase_length, config)


def extract_base_clusters(
    tree: GeneralizedSuffixTree, config: StcConfig
) -> list[BaseCluster]:
    """One base cluster per internal node covering at least ``min_docs``
    documents, ordered by score descending then phrase lexicographic."""
    clusters = []
    for node in tree.internal_nodes():
        if len(node.doc_ids) < config.min_docs:
            continue
        phrase = tuple(tree.node_phrase(node)[: config.max_phrase_words])
        if not phrase:
            continue
        clusters.append(
            BaseCluster(
                phrase=phrase,
                docs=frozenset(node.doc_ids),
                score=score(len(node.doc_ids), len(phrase), config),
            )
        )
    clusters.sort(key=lambda c: (-c.score, c.phrase))
    return clusters


def _selection_key(cluster: BaseCluster):
    # highest score first; ties: longer phrase, then lexicographic
    return (-cluster.score, -len(cluster.phrase), cluster.phrase)


def select_top_k(base_clusters: list[BaseCluster], config: StcConfig) -> list[BaseCluster]:
    """The k_top highest-scoring clusters; zero-score clusters are dropped."""
    scored = [c for c in base_clusters if c.score > 0]
    scored.sort(key=_selection_key)
    return scored[: config.k_top]


def similarity(b1: BaseCluster, b2: BaseCluster, alpha_sim: float) -> int:
    """Binary overlap similarity: 1 iff the shared documents are at least the
    ``alpha_sim`` fraction of each cluster (inclusive threshold)."""
    if not b1.docs or not b2.docs:
        return 0
    shared = len(b1.docs & b2.docs)
    return int(
        shared / len(b1.docs) >= alpha_sim and shared / len(b2.docs) >= alpha_sim
    )


def build_cluster_graph(selected: list[BaseCluster], config: StcConfig) -> ClusterGraph:
    edges = {
        (i, j)
        for (i, a), (j, b) in combinations(enumerate(selected), 2)
        if similarity(a, b, config.alpha_sim)
    }
    return ClusterGraph(nodes=tuple(selected), edges=frozenset(edges))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def merge_clusters(selected: list[BaseCluster], config: StcConfig) -> list[FinalCluster]:
    """Merge the similarity graph's connected components into final clusters,
    best-scoring first. Results are independent of input order."""
    if not selected:
        return []
    graph = build_cluster_graph(selected, config)
    uf = _UnionFind(len(selected))
    for i, j in graph.edges:
        uf.union(i, j)

    components: dict[int, list[BaseCluster]] = {}
    for index, cluster in enumerate(selected):
        components.setdefault(uf.find(index), []).append(cluster)

    finals = []
    for group in components.values():
        group.sort(key=_selection_key)
        members = frozenset().union(*(c.docs for c in group))
        finals.append(
            FinalCluster(
                labels=tuple(c.phrase for c in group),
                members=members,
                score=max(c.score for c in group),
            )
        )
    finals.sort(key=lambda f: (-f.score, f.labels[0]))
    return finals
