"""End-to-end clustering pipeline: fetch/parse, dedup, clean, tree, base
clusters, merge, consolidation, in that order, plus the two-scheme
comparison report.

Every run is deterministic for fixed inputs and config; per-stage wall times
are recorded so the stage ordering is observable.
"""
from __future__ import annotations

import dataclasses
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import consolidate as consolidation
from .arabic import Token, TokenSequence, load_stop_words, snippet_to_sequence
from .clusters import StcConfig, extract_base_clusters, merge_clusters, select_top_k
from .consolidate import ConsolidatedCluster, SignificanceConfig
from .providers import (
    FixtureProvider,
    ProviderRequest,
    SearchProvider,
    SnippetCache,
    fetch,
)
from .roots import RootExtractor, load_root_lexicon
from .snippets import Snippet, dedup_snippets, load_snippet_file
from .suffixtree import build_tree

SCHEME_NEW = "new"
SCHEME_STEM_FIRST = "stem-first"
ENV_CONFIG = "STCB_CONFIG"


class ConfigError(ValueError):
    """Bad pipeline configuration: unknown keys, missing files, bad values."""


class StageError(RuntimeError):
    """A pipeline stage failed; carries the stage name and original error."""

    def __init__(self, stage: str, original: Exception):
        super().__init__(f"stage {stage!r} failed: {original}")
        self.stage = stage
        self.original = original


@dataclass(frozen=True)
class PipelineConfig:
    # scoring / merging
    alpha_sim: float = 0.6
    k_top: int = 100
    min_docs: int = 2
    phrase_cap_weight: float = 6.0
    single_word_weight: float = 0.5
    max_phrase_words: int = 20
    # significance
    min_members: int = 2
    max_clusters: int = 15
    # text processing
    stop_word_path: str | None = None
    root_lexicon_path: str | None = None
    normalize_hamza: bool = False
    remove_latin: bool = True
    # acquisition
    provider_name: str = "fixture"
    max_results: int = 50
    fixture_dir: str | None = None
    cache_dir: str | None = "~/.cache/stcb"
    cache_ttl: float = 24 * 3600
    # pipeline
    scheme: str = SCHEME_NEW

    def __post_init__(self) -> None:
        if self.scheme not in (SCHEME_NEW, SCHEME_STEM_FIRST):
            raise ConfigError(f"scheme must be 'new' or 'stem-first', got {self.scheme!r}")
        for attr in ("stop_word_path", "root_lexicon_path", "fixture_dir"):
            value = getattr(self, attr)
            if value is not None and not Path(value).exists():
                raise ConfigError(f"{attr} does not exist: {value}")

    def stc(self) -> StcConfig:
        return StcConfig(
            alpha_sim=self.alpha_sim,
            k_top=self.k_top,
            min_docs=self.min_docs,
            phrase_cap_weight=self.phrase_cap_weight,
            single_word_weight=self.single_word_weight,
            max_phrase_words=self.max_phrase_words,
        )

    def significance(self) -> SignificanceConfig:
        return SignificanceConfig(
            min_members=self.min_members, max_clusters=self.max_clusters
        )

    def content_hash(self) -> str:
        payload = json.dumps(dataclasses.asdict(self), sort_keys=True, default=str)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:16]

    @classmethod
    def from_mapping(cls, mapping: dict) -> "PipelineConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(mapping) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        try:
            return cls(**mapping)
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ConfigError):
                raise
            raise ConfigError(str(exc)) from exc

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        path = Path(path)
        if not path.exists():
            raise ConfigError(f"config file not found: {path}")
        if sys.version_info >= (3, 11):
            import tomllib
        else:
            import tomli as tomllib
        try:
            mapping = tomllib.loads(path.read_text("utf-8"))
        except tomllib.TOMLDecodeError as exc:
            raise ConfigError(f"bad config file {path}: {exc}") from exc
        return cls.from_mapping(mapping)


def load_config(path: str | Path | None = None) -> PipelineConfig:
    """Config from an explicit path, the STCB_CONFIG env var, or defaults."""
    if path is None:
        path = os.environ.get(ENV_CONFIG)
    return PipelineConfig.from_file(path) if path else PipelineConfig()


@dataclass
class ClusterResult:
    """Everything a browsing surface needs for one query: clusters, the ids
    that fell outside them, the deduplicated snippets, per-stage timings."""

    query: str
    scheme: str
    clusters: list[ConsolidatedCluster]
    unclustered: list[int]
    snippets: list[Snippet]
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self, include_timings: bool = True) -> dict:
        out = {
            "query": self.query,
            "scheme": self.scheme,
            "clusters": [c.to_dict() for c in self.clusters],
            "unclustered": list(self.unclustered),
            "snippets": [s.to_dict() for s in self.snippets],
        }
        if include_timings:
            out["timings"] = dict(self.timings)
        return out

    def to_json(self, include_timings: bool = True) -> str:
        return json.dumps(self.to_dict(include_timings), ensure_ascii=False, indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "ClusterResult":
        return cls(
            query=data["query"],
            scheme=data["scheme"],
            clusters=[
                ConsolidatedCluster(
                    display_label=c["display_label"],
                    root_signature=tuple(c["root_signature"]),
                    members=frozenset(c["members"]),
                    merged_from=tuple(c["merged_from"]),
                    score=c["score"],
                )
                for c in data["clusters"]
            ],
            unclustered=list(data["unclustered"]),
            snippets=[Snippet(**s) for s in data["snippets"]],
            timings=dict(data.get("timings", {})),
        )


@dataclass
class SchemeSide:
    scheme: str
    clusters: list[ConsolidatedCluster]
    cluster_count: int
    mean_label_length: float
    surface_label_fraction: float

    def to_dict(self) -> dict:
        return {
            "scheme": self.scheme,
            "clusters": [c.to_dict() for c in self.clusters],
            "cluster_count": self.cluster_count,
            "mean_label_length": self.mean_label_length,
            "surface_label_fraction": self.surface_label_fraction,
        }


@dataclass
class SchemeReport:
    query: str
    new: SchemeSide
    stem_first: SchemeSide

    def to_dict(self) -> dict:
        return {
            "query": self.query,
            "new": self.new.to_dict(),
            "stem_first": self.stem_first.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)


def label_occurs_verbatim(label: str, sequences: dict[int, list[str]], members) -> bool:
    """True iff the label's words appear contiguously in the cleaned text of
    at least one member document."""
    words = label.split()
    size = len(words)
    for doc_id in members:
        doc_words = sequences.get(doc_id, [])
        for start in range(len(doc_words) - size + 1):
            if doc_words[start:start + size] == words:
                return True
    return False


class Pipeline:
    """Holds the loaded resources (stop list, root lexicon, providers,
    caches) and runs the clustering stages. All shared state is immutable, so
    one Pipeline may serve concurrent requests."""

    def __init__(self, config: PipelineConfig | None = None):
        self.config = config or PipelineConfig()
        self.stop_words = load_stop_words(self.config.stop_word_path)
        self.extractor = RootExtractor(load_root_lexicon(self.config.root_lexicon_path))
        self._providers: dict[str, SearchProvider] | None = None
        cache_dir = self.config.cache_dir
        if cache_dir:
            base = Path(cache_dir).expanduser()
            self.snippet_cache: SnippetCache | None = SnippetCache(
                base / "snippets", self.config.cache_ttl
            )
            self._result_dir: Path | None = base / "results"
        else:
            self.snippet_cache = None
            self._result_dir = None

    # -- providers ---------------------------------------------------------

    @property
    def providers(self) -> dict[str, SearchProvider]:
        if self._providers is None:
            try:
                self._providers = {"fixture": FixtureProvider(self.config.fixture_dir)}
            except Exception as exc:
                raise ConfigError(f"cannot initialize fixture provider: {exc}") from exc
        return self._providers

    def register_provider(self, provider: SearchProvider) -> None:
        self.providers[provider.name] = provider

    # -- stage runner --------------------------------------------------------

    @staticmethod
    def _stage(name: str, timings: dict[str, float], func, *args):
        started = time.perf_counter()
        try:
            result = func(*args)
        except StageError:
            raise
        except Exception as exc:
            raise StageError(name, exc) from exc
        timings[name] = time.perf_counter() - started
        return result

    # -- runs ----------------------------------------------------------------

    def _clean(self, snippets: list[Snippet], remove_latin: bool) -> list[TokenSequence]:
        return [
            snippet_to_sequence(
                s,
                self.stop_words,
                normalize_hamza=self.config.normalize_hamza,
                remove_latin=remove_latin,
            )
            for s in snippets
        ]

    def _stem_sequences(self, sequences: list[TokenSequence]) -> list[TokenSequence]:
        # the rejected scheme: replace every surface token with its root
        # before the tree ever sees it
        return [
            dataclasses.replace(
                seq,
                tokens=tuple(
                    Token(self.extractor.root(t.surface), t.position) for t in seq.tokens
                ),
            )
            for seq in sequences
        ]

    def cluster_snippets(
        self,
        snippets: list[Snippet],
        *,
        scheme: str | None = None,
        remove_latin: bool | None = None,
        query: str = "",
        timings: dict[str, float] | None = None,
    ) -> ClusterResult:
        scheme = scheme or self.config.scheme
        if scheme not in (SCHEME_NEW, SCHEME_STEM_FIRST):
            raise ConfigError(f"unknown scheme {scheme!r}")
        remove_latin = self.config.remove_latin if remove_latin is None else remove_latin
        timings = timings if timings is not None else {}

        deduped, _ = self._stage("dedup", timings, dedup_snippets, snippets)
        sequences = self._stage("clean", timings, self._clean, deduped, remove_latin)
        if scheme == SCHEME_STEM_FIRST:
            sequences = self._stage("root_extraction", timings, self._stem_sequences, sequences)
        tree = self._stage("build_tree", timings, build_tree, sequences)
        stc = self.config.stc()
        base = self._stage("base_clusters", timings, extract_base_clusters, tree, stc)
        selected = self._stage("select_top_k", timings, select_top_k, base, stc)
        finals = self._stage("merge", timings, merge_clusters, selected, stc)
        if scheme == SCHEME_NEW:
            clusters = self._stage(
                "root_consolidation", timings,
                consolidation.consolidate, finals, self.extractor, self.config.significance(),
            )
        else:
            clusters = self._stage(
                "significance", timings,
                consolidation.wrap_unconsolidated, finals, self.config.significance(),
            )

        clustered: set[int] = set()
        for cluster in clusters:
            clustered.update(cluster.members)
        unclustered = sorted(s.id for s in deduped if s.id not in clustered)
        return ClusterResult(
            query=query,
            scheme=scheme,
            clusters=clusters,
            unclustered=unclustered,
            snippets=deduped,
            timings=timings,
        )

    def run_query(
        self,
        query: str,
        *,
        provider_name: str | None = None,
        max_results: int | None = None,
        scheme: str | None = None,
    ) -> ClusterResult:
        if not query.strip():
            raise ValueError("empty query")
        request = ProviderRequest(
            query=query,
            max_results=self.config.max_results if max_results is None else max_results,
            provider_name=provider_name or self.config.provider_name,
        )
        scheme = scheme or self.config.scheme

        cached = self._result_get(request, scheme)
        if cached is not None:
            return cached

        timings: dict[str, float] = {}
        snippets = self._stage(
            "fetch", timings, fetch, request, self.providers, self.snippet_cache
        )
        result = self.cluster_snippets(
            snippets, scheme=scheme, query=query, timings=timings
        )
        self._result_put(request, scheme, result)
        return result

    def run_file(self, path: str | Path, *, scheme: str | None = None) -> ClusterResult:
        timings: dict[str, float] = {}
        snippets = self._stage("parse", timings, load_snippet_file, path)
        return self.cluster_snippets(
            snippets, scheme=scheme, query=str(path), timings=timings
        )

    def run_pipeline(self, query_or_file: str | Path, *, scheme: str | None = None) -> ClusterResult:
        """Convenience dispatch: an existing file path is clustered from disk,
        anything else is treated as a provider query."""
        if isinstance(query_or_file, Path) or Path(str(query_or_file)).exists():
            return self.run_file(query_or_file, scheme=scheme)
        return self.run_query(str(query_or_file), scheme=scheme)

    # -- scheme comparison ----------------------------------------------------

    def compare_schemes(self, snippets: list[Snippet], query: str = "") -> SchemeReport:
        """Run the rejected stem-first pipeline and the new scheme on one
        snippet set and report cluster counts plus label-surface metrics."""
        deduped, _ = dedup_snippets(snippets)
        surface = {
            seq.doc_id: seq.words()
            for seq in self._clean(deduped, self.config.remove_latin)
        }
        sides = {}
        for scheme in (SCHEME_NEW, SCHEME_STEM_FIRST):
            result = self.cluster_snippets(snippets, scheme=scheme, query=query)
            clusters = result.clusters
            labels = [c.display_label for c in clusters]
            verbatim = [
                label_occurs_verbatim(c.display_label, surface, c.members)
                for c in clusters
            ]
            sides[scheme] = SchemeSide(
                scheme=scheme,
                clusters=clusters,
                cluster_count=len(clusters),
                mean_label_length=(
                    sum(len(l.split()) for l in labels) / len(labels) if labels else 0.0
                ),
                surface_label_fraction=(
                    sum(verbatim) / len(verbatim) if verbatim else 0.0
                ),
            )
        return SchemeReport(
            query=query, new=sides[SCHEME_NEW], stem_first=sides[SCHEME_STEM_FIRST]
        )

    # -- result cache -----------------------------------------------------------

    def _result_key(self, request: ProviderRequest, scheme: str) -> str:
        raw = f"{request.cache_key()}\n{scheme}\n{self.config.content_hash()}"
        return hashlib.sha256(raw.encode("utf-8")).hexdigest()

    def _result_get(self, request: ProviderRequest, scheme: str) -> ClusterResult | None:
        if self._result_dir is None:
            return None
        path = self._result_dir / f"{self._result_key(request, scheme)}.json"
        try:
            entry = json.loads(path.read_text("utf-8"))
        except (OSError, json.JSONDecodeError):
            return None
        if time.time() - entry["cached_at"] > self.config.cache_ttl:
            return None
        return ClusterResult.from_dict(entry["result"])

    def _result_put(self, request: ProviderRequest, scheme: str, result: ClusterResult) -> None:
        if self._result_dir is None:
            return
        self._result_dir.mkdir(parents=True, exist_ok=True)
        path = self._result_dir / f"{self._result_key(request, scheme)}.json"
        payload = {"cached_at": time.time(), "result": result.to_dict()}
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, ensure_ascii=False), encoding="utf-8")
        os.replace(tmp, path)
