"""Pluggable snippet providers and the on-disk response cache.

Live web results are not reproducible, so the mandatory provider is the
offline "fixture" one: a directory of snippet XML files plus a manifest
mapping query strings to files. Network providers can be registered under
other names without touching the pipeline.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .snippets import Snippet, parse_snippet_xml

DEFAULT_CACHE_TTL = 24 * 3600


class ProviderError(RuntimeError):
    """Provider transport or configuration failure; carries the provider's
    error payload when there is one."""

    def __init__(self, message: str, payload: object = None):
        super().__init__(message)
        self.payload = payload


class UnknownProviderError(ProviderError):
    pass


@dataclass(frozen=True)
class ProviderRequest:
    query: str
    max_results: int = 50
    provider_name: str = "fixture"

    def __post_init__(self) -> None:
        if not self.query.strip():
            raise ValueError("query must be non-empty")
        if self.max_results < 0:
            raise ValueError("max_results must be >= 0")

    def cache_key(self) -> str:
        raw = f"{self.provider_name}\n{self.query.strip()}\n{self.max_results}"
        return hashlib.sha256(raw.encode("utf-8")).hexdigest()


class SearchProvider(ABC):
    """A source of snippets for a query."""

    name: str = "abstract"

    @abstractmethod
    def search(self, query: str, max_results: int) -> list[Snippet]:
        """Return up to max_results snippets; an empty list is a valid
        result, not an error."""


def query_file_name(query: str) -> str:
    """Conventional corpus file name for a query (hash keeps names ASCII)."""
    return hashlib.sha1(query.strip().encode("utf-8")).hexdigest()[:12] + ".xml"


def bundled_corpus_dir() -> Path:
    return Path(str(resources.files("stcb.data").joinpath("corpus")))


class FixtureProvider(SearchProvider):
    """Serves snippets from a corpus directory with a ``manifest.json``
    mapping query string -> file name."""

    name = "fixture"

    def __init__(self, corpus_dir: str | Path | None = None):
        self.corpus_dir = Path(corpus_dir) if corpus_dir else bundled_corpus_dir()
        manifest_path = self.corpus_dir / "manifest.json"
        if not manifest_path.exists():
            raise ProviderError(f"fixture corpus manifest not found: {manifest_path}")
        self.manifest: dict[str, str] = json.loads(manifest_path.read_text("utf-8"))

    def search(self, query: str, max_results: int) -> list[Snippet]:
        file_name = self.manifest.get(query.strip())
        if file_name is None:
            return []
        path = self.corpus_dir / file_name
        if not path.exists():
            raise ProviderError(f"fixture corpus file missing: {path}")
        return parse_snippet_xml(path.read_bytes())[:max_results]


class SnippetCache:
    """Content-addressed on-disk store of provider responses. Writes are
    atomic (temp file + rename), so readers see the old or new entry, never a
    torn one."""

    def __init__(self, cache_dir: str | Path, ttl_seconds: float = DEFAULT_CACHE_TTL):
        self.cache_dir = Path(cache_dir)
        self.ttl_seconds = ttl_seconds

    def _path(self, key: str) -> Path:
        return self.cache_dir / f"{key}.json"

    def get(self, request: ProviderRequest) -> list[Snippet] | None:
        path = self._path(request.cache_key())
        try:
            entry = json.loads(path.read_text("utf-8"))
        except (OSError, json.JSONDecodeError):
            return None
        if time.time() - entry["fetched_at"] > self.ttl_seconds:
            return None
        return [Snippet(**record) for record in entry["snippets"]]

    def put(self, request: ProviderRequest, snippets: list[Snippet]) -> None:
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        entry = {
            "key": request.cache_key(),
            "fetched_at": time.time(),
            "snippets": [s.to_dict() for s in snippets],
        }
        fd, tmp = tempfile.mkstemp(dir=self.cache_dir, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump(entry, handle, ensure_ascii=False)
            os.replace(tmp, self._path(request.cache_key()))
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise


def fetch(
    request: ProviderRequest,
    providers: dict[str, SearchProvider],
    cache: SnippetCache | None = None,
) -> list[Snippet]:
    """Resolve the provider, serve from cache when fresh, otherwise query the
    provider and cache the response before returning it."""
    if request.max_results == 0:
        return []
    provider = providers.get(request.provider_name)
    if provider is None:
        raise UnknownProviderError(
            f"unknown provider {request.provider_name!r}; "
            f"registered: {sorted(providers)}"
        )
    if cache is not None:
        cached = cache.get(request)
        if cached is not None:
            return cached
    try:
        snippets = provider.search(request.query, request.max_results)
    except ProviderError:
        raise
    except Exception as exc:
        raise ProviderError(f"provider {request.provider_name!r} failed: {exc}",
                            payload=getattr(exc, "args", None)) from exc
    snippets = snippets[: request.max_results]
    if cache is not None:
        cache.put(request, snippets)
    return snippets
