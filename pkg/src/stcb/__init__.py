"""Arabic web search results clustering: word-level suffix tree clustering
with post-clustering root consolidation, plus a browsing service and CLI."""

from .arabic import Token, TokenSequence, clean_text, load_stop_words, snippet_to_sequence
from .clusters import (
    BaseCluster,
    FinalCluster,
    StcConfig,
    extract_base_clusters,
    merge_clusters,
    phrase_weight,
    select_top_k,
    similarity,
)
from .consolidate import ConsolidatedCluster, SignificanceConfig, consolidate
from .pipeline import (
    ClusterResult,
    ConfigError,
    Pipeline,
    PipelineConfig,
    SchemeReport,
    StageError,
    load_config,
)
from .providers import (
    FixtureProvider,
    ProviderError,
    ProviderRequest,
    SearchProvider,
    SnippetCache,
    UnknownProviderError,
    fetch,
)
from .roots import RootExtractor, RootResult, load_root_lexicon
from .snippets import (
    Snippet,
    SnippetParseError,
    SnippetSchemaError,
    dedup_snippets,
    load_snippet_file,
    parse_snippet_jsonl,
    parse_snippet_xml,
    serialize_snippet_jsonl,
    serialize_snippet_xml,
)
from .suffixtree import GeneralizedSuffixTree, TreeNode, build_tree

__version__ = "0.1.0"
