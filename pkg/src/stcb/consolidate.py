"""Post-clustering consolidation: merge final clusters whose top labels share
the same root multiset, then drop insignificant clusters.

Consolidation happens after clustering on surface forms, so display labels
are always phrases that occur verbatim in the snippets; roots never surface.
"""
from __future__ import annotations

from dataclasses import dataclass

from .clusters import FinalCluster
from .roots import RootExtractor


@dataclass(frozen=True)
class SignificanceConfig:
    """What counts as a significant cluster and how many to display."""

    min_members: int = 2
    max_clusters: int = 15

    def __post_init__(self) -> None:
        if self.min_members < 1:
            raise ValueError("min_members must be >= 1")
        if self.max_clusters < 1:
            raise ValueError("max_clusters must be >= 1")


@dataclass(frozen=True)
class ConsolidatedCluster:
    """A displayable cluster: surface label, the roots behind it, the merged
    member set, and the top labels of the final clusters folded into it."""

    display_label: str
    root_signature: tuple[str, ...]
    members: frozenset[int]
    merged_from: tuple[str, ...]
    score: float

    def sorted_members(self) -> list[int]:
        return sorted(self.members)

    def to_dict(self) -> dict:
        return {
            "display_label": self.display_label,
            "root_signature": list(self.root_signature),
            "members": self.sorted_members(),
            "merged_from": list(self.merged_from),
            "score": self.score,
        }


def _filter_and_rank(
    clusters: list[ConsolidatedCluster], config: SignificanceConfig
) -> list[ConsolidatedCluster]:
    kept = [c for c in clusters if len(c.members) >= config.min_members]
    kept.sort(key=lambda c: (-c.score, c.display_label))
    return kept[: config.max_clusters]


def consolidate(
    finals: list[FinalCluster],
    extractor: RootExtractor,
    config: SignificanceConfig,
) -> list[ConsolidatedCluster]:
    """Group final clusters by the root signature of their top label; each
    group becomes one cluster labeled by its best member's surface phrase,
    holding the union of the group's documents."""
    groups: dict[tuple[str, ...], list[FinalCluster]] = {}
    for final in finals:
        groups.setdefault(extractor.label_signature(final.top_label), []).append(final)

    merged = []
    for signature, group in groups.items():
        group.sort(key=lambda f: (-f.score, f.top_label))
        best = group[0]
        members = frozenset().union(*(f.members for f in group))
        merged.append(
            ConsolidatedCluster(
                display_label=" ".join(best.top_label),
                root_signature=signature,
                members=members,
                merged_from=tuple(" ".join(f.top_label) for f in group),
                score=best.score,
            )
        )
    return _filter_and_rank(merged, config)


def wrap_unconsolidated(
    finals: list[FinalCluster],
    config: SignificanceConfig,
) -> list[ConsolidatedCluster]:
    """Present final clusters without root merging (the stem-first diagnostic
    path, whose labels are already root forms), applying only the
    significance filter."""
    wrapped = [
        ConsolidatedCluster(
            display_label=" ".join(final.top_label),
            root_signature=tuple(sorted(final.top_label)),
            members=final.members,
            merged_from=(" ".join(final.top_label),),
            score=final.score,
        )
        for final in finals
    ]
    return _filter_and_rank(wrapped, config)
