"""Word-granularity generalized suffix tree over cleaned token sequences.

Online Ukkonen construction with suffix links, linear in the total token
count. Each document contributes every suffix of its word sequence, with the
document's unique terminator appended so suffixes of different documents
never merge at a leaf. The finished tree is immutable and safe to query from
any number of readers.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from .arabic import TokenSequence, is_sentinel_word


class TreeNode:
    """Node of the tree; the edge *into* the node is words[start:end) of the
    owning sequence (``end`` is None for leaf edges, meaning sequence end)."""

    __slots__ = (
        "seq_index", "start", "end", "children", "suffix_link", "parent",
        "doc_ids", "leaf_index",
    )

    def __init__(self, seq_index: int = -1, start: int = 0, end: int | None = 0):
        self.seq_index = seq_index
        self.start = start
        self.end = end
        self.children: dict[str, TreeNode] = {}
        self.suffix_link: TreeNode | None = None
        self.parent: TreeNode | None = None
        self.doc_ids: tuple[int, ...] = ()
        self.leaf_index: tuple[int, int] | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def doc_set(self) -> frozenset[int]:
        return frozenset(self.doc_ids)


class GeneralizedSuffixTree:
    def __init__(self) -> None:
        self.root = TreeNode()
        self.doc_count = 0
        self.total_leaves = 0
        self._sequences: list[list[str]] = []
        self._doc_of_seq: list[int] = []

    # -- queries ---------------------------------------------------------

    def edge_words(self, node: TreeNode) -> list[str]:
        if node is self.root:
            return []
        words = self._sequences[node.seq_index]
        end = len(words) if node.end is None else node.end
        return words[node.start:end]

    def node_phrase(self, node: TreeNode) -> list[str]:
        """Words spelled from the root to ``node``, sentinels excluded."""
        parts: list[str] = []
        while node is not None and node is not self.root:
            parts.append(self.edge_words(node))
            node = node.parent
        phrase: list[str] = []
        for chunk in reversed(parts):
            phrase.extend(w for w in chunk if not is_sentinel_word(w))
        return phrase

    def nodes(self) -> Iterator[TreeNode]:
        """All non-root nodes, pre-order, children visited in sorted edge
        order (deterministic across runs)."""
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node is not self.root:
                yield node
            stack.extend(
                node.children[word] for word in sorted(node.children, reverse=True)
            )

    def internal_nodes(self) -> Iterator[TreeNode]:
        """Every non-root internal node exactly once, deterministic order."""
        return (node for node in self.nodes() if not node.is_leaf)

    def leaves(self) -> Iterator[TreeNode]:
        return (node for node in self.nodes() if node.is_leaf)

    def dump(self) -> str:
        """Debug listing, one indented ``node:<phrase> doc:(<ids>)`` line per
        node, mirroring the worked-example figures; sentinels print as $."""
        lines = []
        depths = {id(self.root): 0}
        for node in self.nodes():
            depth = depths[id(node.parent)] + 1
            depths[id(node)] = depth
            words = [
                "$" if is_sentinel_word(w) else w for w in self.edge_words(node)
            ]
            ids = ",".join(str(d) for d in node.doc_ids)
            lines.append(f"{'  ' * (depth - 1)}node:{' '.join(words)} doc:({ids})")
        return "\n".join(lines)

    # -- construction ----------------------------------------------------

    def _sequence_of(self, node: TreeNode) -> list[str]:
        return self._sequences[node.seq_index]

    def _edge_length(self, node: TreeNode) -> int:
        end = len(self._sequence_of(node)) if node.end is None else node.end
        return end - node.start

    def _add_sequence(self, doc_id: int, words: list[str]) -> None:
        seq_index = len(self._sequences)
        self._sequences.append(words)
        self._doc_of_seq.append(doc_id)

        root = self.root
        active_node = root
        active_edge = 0  # index into `words` of the first word on the active edge
        active_length = 0
        remainder = 0

        for i, token in enumerate(words):
            remainder += 1
            pending_link: TreeNode | None = None
            while remainder > 0:
                if active_length == 0:
                    active_edge = i
                child = active_node.children.get(words[active_edge])
                if child is None:
                    leaf = TreeNode(seq_index, i, None)
                    leaf.leaf_index = (doc_id, i - remainder + 1)
                    active_node.children[words[active_edge]] = leaf
                    if pending_link is not None:
                        pending_link.suffix_link = active_node
                        pending_link = None
                else:
                    edge_len = self._edge_length(child)
                    if active_length >= edge_len:
                        # walk down: the active point sits past this edge
                        active_edge += edge_len
                        active_length -= edge_len
                        active_node = child
                        continue
                    if self._sequence_of(child)[child.start + active_length] == token:
                        # the word is already on the edge: rule 3, stop phase
                        if pending_link is not None and active_node is not root:
                            pending_link.suffix_link = active_node
                        active_length += 1
                        break
                    # split the edge and hang a new leaf off the split node
                    split = TreeNode(child.seq_index, child.start, child.start + active_length)
                    active_node.children[words[active_edge]] = split
                    leaf = TreeNode(seq_index, i, None)
                    leaf.leaf_index = (doc_id, i - remainder + 1)
                    split.children[token] = leaf
                    child.start += active_length
                    split.children[self._sequence_of(child)[child.start]] = child
                    if pending_link is not None:
                        pending_link.suffix_link = split
                    pending_link = split
                remainder -= 1
                if active_node is root and active_length > 0:
                    active_length -= 1
                    active_edge = i - remainder + 1
                elif active_node is not root:
                    active_node = active_node.suffix_link or root

        # Suffixes are taken at word positions only: drop the leaf that would
        # represent the bare terminator, so a k-word document has exactly k
        # leaves (the terminator still seals every real suffix).
        terminator = words[-1]
        bare = root.children.get(terminator)
        if bare is not None and bare.is_leaf and bare.start == len(words) - 1:
            del root.children[terminator]

    def _finalize(self) -> None:
        """Set parents and materialize doc id sets bottom-up (iterative DFS:
        paths can exceed the recursion limit on degenerate corpora)."""
        leaves = 0
        stack: list[tuple[TreeNode, bool]] = [(self.root, False)]
        while stack:
            node, processed = stack.pop()
            if processed:
                seen: set[int] = set()
                for child in node.children.values():
                    seen.update(child.doc_ids)
                node.doc_ids = tuple(sorted(seen))
                continue
            if node.is_leaf and node is not self.root:
                node.doc_ids = (self._doc_of_seq[node.seq_index],)
                leaves += 1
                continue
            stack.append((node, True))
            for child in node.children.values():
                child.parent = node
                stack.append((child, False))
        self.total_leaves = leaves


def build_tree(sequences: Iterable[TokenSequence]) -> GeneralizedSuffixTree:
    """Build the generalized suffix tree over all non-empty sequences.

    Raises ValueError on a duplicate doc_id; sequences that cleaned to zero
    tokens are skipped.
    """
    tree = GeneralizedSuffixTree()
    seen: set[int] = set()
    for sequence in sequences:
        if sequence.is_empty:
            continue
        if sequence.doc_id in seen:
            raise ValueError(f"duplicate doc_id {sequence.doc_id}")
        seen.add(sequence.doc_id)
        tree._add_sequence(sequence.doc_id, sequence.words() + [sequence.terminator])
    tree.doc_count = len(seen)
    tree._finalize()
    return tree


def internal_nodes(tree: GeneralizedSuffixTree) -> Iterator[TreeNode]:
    return tree.internal_nodes()


def node_phrase(tree: GeneralizedSuffixTree, node: TreeNode) -> list[str]:
    return tree.node_phrase(node)
