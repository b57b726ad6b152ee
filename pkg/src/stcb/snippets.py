"""Search-result snippet records: XML / JSON-lines parsing and deduplication."""
from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass, replace
from pathlib import Path


class SnippetParseError(ValueError):
    """The input document is not well-formed (bad XML, bad JSON line)."""


class SnippetSchemaError(ValueError):
    """The input is well-formed but violates the snippet schema."""


@dataclass(frozen=True)
class Snippet:
    """One web search result: numeric id, source url, title and body text."""

    id: int
    url: str = ""
    title: str = ""
    body: str = ""

    def to_dict(self) -> dict:
        return {"id": self.id, "url": self.url, "title": self.title, "body": self.body}


def _check(snippet: Snippet, index: int) -> Snippet:
    if snippet.id < 0:
        raise SnippetSchemaError(f"snippet element {index}: negative id {snippet.id}")
    if not snippet.title and not snippet.body:
        raise SnippetSchemaError(f"snippet element {index}: title and body both empty")
    return snippet


def parse_snippet_xml(data: bytes | str) -> list[Snippet]:
    """Parse a UTF-8 XML document of ``<snippet>`` elements, document order.

    Each element must contain an ``<id>``; ``<url>``, ``<title>`` and
    ``<body>`` default to empty strings.
    """
    try:
        root = ET.fromstring(data)
    except ET.ParseError as exc:
        line, column = exc.position
        raise SnippetParseError(f"malformed XML at line {line}, column {column}: {exc}") from exc

    elements = [root] if root.tag == "snippet" else list(root.iter("snippet"))
    snippets = []
    seen_ids = set()
    for index, element in enumerate(elements):
        id_text = element.findtext("id")
        if id_text is None:
            raise SnippetSchemaError(f"snippet element {index} missing <id>")
        try:
            snippet_id = int(id_text.strip())
        except ValueError:
            raise SnippetSchemaError(
                f"snippet element {index}: non-integer id {id_text.strip()!r}"
            ) from None
        if snippet_id in seen_ids:
            raise SnippetSchemaError(f"snippet element {index}: duplicate id {snippet_id}")
        seen_ids.add(snippet_id)
        snippets.append(
            _check(
                Snippet(
                    id=snippet_id,
                    url=(element.findtext("url") or "").strip(),
                    title=element.findtext("title") or "",
                    body=element.findtext("body") or "",
                ),
                index,
            )
        )
    return snippets


def serialize_snippet_xml(snippets: list[Snippet]) -> bytes:
    """Render snippets back to the XML wire format (round-trips with parse)."""
    root = ET.Element("snippets")
    for snippet in snippets:
        element = ET.SubElement(root, "snippet")
        ET.SubElement(element, "id").text = str(snippet.id)
        ET.SubElement(element, "url").text = snippet.url
        ET.SubElement(element, "body").text = snippet.body
        ET.SubElement(element, "title").text = snippet.title
    tree = ET.ElementTree(root)
    ET.indent(tree)
    import io

    buffer = io.BytesIO()
    tree.write(buffer, encoding="utf-8", xml_declaration=True)
    return buffer.getvalue()


def parse_snippet_jsonl(data: bytes | str) -> list[Snippet]:
    """Parse the JSON-lines alternative: one object per line with keys
    id, url, title, body."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    snippets = []
    seen_ids = set()
    index = 0
    for lineno, line in enumerate(data.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as exc:
            raise SnippetParseError(f"bad JSON on line {lineno}: {exc}") from exc
        if not isinstance(record, dict) or "id" not in record:
            raise SnippetSchemaError(f"snippet element {index} (line {lineno}) missing id")
        snippet_id = record["id"]
        if not isinstance(snippet_id, int) or snippet_id in seen_ids:
            raise SnippetSchemaError(
                f"snippet element {index} (line {lineno}): bad or duplicate id {snippet_id!r}"
            )
        seen_ids.add(snippet_id)
        snippets.append(
            _check(
                Snippet(
                    id=snippet_id,
                    url=str(record.get("url", "")),
                    title=str(record.get("title", "")),
                    body=str(record.get("body", "")),
                ),
                index,
            )
        )
        index += 1
    return snippets


def serialize_snippet_jsonl(snippets: list[Snippet]) -> str:
    return "\n".join(json.dumps(s.to_dict(), ensure_ascii=False) for s in snippets) + (
        "\n" if snippets else ""
    )


def load_snippet_file(path: str | Path) -> list[Snippet]:
    """Load snippets from an XML or JSON-lines file, sniffing the format."""
    path = Path(path)
    if not path.exists():
        raise SnippetParseError(f"no such snippet file: {path}")
    data = path.read_bytes()
    suffix = path.suffix.lower()
    if suffix == ".xml":
        return parse_snippet_xml(data)
    if suffix in (".jsonl", ".ndjson", ".json"):
        return parse_snippet_jsonl(data)
    head = data.lstrip()[:1]
    return parse_snippet_xml(data) if head == b"<" else parse_snippet_jsonl(data)


def dedup_snippets(snippets: list[Snippet]) -> tuple[list[Snippet], dict[int, int]]:
    """Drop repeat snippets and renumber survivors densely from 0.

    A snippet repeats an earlier one when its url matches (non-empty urls
    only) or its (title, body) pair matches. The returned mapping sends every
    original id to its new id; duplicates map to the id of the survivor they
    repeat.
    """
    kept: list[Snippet] = []
    mapping: dict[int, int] = {}
    by_url: dict[str, int] = {}
    by_content: dict[tuple[str, str], int] = {}
    for snippet in snippets:
        content_key = (snippet.title, snippet.body)
        survivor = by_url.get(snippet.url) if snippet.url else None
        if survivor is None:
            survivor = by_content.get(content_key)
        if survivor is not None:
            mapping[snippet.id] = survivor
            continue
        new_id = len(kept)
        mapping[snippet.id] = new_id
        if snippet.url:
            by_url[snippet.url] = new_id
        by_content[content_key] = new_id
        kept.append(replace(snippet, id=new_id))
    return kept, mapping
