"""Input parsing: triple and pairs TSV files, flattening, root injection.

File conventions: UTF-8, LF line endings, tab-separated columns with no
quoting or escaping. Blank lines and lines starting with `#` are
ignored.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .errors import EmptyResultError, ParseError, RootConflictError
from .model import SubjectTagGraph, Tag, Triple

PAIRS = "pairs"
TRIPLES = "triples"
INPUT_FORMATS = (PAIRS, TRIPLES)


def _rows(lines: Iterable[str], columns: int, source=None):
    """Yield (line_number, fields) for data lines, enforcing the column count."""
    for lineno, raw in enumerate(lines, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != columns:
            raise ParseError(
                f"expected {columns} tab-separated columns, got {len(fields)}",
                line=lineno,
                source=source,
            )
        for field in fields:
            if not field:
                raise ParseError("empty field", line=lineno, source=source)
        yield lineno, fields


def parse_triples(lines: Iterable[str], source=None) -> set[Triple]:
    """Parse `subject<TAB>relation<TAB>object` lines into a deduplicated triple set."""
    return {Triple(s, r, o) for _, (s, r, o) in _rows(lines, 3, source)}


def parse_pairs(lines: Iterable[str], source=None) -> SubjectTagGraph:
    """Parse `subject<TAB>tag` lines; the tag string is both relation and object."""
    annotations: dict[str, set[Tag]] = {}
    for _, (subject, tag) in _rows(lines, 2, source):
        annotations.setdefault(subject, set()).add(Tag(tag, tag))
    if not annotations:
        raise EmptyResultError("no subject-tag pairs found")
    return SubjectTagGraph.from_annotations(annotations)


def write_triples(triples: Iterable[Triple], fh) -> None:
    """Serialize triples in canonical order; inverse of parse_triples."""
    for triple in sorted(set(triples)):
        for field in triple:
            if not field or "\t" in field or "\n" in field or "\r" in field:
                raise ValueError(f"field {field!r} is not TSV-safe")
        fh.write("\t".join(triple) + "\n")


def flatten(triples: Iterable[Triple], relation: str | None = None) -> tuple[SubjectTagGraph, int]:
    """Turn triples into subject-tag annotations, optionally keeping one relation.

    Returns the graph and the number of subjects dropped because no
    triple of theirs survived the relation filter.
    """
    triples = set(triples)
    if not triples:
        raise EmptyResultError("no triples to flatten")
    annotations: dict[str, set[Tag]] = {}
    all_subjects = set()
    for triple in triples:
        all_subjects.add(triple.subject)
        if relation is None or triple.relation == relation:
            annotations.setdefault(triple.subject, set()).add(triple.tag())
    if not annotations:
        raise EmptyResultError(f"relation filter {relation!r} matched no triples")
    return SubjectTagGraph.from_annotations(annotations), len(all_subjects) - len(annotations)


def inject_root(graph: SubjectTagGraph, root_label: str = "root") -> SubjectTagGraph:
    """Add a synthetic root tag to every subject to anchor the hierarchy."""
    root = Tag(root_label, root_label)
    if root in graph.tags:
        raise RootConflictError(f"root tag {root_label!r} already in the vocabulary")
    return SubjectTagGraph.from_annotations(
        {s: tags | {root} for s, tags in graph.annotations.items()}
    )


def read_graph(
    path,
    input_format: str = PAIRS,
    relation: str | None = None,
    root_label: str = "root",
    add_root: bool = True,
) -> tuple[SubjectTagGraph, int]:
    """Load a subject-tag graph from a TSV file.

    Returns (graph, skipped_subject_count). Raises ParseError on
    malformed rows and UnicodeDecodeError on non-UTF-8 input.
    """
    if input_format not in INPUT_FORMATS:
        raise ValueError(f"unknown input format {input_format!r}")
    if input_format == PAIRS and relation is not None:
        raise ValueError("a relation filter only applies to the triples format")
    path = Path(path)
    skipped = 0
    with path.open(encoding="utf-8", newline="") as fh:
        if input_format == TRIPLES:
            graph, skipped = flatten(parse_triples(fh, source=str(path)), relation)
        else:
            graph = parse_pairs(fh, source=str(path))
    if add_root:
        graph = inject_root(graph, root_label)
    return graph, skipped
