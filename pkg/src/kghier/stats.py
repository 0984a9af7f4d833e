"""Tag occurrence counts, pairwise co-occurrence counts and generality.

The generality of a tag is the sum, over every other tag, of their
co-occurrence count normalized by the other tag's occurrence count. A
tag that annotates every subject (an injected root) attains the strict
maximum of vocabulary_size - 1.
"""

from __future__ import annotations

from collections import Counter

from .model import SubjectTagGraph, Tag, format_tag


class CooccurrenceStats:
    """Occurrence and co-occurrence counts with cached generality scores.

    Pair counts are stored sparsely as a symmetric adjacency map; only
    nonzero entries exist and self-pairs are never stored. Generality
    accumulates partner terms in canonical tag order so repeated runs
    produce bit-identical floats.
    """

    def __init__(self, n: dict[Tag, int], adjacency: dict[Tag, dict[Tag, int]]):
        self.n = n
        self.vocabulary = tuple(sorted(n))
        self._adjacency = adjacency
        self._generality: dict[Tag, float] = {}

    def pair_count(self, a: Tag, b: Tag) -> int:
        """Number of subjects annotated by both tags."""
        if a == b:
            raise ValueError("self pair counts are not defined")
        if a not in self.n or b not in self.n:
            raise KeyError(f"unknown tag {(a if a not in self.n else b)!r}")
        return self._adjacency.get(a, {}).get(b, 0)

    def partners(self, tag: Tag) -> dict[Tag, int]:
        """Nonzero co-occurrence counts of `tag`, keyed by the other tag."""
        if tag not in self.n:
            raise KeyError(f"unknown tag {tag!r}")
        return self._adjacency.get(tag, {})

    def generality(self, tag: Tag) -> float:
        """Sum of pair_count(tag, other) / n(other) over all other tags."""
        if tag not in self.n:
            raise KeyError(f"unknown tag {tag!r}")
        cached = self._generality.get(tag)
        if cached is None:
            total = 0.0
            for other in sorted(self._adjacency.get(tag, {})):
                total += self._adjacency[tag][other] / self.n[other]
            self._generality[tag] = cached = total
        return cached

    def generality_map(self) -> dict[Tag, float]:
        return {tag: self.generality(tag) for tag in self.vocabulary}


def count_cooccurrences(graph: SubjectTagGraph) -> CooccurrenceStats:
    """Count tag occurrences and unordered tag pairs over all subjects.

    Iterates each subject's annotation set rather than intersecting tag
    pairs; annotation sets are short while the vocabulary can be large.
    """
    if not graph.subjects:
        raise ValueError("graph has no subjects")
    n = Counter()
    adjacency: dict[Tag, dict[Tag, int]] = {}
    for subject in graph.subjects:
        tags = sorted(graph.annotations[subject])
        n.update(tags)
        for i, a in enumerate(tags):
            row_a = adjacency.setdefault(a, {})
            for b in tags[i + 1 :]:
                row_a[b] = row_a.get(b, 0) + 1
                row_b = adjacency.setdefault(b, {})
                row_b[a] = row_b.get(a, 0) + 1
    return CooccurrenceStats(dict(n), adjacency)


def dump_stats_tsv(stats: CooccurrenceStats, fh) -> None:
    """Write `tag<TAB>n<TAB>generality` rows sorted by descending generality."""
    rows = sorted(stats.vocabulary, key=lambda t: (-stats.generality(t), t))
    for tag in rows:
        fh.write(f"{format_tag(tag)}\t{stats.n[tag]}\t{stats.generality(tag)!r}\n")
