"""Assignment of subjects to clusters on the induced hierarchy.

Belonging of a subject to a cluster is the Jaccard coefficient between
the subject's tag set and the cluster's root path. Each subject joins
the single cluster maximizing belonging; ties prefer the deepest
cluster, then canonical tag order. Assignment is embarrassingly
parallel across subjects and bit-identical for any worker count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import AbstractSet, NamedTuple

from .model import ClusterHierarchy, SubjectTagGraph, Tag, TagHierarchy


class Assignment(NamedTuple):
    """One subject's chosen cluster and its belonging score."""

    subject: str
    cluster: Tag
    belonging: float


def belonging(annotations: AbstractSet[Tag], cluster_path: AbstractSet[Tag]) -> float:
    """Jaccard coefficient between a subject's tags and a cluster's root path."""
    if not cluster_path:
        raise ValueError("cluster path must contain at least the root")
    intersection = len(annotations & cluster_path)
    return intersection / (len(annotations) + len(cluster_path) - intersection)


class _TreeIndex(NamedTuple):
    """Flattened tree in preorder: parallel arrays driving the scan."""

    tags: list[Tag]
    tag_rank: list[int]
    parent: list[int]
    level: list[int]


def _index_tree(tree: TagHierarchy) -> _TreeIndex:
    nodes = tree.nodes()
    position = {tag: i for i, tag in enumerate(nodes)}
    rank = {tag: i for i, tag in enumerate(sorted(nodes))}
    return _TreeIndex(
        tags=nodes,
        tag_rank=[rank[t] for t in nodes],
        parent=[position[tree.parent[t]] if t != tree.root else -1 for t in nodes],
        level=[tree.level[t] for t in nodes],
    )


def _best_node(annotation_ranks: frozenset[int], index: _TreeIndex) -> tuple[int, float]:
    """Scan every cluster once, walking intersection counts down the tree."""
    tag_rank, parent, level = index.tag_rank, index.parent, index.level
    size = len(annotation_ranks)
    shared = [0] * len(tag_rank)
    best = 0
    best_b = -1.0
    best_level = -1
    best_rank = -1
    for i in range(len(tag_rank)):
        p = parent[i]
        hits = (shared[p] if p >= 0 else 0) + (1 if tag_rank[i] in annotation_ranks else 0)
        shared[i] = hits
        lvl = level[i]
        b = hits / (size + lvl + 1 - hits)
        if b > best_b or (
            b == best_b
            and (lvl > best_level or (lvl == best_level and tag_rank[i] < best_rank))
        ):
            best, best_b, best_level, best_rank = i, b, lvl, tag_rank[i]
    return best, best_b


def _assign_chunk(annotation_sets: list[frozenset[int]], index: _TreeIndex) -> list[int]:
    return [_best_node(ranks, index)[0] for ranks in annotation_sets]


def assign_subject(subject: str, annotations: AbstractSet[Tag], tree: TagHierarchy) -> Assignment:
    """Choose the best cluster for a single subject."""
    index = _index_tree(tree)
    rank = {tag: i for i, tag in enumerate(sorted(tree.level))}
    ranks = frozenset(rank[t] for t in annotations if t in rank)
    if len(ranks) != len(annotations):
        raise ValueError("subject carries tags that are not tree nodes")
    node, score = _best_node(ranks, index)
    return Assignment(subject, index.tags[node], score)


def assign(graph: SubjectTagGraph, tree: TagHierarchy, workers: int = 1) -> ClusterHierarchy:
    """Assign every subject to exactly one cluster on the hierarchy."""
    missing = [t for t in graph.tags if t not in tree]
    if missing:
        raise ValueError(f"{len(missing)} graph tags are not tree nodes, e.g. {missing[0]!r}")

    index = _index_tree(tree)
    rank = {tag: i for i, tag in enumerate(sorted(tree.level))}
    annotation_sets = [
        frozenset(rank[t] for t in graph.annotations[s]) for s in graph.subjects
    ]

    if workers <= 1 or len(graph.subjects) < 2 * workers:
        chosen = _assign_chunk(annotation_sets, index)
    else:
        step = -(-len(annotation_sets) // workers)
        chunks = [annotation_sets[i : i + step] for i in range(0, len(annotation_sets), step)]
        chosen = []
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_assign_chunk, chunks, [index] * len(chunks)):
                chosen.extend(part)

    members: dict[Tag, list[str]] = {tag: [] for tag in tree.level}
    for subject, node in zip(graph.subjects, chosen):
        members[index.tags[node]].append(subject)
    return ClusterHierarchy.build(tree, members)
