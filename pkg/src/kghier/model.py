"""Core domain types: triples, tags, annotation graphs and hierarchies.

All types are immutable after construction and safe to share across
threads. Tags order lexicographically on (relation, object); that order
is the canonical total order used by every deterministic tie-break in
the pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence


class Tag(NamedTuple):
    """A relation-object pair treated as an atomic subject annotation."""

    relation: str
    object: str


class Triple(NamedTuple):
    """A single ⟨subject, relation, object⟩ fact."""

    subject: str
    relation: str
    object: str

    def tag(self) -> Tag:
        return Tag(self.relation, self.object)


def format_tag(tag: Tag) -> str:
    """Render a tag for output files and labels.

    Tags whose relation equals their object (the flattened pairs
    convention) render as the bare string; otherwise as relation=object.
    """
    if tag.relation == tag.object:
        return tag.object
    return f"{tag.relation}={tag.object}"


@dataclass(frozen=True)
class SubjectTagGraph:
    """Bipartite subject-tag annotation structure.

    subjects and tags are sorted tuples; annotations maps each subject
    to its deduplicated tag set. Every tag annotates at least one
    subject.
    """

    subjects: tuple[str, ...]
    tags: tuple[Tag, ...]
    annotations: Mapping[str, frozenset[Tag]]

    def __post_init__(self):
        seen = set()
        for subject in self.subjects:
            tags = self.annotations.get(subject)
            if not tags:
                raise ValueError(f"subject {subject!r} has no annotations")
            seen.update(tags)
        if seen != set(self.tags):
            raise ValueError("tag vocabulary does not match annotation sets")
        if list(self.subjects) != sorted(set(self.subjects)):
            raise ValueError("subjects must be sorted and unique")
        if list(self.tags) != sorted(set(self.tags)):
            raise ValueError("tags must be sorted and unique")
        if set(self.annotations) != set(self.subjects):
            raise ValueError("annotation keys do not match the subject set")

    @classmethod
    def from_annotations(cls, annotations: Mapping[str, Iterable[Tag]]) -> SubjectTagGraph:
        cleaned = {s: frozenset(tags) for s, tags in annotations.items()}
        for subject, tags in cleaned.items():
            if not tags:
                raise ValueError(f"subject {subject!r} has no annotations")
        vocabulary = sorted(set().union(*cleaned.values())) if cleaned else []
        return cls(
            subjects=tuple(sorted(cleaned)),
            tags=tuple(vocabulary),
            annotations=cleaned,
        )

    def __len__(self) -> int:
        return len(self.subjects)


class TagHierarchy:
    """A single rooted tree of tags with levels and root paths.

    Construction takes the root and a child-to-parent mapping and
    derives children lists, levels and root paths. Children keep the
    order of `order` when given (all nodes, parents before children),
    canonical tag order otherwise.
    """

    def __init__(self, root: Tag, parent: Mapping[Tag, Tag], order: Sequence[Tag] | None = None):
        if root in parent:
            raise ValueError("root must not have a parent")
        nodes = set(parent) | {root}
        for child, par in parent.items():
            if par not in nodes:
                raise ValueError(f"parent {par!r} of {child!r} is not a node")

        if order is None:
            ordered = sorted(nodes)
        else:
            ordered = list(order)
            if set(ordered) != nodes or len(ordered) != len(nodes):
                raise ValueError("order must list every node exactly once")

        children: dict[Tag, list[Tag]] = {t: [] for t in ordered}
        for child in ordered:
            if child in parent:
                children[parent[child]].append(child)

        level: dict[Tag, int] = {root: 0}
        path: dict[Tag, tuple[Tag, ...]] = {root: (root,)}
        stack = [root]
        while stack:
            node = stack.pop()
            for child in reversed(children[node]):
                level[child] = level[node] + 1
                path[child] = path[node] + (child,)
                stack.append(child)
        if len(level) != len(nodes):
            raise ValueError("parent mapping is not a single connected tree")

        self.root = root
        self.parent = dict(parent)
        self.children = {t: tuple(kids) for t, kids in children.items()}
        self.level = level
        self._path = path

    def __contains__(self, tag: Tag) -> bool:
        return tag in self.level

    def __len__(self) -> int:
        return len(self.level)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TagHierarchy):
            return NotImplemented
        return (
            self.root == other.root
            and self.parent == other.parent
            and self.children == other.children
        )

    def nodes(self) -> list[Tag]:
        """All tags in preorder (each parent before its children)."""
        out = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(reversed(self.children[node]))
        return out

    def root_path(self, tag: Tag) -> tuple[Tag, ...]:
        """Tags from the root down to `tag`, inclusive of both ends."""
        return self._path[tag]

    def edges(self) -> set[tuple[Tag, Tag]]:
        """Direct parent→child subsumption edges."""
        return {(par, child) for child, par in self.parent.items()}


@dataclass(frozen=True)
class ClusterHierarchy:
    """A tag hierarchy with direct subject members per cluster.

    Clusters are identified by their annotating tag; `members` holds the
    direct (not inherited) member subjects of every tree node as a
    sorted tuple, empty clusters included.
    """

    tree: TagHierarchy
    members: Mapping[Tag, tuple[str, ...]]

    def __post_init__(self):
        seen: set[str] = set()
        total = 0
        for tag, subjects in self.members.items():
            if tag not in self.tree:
                raise ValueError(f"member key {tag!r} is not a tree node")
            seen.update(subjects)
            total += len(subjects)
        if total != len(seen):
            raise ValueError("direct member sets overlap")
        if set(self.members) != set(self.tree.level):
            raise ValueError("every tree node needs a member entry")

    @classmethod
    def build(cls, tree: TagHierarchy, members: Mapping[Tag, Iterable[str]]) -> ClusterHierarchy:
        full = {t: tuple(sorted(members.get(t, ()))) for t in tree.level}
        return cls(tree=tree, members=full)

    def subject_count(self) -> int:
        return sum(len(m) for m in self.members.values())


def fixture_g0() -> SubjectTagGraph:
    """The small hand-verifiable graph used throughout the test suite.

    Five subjects, five tags; the root tag annotates every subject.
    """
    root, a, b = Tag("root", "root"), Tag("A", "A"), Tag("B", "B")
    a1, a2 = Tag("A1", "A1"), Tag("A2", "A2")
    return SubjectTagGraph.from_annotations(
        {
            "s1": {root, a, a1},
            "s2": {root, a, a1},
            "s3": {root, a, a2},
            "s4": {root, b},
            "s5": {root, b},
        }
    )
