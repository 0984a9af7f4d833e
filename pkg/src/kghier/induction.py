"""Greedy tag hierarchy induction.

The most general tag becomes the root; remaining tags are inserted in
decreasing generality order, each attached under the already-placed tag
with the highest decayed path similarity. The similarity of a candidate
parent is the sum over the candidate's root path of
alpha^(level_gap) * pair_count(new_tag, path_tag) / n(new_tag), where
level_gap is the candidate's level minus the path tag's level (so the
candidate itself contributes with weight 1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Tag, TagHierarchy
from .stats import CooccurrenceStats


@dataclass(frozen=True)
class InductionConfig:
    """Hyperparameters for hierarchy induction.

    alpha is the decay factor weighting ancestor contributions; it must
    lie strictly between 0 and 1.
    """

    alpha: float

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha!r}")


def _decayed_path_sum(path: tuple[Tag, ...], direct: dict[Tag, float], alpha: float) -> float:
    """Sum alpha^(top_level - level) * direct[tag] over a root path.

    Terms absent from `direct` are zero and skipped; summation runs from
    the root down so the float result is reproducible.
    """
    top = len(path) - 1
    total = 0.0
    for level, tag in enumerate(path):
        value = direct.get(tag)
        if value is not None:
            total += alpha ** (top - level) * value
    return total


def similarity(
    tree: TagHierarchy,
    placed: Tag,
    incoming: Tag,
    stats: CooccurrenceStats,
    alpha: float,
) -> float:
    """Decayed path similarity of a candidate parent for an incoming tag."""
    if placed not in tree:
        raise ValueError(f"candidate parent {placed!r} is not in the tree")
    if incoming in tree:
        raise ValueError(f"incoming tag {incoming!r} is already placed")
    n_incoming = stats.n[incoming]
    path = tree.root_path(placed)
    direct = {}
    for tag in path:
        count = stats.pair_count(incoming, tag)
        if count:
            direct[tag] = count / n_incoming
    return _decayed_path_sum(path, direct, alpha)


def induce(stats: CooccurrenceStats, config: InductionConfig) -> TagHierarchy:
    """Build the tag hierarchy greedily in decreasing generality order.

    Every already-placed tag is a candidate parent. Similarity ties
    prefer the candidate placed earlier, i.e. higher generality and then
    canonical tag order; a tag with zero similarity everywhere attaches
    to the root.
    """
    if not stats.vocabulary:
        raise ValueError("cannot induce a hierarchy from an empty vocabulary")
    alpha = config.alpha
    generality = stats.generality_map()
    order = sorted(stats.vocabulary, key=lambda t: (-generality[t], t))

    root = order[0]
    placed = [root]
    placed_set = {root}
    paths: dict[Tag, tuple[Tag, ...]] = {root: (root,)}
    parent: dict[Tag, Tag] = {}

    for incoming in order[1:]:
        n_incoming = stats.n[incoming]
        direct = {
            tag: count / n_incoming
            for tag, count in stats.partners(incoming).items()
            if tag in placed_set
        }
        if not direct:
            best = root
        else:
            best = placed[0]
            best_score = -1.0
            for candidate in placed:
                score = _decayed_path_sum(paths[candidate], direct, alpha)
                if score > best_score:
                    best_score = score
                    best = candidate
        parent[incoming] = best
        paths[incoming] = paths[best] + (incoming,)
        placed.append(incoming)
        placed_set.add(incoming)

    return TagHierarchy(root, parent, order=placed)
