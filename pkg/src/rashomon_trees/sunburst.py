"""Ring-and-sector geometry for rendering a rule trie as a sunburst.

Ring 0 holds the trie root's children and spans the full circle; each
node's children partition its angular interval in proportion to their
distinct descendant tree counts.  Angles are radians from 12 o'clock,
increasing clockwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .colors import ColorMap, assign_colors, rgb_hex
from .errors import InvalidDepth
from .trie import RuleTrie, TrieNode

FULL_CIRCLE = 2.0 * math.pi


@dataclass(frozen=True)
class Sector:
    node_path: tuple[int | str, ...]
    ring: int
    start_angle: float
    end_angle: float
    kind: str  # "condition" | "leaf"
    tree_count: int
    color: tuple[int, int, int]
    feature_index: int | None
    luminance_rank: int | None

    @property
    def width(self) -> float:
        return self.end_angle - self.start_angle


def layout(trie: RuleTrie, depth_limit: int | float | None = None) -> list[Sector]:
    """Emit one sector per trie node down to ``depth_limit`` rings.

    Sibling intervals are proportional to tree counts normalized by the
    sibling sum (a tree may descend through several siblings, so counts
    can overlap).  Child order is the one fixed at trie build time.
    """
    if depth_limit is None:
        depth_limit = math.inf
    if depth_limit < 1:
        raise InvalidDepth(f"depth limit must be at least 1, got {depth_limit}")
    colors = assign_colors(trie.conditions)
    sectors: list[Sector] = []

    def emit(node: TrieNode, path: tuple, ring: int, start: float, width: float):
        if node.is_leaf:
            kind, color, fidx, rank = "leaf", colors.leaf_gray, None, None
        else:
            kind = "condition"
            color = colors.condition_rgb[node.key]
            fidx, rank = colors.provenance(node.key, trie.conditions)
        sectors.append(
            Sector(
                node_path=path,
                ring=ring,
                start_angle=start,
                end_angle=start + width,
                kind=kind,
                tree_count=node.tree_count,
                color=color,
                feature_index=fidx,
                luminance_rank=rank,
            )
        )
        descend(node, path, ring + 1, start, width)

    def descend(node: TrieNode, path: tuple, ring: int, start: float, width: float):
        if ring >= depth_limit or not node.children:
            return
        total = sum(child.tree_count for child in node.children)
        cumulative = 0
        for child in node.children:
            child_start = start + width * (cumulative / total)
            cumulative += child.tree_count
            child_end = start + width * (cumulative / total)
            emit(child, path + (child.key,), ring, child_start, child_end - child_start)

    descend(trie.root, (), 0, 0.0, FULL_CIRCLE)
    return sectors


def _significant(value: float, digits: int = 12) -> float:
    return float(f"{value:.{digits}g}")


def layout_document(sectors: list[Sector]) -> dict:
    """Flat render-ready document: angles at 12 significant digits, hex colors."""
    return {
        "sectors": [
            {
                "node_path": list(sector.node_path),
                "ring": sector.ring,
                "start_angle": _significant(sector.start_angle),
                "end_angle": _significant(sector.end_angle),
                "kind": sector.kind,
                "tree_count": sector.tree_count,
                "color": rgb_hex(sector.color),
            }
            for sector in sectors
        ]
    }


def colors_document(colors: ColorMap) -> dict:
    return {
        "chroma": colors.chroma,
        "leaf_gray": rgb_hex(colors.leaf_gray),
        "features": {
            feat: {"hue": colors.feature_hues[feat], "index": colors.feature_index[feat]}
            for feat in colors.feature_hues
        },
        "conditions": {
            str(cid): {
                "luminance": colors.condition_luminance[cid],
                "rank": colors.luminance_rank[cid],
                "rgb": rgb_hex(colors.condition_rgb[cid]),
            }
            for cid in colors.condition_rgb
        },
    }
