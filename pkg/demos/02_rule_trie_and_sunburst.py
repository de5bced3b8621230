"""Build the decision-rule trie, lay it out as a sunburst, and render an SVG.

Every root-to-leaf rule of every tree is inserted into a prefix trie;
sector angles encode how many distinct trees descend through each
condition, and colors group conditions by their source feature.  The
script writes ``sunburst.svg`` next to itself.
"""

import math
from pathlib import Path

from rashomon_trees import (
    EnumerationConfig,
    build_trie,
    enumerate_rashomon,
    layout,
    rgb_hex,
    subtrie,
)

from toydata import make_credit_dataset

dataset = make_credit_dataset()
rset = enumerate_rashomon(dataset, EnumerationConfig(lam=0.008, epsilon=1.3, depth_cap=3))
trie = build_trie(rset)

print(f"trie height: {trie.height} rings")
print(f"trees: {trie.total_trees}, decision-path links: {trie.total_path_links}")
ring0 = [c for c in trie.root.children]
print("first ring (descendant tree counts):")
for node in ring0:
    name = trie.conditions[node.key].display_name if not node.is_leaf else "(leaf)"
    print(f"  {name:>20}: {node.tree_count}")
print()

prefix = [ring0[0].key] if ring0 and not ring0[0].is_leaf else []
if prefix:
    zoomed = subtrie(trie, prefix)
    print(
        f"zooming into {trie.conditions[prefix[0]].display_name!r}: "
        f"{zoomed.total_trees} trees, {zoomed.total_path_links} path links"
    )
print()


def polar(cx, cy, radius, angle):
    # angle 0 at 12 o'clock, growing clockwise
    return cx + radius * math.sin(angle), cy - radius * math.cos(angle)


def arc_path(cx, cy, r_in, r_out, a0, a1):
    large = 1 if (a1 - a0) > math.pi else 0
    x0o, y0o = polar(cx, cy, r_out, a0)
    x1o, y1o = polar(cx, cy, r_out, a1)
    x0i, y0i = polar(cx, cy, r_in, a1)
    x1i, y1i = polar(cx, cy, r_in, a0)
    return (
        f"M {x0o:.2f} {y0o:.2f} "
        f"A {r_out:.2f} {r_out:.2f} 0 {large} 1 {x1o:.2f} {y1o:.2f} "
        f"L {x0i:.2f} {y0i:.2f} "
        f"A {r_in:.2f} {r_in:.2f} 0 {large} 0 {x1i:.2f} {y1i:.2f} Z"
    )


def write_svg(sectors, path, size=640, hole=52, ring_width=54):
    cx = cy = size / 2
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for sector in sectors:
        r_in = hole + sector.ring * ring_width
        r_out = r_in + ring_width - 2
        if sector.width >= 2 * math.pi - 1e-9:
            # full-circle sector: draw as an annulus via two half arcs
            mid = sector.start_angle + math.pi
            for a0, a1 in ((sector.start_angle, mid), (mid, sector.end_angle)):
                parts.append(
                    f'<path d="{arc_path(cx, cy, r_in, r_out, a0, a1)}" '
                    f'fill="{rgb_hex(sector.color)}" stroke="white" stroke-width="1"/>'
                )
            continue
        parts.append(
            f'<path d="{arc_path(cx, cy, r_in, r_out, sector.start_angle, sector.end_angle)}" '
            f'fill="{rgb_hex(sector.color)}" stroke="white" stroke-width="1"/>'
        )
    parts.append("</svg>")
    Path(path).write_text("\n".join(parts))


sectors = layout(trie, trie.height)
out = Path(__file__).with_name("sunburst.svg")
write_svg(sectors, out)
print(f"wrote {len(sectors)} sectors across {trie.height} rings to {out.name}")
