"""Boundary-filling extension of a placed layout, plus fixed-size allocation.

The pipeline: scale the layout's bounding box onto the boundary, grow each
scaled block to the nearest obstruction (right, up, left, down, in placement
order) so the blocks tile the boundary, then drop fixed-size blocks
(furniture) into their extended areas honoring anchor edges.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Rect
from .placement import Floorplan, SpatialBlock
from .units import MU


@dataclass(frozen=True)
class ExtendedLayout:
    """Scaled-and-grown blocks tiling (part of) the boundary."""

    boundary: Rect
    extended_blocks: tuple  # SpatialBlocks, placement order
    penalty: bool
    scale: tuple  # (sx, sy) as exact Fractions-like pairs of ints ((num, den), ...)

    @property
    def coverage(self) -> float:
        """Extended area over boundary area; 1.0 means an exact tiling."""
        if not self.extended_blocks:
            return 0.0
        covered = sum(b.w * b.h for b in self.extended_blocks)
        return covered / self.boundary.area


def _scaled(value: int, num: int, den: int) -> int:
    scaled = value * num
    q, r = divmod(scaled, den)
    # micro-unit grid keeps this exact for all realistic inputs; round half up
    return q + (1 if 2 * r >= den else 0)


def extend_layout(fp: Floorplan, boundary: Rect, requirements=None) -> ExtendedLayout:
    """Scale the layout onto the boundary and grow blocks to fill it.

    With fixed-size (non-flexible) requirements present, the result is
    penalized instead of extended when the layout overflows the boundary or
    the fit would shrink any fixed block below its own dimensions.
    """
    if not isinstance(boundary, Rect):
        raise ValueError("boundary must be a rectangle")
    if not fp.blocks:
        raise ValueError("empty floorplan")
    x1 = min(b.x for b in fp.blocks)
    y1 = min(b.y for b in fp.blocks)
    w = max(b.x2 for b in fp.blocks) - x1
    h = max(b.y2 for b in fp.blocks) - y1

    sx = (boundary.w, w)
    sy = (boundary.h, h)

    # scale corner coordinates, not widths: monotone, so disjoint stays disjoint
    def corners(b):
        bx = boundary.x + _scaled(b.x - x1, *sx)
        by = boundary.y + _scaled(b.y - y1, *sy)
        bx2 = boundary.x + _scaled(b.x2 - x1, *sx)
        by2 = boundary.y + _scaled(b.y2 - y1, *sy)
        return bx, by, bx2, by2

    if requirements is not None and any(not r.flexible for r in requirements):
        overflow = w > boundary.w or h > boundary.h
        shrinks = False
        for block in fp.blocks:
            req = requirements[block.label - 1]
            if req.flexible:
                continue
            bx, by, bx2, by2 = corners(block)
            if bx2 - bx < block.w or by2 - by < block.h:
                shrinks = True
        if overflow or shrinks:
            return ExtendedLayout(boundary, (), True, (sx, sy))

    scaled = []
    for b in fp.blocks:
        bx, by, bx2, by2 = corners(b)
        scaled.append(SpatialBlock(b.label, bx, by, bx2 - bx, by2 - by, b.rotated))

    # grow each block in turn; already-grown blocks obstruct at their new size
    grown = list(scaled)
    for i, b in enumerate(grown):
        x, y, x2, y2 = b.x, b.y, b.x2, b.y2
        others = [o for j, o in enumerate(grown) if j != i]
        # right
        limit = boundary.x2
        for o in others:
            if o.x >= x2 and min(y2, o.y2) - max(y, o.y) > 0:
                limit = min(limit, o.x)
        x2 = max(x2, limit)
        # up
        limit = boundary.y2
        for o in others:
            if o.y >= y2 and min(x2, o.x2) - max(x, o.x) > 0:
                limit = min(limit, o.y)
        y2 = max(y2, limit)
        # left
        limit = boundary.x
        for o in others:
            if o.x2 <= x and min(y2, o.y2) - max(y, o.y) > 0:
                limit = max(limit, o.x2)
        x = min(x, limit)
        # down
        limit = boundary.y
        for o in others:
            if o.y2 <= y and min(x2, o.x2) - max(x, o.x) > 0:
                limit = max(limit, o.y2)
        y = min(y, limit)
        grown[i] = SpatialBlock(b.label, x, y, x2 - x, y2 - y, b.rotated)

    return ExtendedLayout(boundary, tuple(grown), False, (sx, sy))


@dataclass(frozen=True)
class AllocatedLayout:
    """Final block rectangles after fixed-size allocation inside extended areas."""

    blocks: tuple  # SpatialBlocks
    extended: ExtendedLayout
    infeasible: frozenset  # labels whose fixed size does not fit its area


def allocate_fixed_blocks(extended: ExtendedLayout, requirements) -> AllocatedLayout:
    """Place fixed-size blocks inside their extended areas.

    Flexible blocks adopt the whole extended area.  Fixed blocks keep their
    own dimensions, flush against their anchor edge (centered along it) or
    fully centered without one; a fixed block larger than its area is
    flagged infeasible and left filling the area.
    """
    if extended.penalty:
        raise ValueError("cannot allocate inside a penalized layout")
    blocks = []
    infeasible = set()
    for area in extended.extended_blocks:
        req = requirements[area.label - 1]
        if req.flexible:
            blocks.append(area)
            continue
        w, h = (req.height, req.width) if area.rotated else (req.width, req.height)
        if w > area.w or h > area.h:
            infeasible.add(area.label)
            blocks.append(area)
            continue
        x = area.x + (area.w - w) // 2
        y = area.y + (area.h - h) // 2
        anchor = req.anchor_edge
        if anchor == "north":
            y = area.y2 - h
        elif anchor == "south":
            y = area.y
        elif anchor == "east":
            x = area.x2 - w
        elif anchor == "west":
            x = area.x
        blocks.append(SpatialBlock(area.label, x, y, w, h, area.rotated))
    return AllocatedLayout(tuple(blocks), extended, frozenset(infeasible))
