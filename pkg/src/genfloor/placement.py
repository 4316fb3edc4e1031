"""Tree to floorplan conversion via the horizontal-contour rule.

Blocks are placed in DFS preorder.  A node's x comes from its tree parent
(binary: left child sits right of the parent, right child shares the
parent's x; n-ary: every child sits right of its parent); its y is the
skyline height over the block's x-interval at the moment it is placed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .model import Rect
from .trees import BINARY, NARY, LayoutTree


class SpatialBlock(NamedTuple):
    """A placed axis-aligned block, all lengths in micro-units."""

    label: int
    x: int
    y: int
    w: int
    h: int
    rotated: bool = False

    @property
    def x2(self) -> int:
        return self.x + self.w

    @property
    def y2(self) -> int:
        return self.y + self.h

    @property
    def rect(self) -> Rect:
        return Rect(self.x, self.y, self.w, self.h)


@dataclass(frozen=True)
class Floorplan:
    """Placed blocks in placement order plus the tree that produced them."""

    blocks: tuple
    tree: LayoutTree
    representation: str

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))

    def block(self, label: int) -> SpatialBlock:
        for b in self.blocks:
            if b.label == label:
                return b
        raise ValueError(f"no block labeled {label}")


class Contour:
    """Piecewise-constant skyline over [0, +inf), height 0 at the start.

    Stored as (start, height) steps; each height runs until the next start,
    the last one to infinity.  Instances are immutable: placing returns a
    new contour.
    """

    __slots__ = ("_steps",)

    def __init__(self, steps=((0, 0),)):
        self._steps = tuple(steps)

    def segments(self):
        """Explicit (x_start, x_end, height) triples; the last x_end is None."""
        out = []
        for i, (start, height) in enumerate(self._steps):
            end = self._steps[i + 1][0] if i + 1 < len(self._steps) else None
            out.append((start, end, height))
        return tuple(out)

    def height_over(self, x: int, w: int) -> int:
        """Maximum skyline height over [x, x+w)."""
        if w <= 0:
            raise ValueError("width must be positive")
        x2 = x + w
        steps = self._steps
        best = 0
        for i, (start, height) in enumerate(steps):
            end = steps[i + 1][0] if i + 1 < len(steps) else None
            if end is not None and end <= x:
                continue
            if start >= x2:
                break
            if height > best:
                best = height
        return best

    def raised(self, x: int, w: int, top: int) -> "Contour":
        """New contour with [x, x+w) forced to `top`."""
        x2 = x + w
        steps = self._steps
        out = [(start, height) for start, height in steps if start < x]
        out.append((x, top))
        resume = 0  # original height in force at x2
        for i, (start, height) in enumerate(steps):
            end = steps[i + 1][0] if i + 1 < len(steps) else None
            if start <= x2 and (end is None or end > x2):
                resume = height
        out.append((x2, resume))
        out.extend((start, height) for start, height in steps if start > x2)
        merged = []
        for start, height in out:
            if merged and merged[-1][0] == start:
                merged.pop()
            if merged and merged[-1][1] == height:
                continue
            merged.append((start, height))
        return Contour(merged)

    def place(self, x: int, w: int, h: int):
        """Support height over [x, x+w) and the contour after committing the block."""
        steps = self._steps
        x2 = x + w
        y = 0
        resume = 0
        prefix = []
        count = len(steps)
        for i in range(count):
            start, height = steps[i]
            end = steps[i + 1][0] if i + 1 < count else None
            if start < x:
                prefix.append(steps[i])
            if start < x2 and (end is None or end > x) and height > y:
                y = height
            if start <= x2 and (end is None or end > x2):
                resume = height
        merged = prefix
        for step in ((x, y + h), (x2, resume)):
            if merged and merged[-1][0] == step[0]:
                merged.pop()
            if not merged or merged[-1][1] != step[1]:
                merged.append(step)
        for step in steps:
            if step[0] > x2:
                if merged[-1][1] != step[1]:
                    merged.append(step)
        out = Contour.__new__(Contour)
        out._steps = tuple(merged)
        return y, out


def contour_place(contour: Contour, x: int, w: int, h: int):
    """Place-and-commit on the skyline: returns (y, updated contour)."""
    return contour.place(x, w, h)


def _dims(label, requirements, rotations):
    req = requirements[label - 1]
    w, h = req.width, req.height
    rotated = bool(rotations and rotations[label - 1] and req.rotatable)
    if rotated:
        w, h = h, w
    return w, h, rotated


def place_bstar(tree: LayoutTree, requirements, rotations=None, snapshot=True) -> Floorplan:
    """Binary-tree placement: root at the bottom-left corner.

    Left child of a: x_b = x_a + w_a.  Right child of a: x_c = x_a, resting
    on the skyline (hence above a).  DFS preorder, left subtree first.
    `snapshot=False` stores the tree without copying (caller hands it over).
    """
    if tree.kind != BINARY:
        raise ValueError("place_bstar needs a binary tree")
    blocks = []
    contour = Contour()
    stack = [(tree.root, 0)]
    while stack:
        node, x = stack.pop()
        w, h, rotated = _dims(node.label, requirements, rotations)
        y, contour = contour.place(x, w, h)
        blocks.append(SpatialBlock(node.label, x, y, w, h, rotated))
        if node.right is not None:
            stack.append((node.right, x))
        if node.left is not None:
            stack.append((node.left, x + w))
    return Floorplan(tuple(blocks), tree.copy() if snapshot else tree, BINARY)


def place_otree(tree: LayoutTree, requirements, rotations=None, snapshot=True) -> Floorplan:
    """N-ary placement: the synthetic root is the zero-width left boundary;
    every child sits right of its parent (x_child = x_parent + w_parent) on
    the skyline.  DFS preorder, children left to right."""
    if tree.kind != NARY:
        raise ValueError("place_otree needs an n-ary tree")
    blocks = []
    contour = Contour()
    stack = [(child, 0) for child in reversed(tree.root.children)]
    while stack:
        node, x = stack.pop()
        w, h, rotated = _dims(node.label, requirements, rotations)
        y, contour = contour.place(x, w, h)
        blocks.append(SpatialBlock(node.label, x, y, w, h, rotated))
        for child in reversed(node.children):
            stack.append((child, x + w))
    return Floorplan(tuple(blocks), tree.copy() if snapshot else tree, NARY)


def place_tree(tree: LayoutTree, requirements, rotations=None) -> Floorplan:
    if tree.kind == BINARY:
        return place_bstar(tree, requirements, rotations)
    return place_otree(tree, requirements, rotations)
