"""Deterministic SVG rendering: floorplans, adjacency bubble diagrams, trees.

Pure text functions: no timestamps, no randomness, stable float formatting,
so equal inputs give byte-identical output.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .evaluate import adjacency_check, resulted_adjacency
from .placement import Floorplan
from .trees import BINARY, LayoutTree
from .units import MU


@dataclass(frozen=True)
class RenderSpec:
    size: int = 480
    margin: int = 24
    achieved_color: str = "#2e7d32"
    missed_color: str = "#c62828"
    block_fill: str = "#e8eef7"
    block_stroke: str = "#1f3552"
    font: str = "11px sans-serif"

    def __post_init__(self):
        if self.size <= 0:
            raise ValueError("render size must be positive")


def _f(value: float) -> str:
    text = f"{value:.2f}"
    return "0.00" if text == "-0.00" else text


def _svg(width: float, height: float, body: list) -> str:
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_f(width)}" '
        f'height="{_f(height)}" viewBox="0 0 {_f(width)} {_f(height)}">'
    )
    return "\n".join([head, *body, "</svg>"]) + "\n"


def _world_to_px(fp_blocks, spec: RenderSpec):
    x1 = min(b.x for b in fp_blocks)
    y1 = min(b.y for b in fp_blocks)
    x2 = max(b.x2 for b in fp_blocks)
    y2 = max(b.y2 for b in fp_blocks)
    span = max(x2 - x1, y2 - y1, 1)
    scale = (spec.size - 2 * spec.margin) / span
    width = (x2 - x1) * scale + 2 * spec.margin
    height = (y2 - y1) * scale + 2 * spec.margin

    def px(x, y):  # flip y: world up = screen up
        return (spec.margin + (x - x1) * scale, height - spec.margin - (y - y1) * scale)

    return px, width, height, scale


def render_floorplan_svg(fp: Floorplan, spec: RenderSpec = RenderSpec(), names=None) -> str:
    """One labeled rectangle per block, viewBox fit to the bounding rect."""
    if not fp.blocks:
        raise ValueError("cannot render an empty floorplan")
    px, width, height, scale = _world_to_px(fp.blocks, spec)
    body = []
    for b in fp.blocks:
        left, bottom = px(b.x, b.y)
        _, top = px(b.x, b.y2)
        body.append(
            f'<rect x="{_f(left)}" y="{_f(top)}" width="{_f(b.w * scale)}" '
            f'height="{_f(b.h * scale)}" fill="{spec.block_fill}" '
            f'stroke="{spec.block_stroke}" stroke-width="1.5"/>'
        )
        cx, cy = px(b.x + b.w / 2, b.y + b.h / 2)
        name = names.get(b.label, str(b.label)) if names else str(b.label)
        body.append(
            f'<text x="{_f(cx)}" y="{_f(cy)}" text-anchor="middle" '
            f'dominant-baseline="middle" style="font:{spec.font}">{name}</text>'
        )
    return _svg(width, height, body)


def render_bubble_svg(fp: Floorplan, goals, problem, spec: RenderSpec = RenderSpec()) -> str:
    """One circle per block at its centroid; one edge per goal, colored by
    whether the placed layout achieves that contact."""
    if not fp.blocks:
        raise ValueError("cannot render an empty floorplan")
    report = adjacency_check(resulted_adjacency(fp), goals, problem)
    px, width, height, scale = _world_to_px(fp.blocks, spec)
    ids = {i + 1: r.id for i, r in enumerate(problem.requirements)}
    centers = {}
    for b in fp.blocks:
        centers[b.label] = px(b.x + b.w / 2, b.y + b.h / 2)
    body = []
    for goal, achieved in report.per_goal:
        a = centers[problem.index_of(goal.a)]
        b = centers[problem.index_of(goal.b)]
        color = spec.achieved_color if achieved else spec.missed_color
        body.append(
            f'<line x1="{_f(a[0])}" y1="{_f(a[1])}" x2="{_f(b[0])}" y2="{_f(b[1])}" '
            f'stroke="{color}" stroke-width="2.5" class="{"achieved" if achieved else "missed"}"/>'
        )
    for b in fp.blocks:
        cx, cy = centers[b.label]
        r = max(8.0, math.sqrt((b.w / MU) * (b.h / MU)) * scale * MU / 14)
        body.append(
            f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="{_f(r)}" fill="{spec.block_fill}" '
            f'stroke="{spec.block_stroke}" stroke-width="1.5"/>'
        )
        body.append(
            f'<text x="{_f(cx)}" y="{_f(cy)}" text-anchor="middle" '
            f'dominant-baseline="middle" style="font:{spec.font}">{ids[b.label]}</text>'
        )
    return _svg(width, height, body)


def render_tree_svg(tree: LayoutTree, spec: RenderSpec = RenderSpec()) -> str:
    """Layered tree drawing; binary slots keep left/right sides distinct."""
    # x from in-order walk (binary) or leaf ordering (n-ary), y from depth
    positions = {}
    depth_max = 0

    if tree.kind == BINARY:
        counter = [0]

        def walk(node, depth):
            nonlocal depth_max
            depth_max = max(depth_max, depth)
            if node.left is not None:
                walk(node.left, depth + 1)
            positions[node.label] = (counter[0], depth)
            counter[0] += 1
            if node.right is not None:
                walk(node.right, depth + 1)

        walk(tree.root, 0)
        slots = counter[0]
    else:
        # n-ary: leaves get consecutive x, internal nodes center over children
        next_leaf = [0]

        def walk(node, depth):
            nonlocal depth_max
            depth_max = max(depth_max, depth)
            if not node.children:
                x = float(next_leaf[0])
                next_leaf[0] += 1
            else:
                xs = [walk(c, depth + 1) for c in node.children]
                x = sum(xs) / len(xs)
            positions[node.label] = (x, depth)
            return x

        walk(tree.root, 0)
        slots = max(next_leaf[0], 1)

    inner = spec.size - 2 * spec.margin
    dx = inner / max(slots - 1, 1)
    dy = inner / max(depth_max, 1) if depth_max else 0
    height = spec.margin * 2 + dy * depth_max

    def px(label):
        x, depth = positions[label]
        return (spec.margin + x * dx, spec.margin + depth * dy)

    body = []
    for label in sorted(positions):
        node = tree._node(label)
        if node.parent is not None:
            x1, y1 = px(node.parent.label)
            x2, y2 = px(label)
            body.append(
                f'<line x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
                f'stroke="{spec.block_stroke}" stroke-width="1.5"/>'
            )
    for label in sorted(positions):
        cx, cy = px(label)
        name = "" if label == 0 and tree.kind != BINARY else str(label)
        body.append(
            f'<circle cx="{_f(cx)}" cy="{_f(cy)}" r="12" fill="{spec.block_fill}" '
            f'stroke="{spec.block_stroke}" stroke-width="1.5"/>'
        )
        body.append(
            f'<text x="{_f(cx)}" y="{_f(cy)}" text-anchor="middle" '
            f'dominant-baseline="middle" style="font:{spec.font}">{name}</text>'
        )
    return _svg(spec.size, height, body)
