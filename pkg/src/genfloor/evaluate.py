"""Geometric and topological floorplan evaluators.

Everything runs on exact micro-unit integers; only distances leave integer
land (as floats in model units).  Adjacency means sharing a boundary
segment of positive length: corner contact does not count.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import Rect
from .placement import Floorplan, SpatialBlock
from .units import MU, from_mu


def shared_edge_length(a: SpatialBlock | Rect, b: SpatialBlock | Rect) -> int:
    """Length of the boundary segment two disjoint rectangles share (0 if none)."""
    if a.x2 == b.x or b.x2 == a.x:
        return max(0, min(a.y2, b.y2) - max(a.y, b.y))
    if a.y2 == b.y or b.y2 == a.y:
        return max(0, min(a.x2, b.x2) - max(a.x, b.x))
    return 0


def resulted_adjacency(fp: Floorplan, min_shared: int = 0) -> frozenset:
    """All unordered label pairs whose blocks share an edge longer than `min_shared`."""
    if min_shared < 0:
        raise ValueError("min_shared must be >= 0")
    geom = [(b.label, b.x, b.y, b.x + b.w, b.y + b.h) for b in fp.blocks]
    pairs = set()
    for i in range(len(geom)):
        la, ax, ay, ax2, ay2 = geom[i]
        for j in range(i + 1, len(geom)):
            lb, bx, by, bx2, by2 = geom[j]
            if ax2 == bx or bx2 == ax:
                shared = min(ay2, by2) - max(ay, by)
            elif ay2 == by or by2 == ay:
                shared = min(ax2, bx2) - max(ax, bx)
            else:
                continue
            if shared > min_shared:
                pairs.add((la, lb) if la < lb else (lb, la))
    return frozenset(pairs)


@dataclass(frozen=True)
class AdjacencyReport:
    """Goal-by-goal outcome of comparing resulted against required contacts."""

    resulted: frozenset
    per_goal: tuple  # ((goal, achieved), ...)
    achieved_count: int

    @property
    def achieved_endpoints(self) -> int:
        """Per-room tally: every achieved goal counts once for each of its rooms."""
        return 2 * self.achieved_count

    @property
    def goal_endpoints(self) -> int:
        return 2 * len(self.per_goal)


def adjacency_check(resulted, goals, problem) -> AdjacencyReport:
    """Mark each goal achieved iff its label pair shows up in the resulted set."""
    resulted = frozenset(resulted)
    per_goal = []
    for goal in goals:
        ia, ib = problem.index_of(goal.a), problem.index_of(goal.b)
        pair = (min(ia, ib), max(ia, ib))
        per_goal.append((goal, pair in resulted))
    achieved = sum(1 for _, ok in per_goal if ok)
    return AdjacencyReport(resulted, tuple(per_goal), achieved)


def bounding_area(fp: Floorplan):
    """Smallest enclosing axis-aligned rectangle and its area (mu^2)."""
    if not fp.blocks:
        raise ValueError("empty floorplan has no bounding rectangle")
    x1 = min(b.x for b in fp.blocks)
    y1 = min(b.y for b in fp.blocks)
    x2 = max(b.x2 for b in fp.blocks)
    y2 = max(b.y2 for b in fp.blocks)
    rect = Rect(x1, y1, x2 - x1, y2 - y1)
    return rect, rect.area


def closest_distance(block: SpatialBlock | Rect, others) -> float:
    """Minimum Euclidean gap (model units) from one rectangle to any of the others.

    Zero when they touch or overlap.
    """
    others = tuple(others)
    if not others:
        raise ValueError("closest_distance needs at least one other block")
    best = None
    for other in others:
        dx = max(0, other.x - block.x2, block.x - other.x2)
        dy = max(0, other.y - block.y2, block.y - other.y2)
        d = math.hypot(dx, dy)
        if best is None or d < best:
            best = d
    return best / MU


def total_closest_distance(fp: Floorplan) -> float:
    """Sum over blocks of each block's closest distance to the rest (compactness)."""
    geom = [(b.x, b.y, b.x + b.w, b.y + b.h) for b in fp.blocks]
    m = len(geom)
    if m < 2:
        return 0.0
    best = [None] * m
    for i in range(m):
        ax, ay, ax2, ay2 = geom[i]
        for j in range(i + 1, m):
            bx, by, bx2, by2 = geom[j]
            dx = bx - ax2
            if ax - bx2 > dx:
                dx = ax - bx2
            if dx < 0:
                dx = 0
            dy = by - ay2
            if ay - by2 > dy:
                dy = ay - by2
            if dy < 0:
                dy = 0
            d2 = dx * dx + dy * dy
            if best[i] is None or d2 < best[i]:
                best[i] = d2
            if best[j] is None or d2 < best[j]:
                best[j] = d2
    return sum(math.sqrt(d2) for d2 in best) / MU


# ----------------------------------------------------------- boundary checks

def _point_in_polygon(px: int, py: int, poly) -> bool:
    """On-edge counts as inside; otherwise exact crossing number over ints."""
    m = len(poly)
    inside = False
    for i in range(m):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % m]
        # on this edge?
        cross = (x2 - x1) * (py - y1) - (y2 - y1) * (px - x1)
        if cross == 0 and min(x1, x2) <= px <= max(x1, x2) and min(y1, y2) <= py <= max(y1, y2):
            return True
        if (y1 > py) != (y2 > py):
            # px < x-intersection of edge with the horizontal through py
            lhs = (x2 - x1) * (py - y1) - (px - x1) * (y2 - y1)
            if (lhs > 0) == (y2 > y1):
                inside = not inside
    return inside


def _segment_crosses_interior(p1, p2, rect: Rect) -> bool:
    """Does the open segment p1-p2 meet the open rectangle?  Exact rationals."""
    x1, y1 = p1
    x2, y2 = p2
    t0, t1 = Fraction(0), Fraction(1)
    for coord, lo, hi in ((0, rect.x, rect.x2), (1, rect.y, rect.y2)):
        a = (x1, y1)[coord]
        b = (x2, y2)[coord]
        d = b - a
        if d == 0:
            if not lo < a < hi:
                return False
        else:
            ta = Fraction(lo - a, d)
            tb = Fraction(hi - a, d)
            if ta > tb:
                ta, tb = tb, ta
            t0 = max(t0, ta)
            t1 = min(t1, tb)
            if t0 >= t1:
                return False
    # the open clip interval must meet (0, 1) with positive length
    return t0 < t1


def within_boundary(fp: Floorplan, boundary):
    """Per-block containment in a rectangle or simple polygon.

    A block is inside when all four corners are inside-or-on the boundary and
    no boundary edge crosses the block's interior (which catches notches).
    """
    if boundary is None:
        raise ValueError("no boundary given")
    blocks = fp.blocks
    if isinstance(boundary, Rect):
        per_block = [
            boundary.x <= b.x and b.x2 <= boundary.x2 and boundary.y <= b.y and b.y2 <= boundary.y2
            for b in blocks
        ]
        return all(per_block), per_block
    poly = tuple(boundary)
    if len(poly) < 3:
        raise ValueError("degenerate polygon")
    per_block = []
    for b in blocks:
        corners = ((b.x, b.y), (b.x2, b.y), (b.x2, b.y2), (b.x, b.y2))
        ok = all(_point_in_polygon(px, py, poly) for px, py in corners)
        if ok:
            rect = b.rect
            m = len(poly)
            for i in range(m):
                if _segment_crosses_interior(poly[i], poly[(i + 1) % m], rect):
                    ok = False
                    break
        per_block.append(ok)
    return all(per_block), per_block


def evaluation_report(fp: Floorplan, problem, min_shared: int = 0) -> dict:
    """The JSON-shaped summary the CLI and the HTTP API expose."""
    resulted = resulted_adjacency(fp, min_shared)
    report = adjacency_check(resulted, problem.goals, problem)
    rect, area = bounding_area(fp)
    ids = {i + 1: r.id for i, r in enumerate(problem.requirements)}
    distances = {}
    if len(fp.blocks) > 1:
        for i, block in enumerate(fp.blocks):
            distances[ids[block.label]] = closest_distance(
                block, fp.blocks[:i] + fp.blocks[i + 1 :]
            )
    inside = True
    if problem.boundary is not None:
        inside, _ = within_boundary(fp, problem.boundary)
    return {
        "adjacency": {
            "count": report.achieved_count,
            "endpoint_count": report.achieved_endpoints,
            "per_goal": [
                {"a": g.a, "b": g.b, "priority": g.priority, "achieved": ok}
                for g, ok in report.per_goal
            ],
        },
        "bounding": {"w": from_mu(rect.w), "h": from_mu(rect.h), "area": from_mu(rect.w) * from_mu(rect.h)},
        "distances": distances,
        "inside": inside,
    }
