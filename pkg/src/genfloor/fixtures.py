"""Reference problems with known answers, used by tests and demos.

The residential problem is an 8-room pre-designed floorplan (a full 13x10
dissection).  Its contact graph has 14 room pairs touching, so the per-room
adjacency tally of the full goal set is 28; the high-priority subset keeps
10 pairs (tally 20) and transitive-triangle pruning keeps 8 (tally 16).
"""

from __future__ import annotations

import json
from importlib import resources

from .model import (
    AdjacencyGoal,
    BSTAR_AVAILABLE_NODES,
    OTREE_PROCEEDING,
    Problem,
    SpatialRequirement,
)
from .placement import Floorplan, SpatialBlock
from .units import MU

# id, display name, width, height, pre-designed position (x, y); input order
# is load-bearing (it fixes tree labels and the goal-pruning order)
_RESIDENTIAL8 = (
    ("s1", "Entry", 2, 3, (4, 5)),
    ("s2", "Bedroom 1", 5, 5, (0, 0)),
    ("s3", "Kitchen", 3, 5, (5, 0)),
    ("s4", "Bedroom 2", 4, 5, (0, 5)),
    ("s5", "Bath", 2, 2, (4, 8)),
    ("s6", "Corridor", 2, 5, (6, 5)),
    ("s7", "Living", 5, 7, (8, 0)),
    ("s8", "Dining", 5, 3, (8, 7)),
)

# every touching pair of the pre-design, tagged with its priority tier:
# L3 survives transitive-triangle pruning, L2 adds the designer picks,
# L1 is the full extracted set
_RESIDENTIAL8_GOALS = (
    ("s1", "s2", "L3"),
    ("s1", "s3", "L3"),
    ("s1", "s4", "L3"),
    ("s1", "s5", "L3"),
    ("s1", "s6", "L3"),
    ("s3", "s7", "L3"),
    ("s6", "s7", "L3"),
    ("s6", "s8", "L3"),
    ("s5", "s6", "L2"),
    ("s7", "s8", "L2"),
    ("s2", "s3", "L1"),
    ("s2", "s4", "L1"),
    ("s3", "s6", "L1"),
    ("s4", "s5", "L1"),
)


def residential8_requirements() -> tuple:
    return tuple(
        SpatialRequirement.create(rid, name, w, h) for rid, name, w, h, _ in _RESIDENTIAL8
    )


def residential8(level: str = "L2", representation: str = BSTAR_AVAILABLE_NODES,
                 use_rotation_genes: bool = False) -> Problem:
    """The residential problem with goals at or above the given priority tier."""
    problem = Problem(
        requirements=residential8_requirements(),
        goals=tuple(AdjacencyGoal(a, b, p) for a, b, p in _RESIDENTIAL8_GOALS),
        representation=representation,
        use_rotation_genes=use_rotation_genes,
    )
    return problem.with_goals(problem.goals_at(level))


def residential8_layout() -> Floorplan:
    """The pre-designed floorplan itself; it realizes every one of the 14 contacts."""
    blocks = tuple(
        SpatialBlock(i, x * MU, y * MU, w * MU, h * MU)
        for i, (_, _, w, h, (x, y)) in enumerate(_RESIDENTIAL8, start=1)
    )
    return Floorplan(blocks, None, "predesigned")


def residential8_csv() -> str:
    """The spreadsheet form of the high-priority (L2) residential problem."""
    return resources.files("genfloor").joinpath("data/residential8.csv").read_text()


def abc_requirements() -> tuple:
    """The three-block worked example used across the docs and tests."""
    return (
        SpatialRequirement.create("a", "A", 4, 3),
        SpatialRequirement.create("b", "B", 2, 2),
        SpatialRequirement.create("c", "C", 3, 1),
    )


def abc_problem(representation: str = BSTAR_AVAILABLE_NODES) -> Problem:
    return Problem(
        requirements=abc_requirements(),
        goals=(AdjacencyGoal("a", "b"), AdjacencyGoal("a", "c")),
        representation=representation,
    )


def quad_problem(representation: str = OTREE_PROCEEDING) -> Problem:
    """Small 4-room problem whose optimum is reachable by exhaustive enumeration."""
    return Problem(
        requirements=(
            SpatialRequirement.create("hall", "Hall", 2, 4),
            SpatialRequirement.create("work", "Work", 3, 3),
            SpatialRequirement.create("rest", "Rest", 3, 2),
            SpatialRequirement.create("store", "Store", 2, 2),
        ),
        goals=(
            AdjacencyGoal("hall", "work"),
            AdjacencyGoal("hall", "rest"),
            AdjacencyGoal("hall", "store"),
            AdjacencyGoal("work", "rest"),
        ),
        representation=representation,
    )


def relocation_trace() -> dict:
    """Hand-derived delete-and-reinsert trace for the relocation machinery."""
    text = resources.files("genfloor").joinpath("data/asc_des_case1.json").read_text()
    return json.loads(text)
