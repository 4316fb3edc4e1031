"""Problem definition: spatial requirements, adjacency goals, boundary.

The requirement list's input order is load-bearing: it assigns the tree
labels D1..Dn and is the tie-break order for every deterministic rule in
the package.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field, replace

from .trees import BINARY, NARY, LayoutTree, standard_tree
from .units import to_mu

OTREE_PROCEEDING = "otree_proceeding"
BSTAR_ASCEND_DESCEND = "bstar_ascend_descend"
BSTAR_AVAILABLE_NODES = "bstar_available_nodes"
METHODS = (OTREE_PROCEEDING, BSTAR_ASCEND_DESCEND, BSTAR_AVAILABLE_NODES)

PRIORITIES = ("L1", "L2", "L3")
EDGES = ("north", "south", "east", "west")
CSV_HEADER = ["id", "name", "width", "height", "rotatable", "flexible",
              "adjacent_to", "priority", "anchor_edge", "facing"]


class ValidationError(ValueError):
    """Raised for malformed input data; the CLI maps it to exit code 2."""


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle in micro-units."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.w <= 0 or self.h <= 0:
            raise ValidationError(f"degenerate rectangle: {self.w}x{self.h}")

    @property
    def x2(self) -> int:
        return self.x + self.w

    @property
    def y2(self) -> int:
        return self.y + self.h

    @property
    def area(self) -> int:
        return self.w * self.h


@dataclass(frozen=True)
class SpatialRequirement:
    """One space: dimensions (micro-units), flexibility and placement wishes."""

    id: str
    name: str
    width: int
    height: int
    rotatable: bool = True
    flexible: bool = True
    anchor_edge: str | None = None
    facing: str | None = None

    def __post_init__(self):
        if not self.id:
            raise ValidationError("requirement id must be non-empty")
        if self.width <= 0 or self.height <= 0:
            raise ValidationError(f"requirement {self.id!r}: dimensions must be positive")
        for attr in ("anchor_edge", "facing"):
            value = getattr(self, attr)
            if value is not None and value not in EDGES:
                raise ValidationError(f"requirement {self.id!r}: bad {attr} {value!r}")
            if value is not None and self.flexible:
                raise ValidationError(
                    f"requirement {self.id!r}: {attr} applies to fixed-size blocks only"
                )

    @classmethod
    def create(cls, id, name, width, height, **kwargs) -> "SpatialRequirement":
        """Build from lengths given in model units rather than micro-units."""
        return cls(id, name, to_mu(width), to_mu(height), **kwargs)


@dataclass(frozen=True, order=True)
class AdjacencyGoal:
    """An unordered pair of requirement ids that should share an edge."""

    a: str
    b: str
    priority: str = "L1"

    def __post_init__(self):
        if self.a == self.b:
            raise ValidationError(f"adjacency goal of {self.a!r} with itself")
        if self.priority not in PRIORITIES:
            raise ValidationError(f"bad priority {self.priority!r}")
        if self.a > self.b:  # normalize so the unordered pair has one spelling
            lo, hi = self.b, self.a
            object.__setattr__(self, "a", lo)
            object.__setattr__(self, "b", hi)

    @property
    def pair(self) -> tuple:
        return (self.a, self.b)

    def involves(self, rid: str) -> bool:
        return rid == self.a or rid == self.b


@dataclass(frozen=True)
class Problem:
    """The full layout problem: spaces, goals, optional boundary, encoding choice."""

    requirements: tuple
    goals: tuple = ()
    boundary: object = None  # Rect, polygon point tuple, or None
    representation: str = BSTAR_AVAILABLE_NODES
    use_rotation_genes: bool = False

    def __post_init__(self):
        object.__setattr__(self, "requirements", tuple(self.requirements))
        object.__setattr__(self, "goals", tuple(self.goals))
        if not self.requirements:
            raise ValidationError("a problem needs at least one requirement")
        ids = [r.id for r in self.requirements]
        if len(set(ids)) != len(ids):
            dup = sorted({i for i in ids if ids.count(i) > 1})
            raise ValidationError(f"duplicate requirement ids: {dup}")
        known = set(ids)
        pairs = set()
        for goal in self.goals:
            for rid in goal.pair:
                if rid not in known:
                    raise ValidationError(f"goal references unknown id {rid!r}")
            if goal.pair in pairs:
                raise ValidationError(f"duplicate goal for pair {goal.pair}")
            pairs.add(goal.pair)
        if self.representation not in METHODS:
            raise ValidationError(f"unknown representation {self.representation!r}")
        if self.boundary is not None and not isinstance(self.boundary, Rect):
            poly = tuple((int(x), int(y)) for x, y in self.boundary)
            if len(poly) < 3:
                raise ValidationError("polygon boundary needs at least 3 points")
            if _self_intersects(poly):
                raise ValidationError("polygon boundary is self-intersecting")
            object.__setattr__(self, "boundary", poly)
        object.__setattr__(
            self, "_labels", {r.id: i for i, r in enumerate(self.requirements, start=1)}
        )

    @property
    def n(self) -> int:
        return len(self.requirements)

    def index_of(self, rid: str) -> int:
        """1-based label of a requirement id."""
        try:
            return self._labels[rid]
        except KeyError:
            raise ValidationError(f"unknown requirement id {rid!r}") from None

    def requirement(self, rid: str) -> SpatialRequirement:
        return self.requirements[self.index_of(rid) - 1]

    def goals_at(self, level: str) -> tuple:
        """Goals whose priority is at or above the given level (L1 <= L2 <= L3)."""
        if level not in PRIORITIES:
            raise ValidationError(f"bad priority {level!r}")
        cut = PRIORITIES.index(level)
        return tuple(g for g in self.goals if PRIORITIES.index(g.priority) >= cut)

    def with_goals(self, goals) -> "Problem":
        return replace(self, goals=tuple(goals))


def adjacency_count(goals) -> int:
    """Per-room goal tally: each unordered goal counts once for both rooms."""
    return 2 * len(tuple(goals))


def build_standard_tree(problem: Problem) -> LayoutTree:
    """The canonical initial tree for the problem's encoding.

    Binary (complete, D1 at the root) for the two binary-tree methods; a
    single level under a synthetic root for the O-Tree method.  Label order
    is the requirement input order.
    """
    kind = NARY if problem.representation == OTREE_PROCEEDING else BINARY
    return standard_tree(kind, problem.n)


def prune_transitive_goals(goals) -> tuple:
    """Drop goals that close a triangle over already-kept goals.

    Pairs are processed in lexicographic order; a pair {a, b} is dropped when
    some c with kept {a, c} and {c, b} already links the two rooms.  The
    result is triangle-free and deterministic, and survivors are re-tagged L3.
    """
    ordered = sorted(goals, key=lambda g: g.pair)
    kept = []
    nbrs: dict = {}
    for goal in ordered:
        a, b = goal.pair
        if nbrs.get(a, set()) & nbrs.get(b, set()):
            continue
        kept.append(replace(goal, priority="L3"))
        nbrs.setdefault(a, set()).add(b)
        nbrs.setdefault(b, set()).add(a)
    return tuple(kept)


# ------------------------------------------------------------------ CSV import

_TRUE = {"true", "t", "yes", "y", "1"}
_FALSE = {"false", "f", "no", "n", "0", ""}


def _parse_bool(text: str, row: int, column: str) -> bool:
    low = text.strip().lower()
    if low in _TRUE:
        return True
    if low in _FALSE:
        return False
    raise ValidationError(f"row {row}, column {column!r}: bad boolean {text!r}")


def _parse_length(text: str, row: int, column: str) -> int:
    try:
        mu = to_mu(text.strip())
    except ValueError:
        raise ValidationError(f"row {row}, column {column!r}: bad length {text!r}") from None
    if mu <= 0:
        raise ValidationError(f"row {row}, column {column!r}: length must be positive")
    return mu


def load_requirements_csv(content: str):
    """Parse the requirement spreadsheet.

    Schema: ``id,name,width,height,rotatable,flexible,adjacent_to[,priority,
    anchor_edge,facing]`` where ``adjacent_to`` is a ``;``-separated id list
    and ``priority`` tags that row's declared goals (default L1).  Returns
    ``(requirements, goals)`` with input order preserved; a pair declared
    from both of its rows is deduplicated to one goal.
    """
    reader = csv.reader(io.StringIO(content))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows:
        raise ValidationError("empty CSV")
    header = [cell.strip().lower() for cell in rows[0]]
    if header[: len(CSV_HEADER)] != CSV_HEADER[: len(header)] or len(header) < 7:
        raise ValidationError(
            "bad CSV header; expected " + ",".join(CSV_HEADER[:7]) + "[,priority,anchor_edge,facing]"
        )

    requirements = []
    declared = []  # (row_number, id, [other ids], priority)
    seen = set()
    for number, row in enumerate(rows[1:], start=2):
        row = list(row) + [""] * (len(CSV_HEADER) - len(row))
        rid = row[0].strip()
        if not rid:
            raise ValidationError(f"row {number}, column 'id': empty id")
        if rid in seen:
            raise ValidationError(f"row {number}, column 'id': duplicate id {rid!r}")
        seen.add(rid)
        flexible = _parse_bool(row[5], number, "flexible")
        try:
            req = SpatialRequirement(
                id=rid,
                name=row[1].strip() or rid,
                width=_parse_length(row[2], number, "width"),
                height=_parse_length(row[3], number, "height"),
                rotatable=_parse_bool(row[4], number, "rotatable"),
                flexible=flexible,
                anchor_edge=row[8].strip().lower() or None,
                facing=row[9].strip().lower() or None,
            )
        except ValidationError as exc:
            if str(exc).startswith("row "):
                raise
            raise ValidationError(f"row {number}: {exc}") from None
        requirements.append(req)
        others = [part.strip() for part in row[6].split(";") if part.strip()]
        priority = row[7].strip().upper() or "L1"
        if priority not in PRIORITIES:
            raise ValidationError(f"row {number}, column 'priority': bad value {row[7]!r}")
        if others:
            declared.append((number, rid, others, priority))

    goals = []
    pairs = set()
    for number, rid, others, priority in declared:
        for other in others:
            if other not in seen:
                raise ValidationError(
                    f"row {number}, column 'adjacent_to': unknown id {other!r}"
                )
            if other == rid:
                raise ValidationError(
                    f"row {number}, column 'adjacent_to': {rid!r} adjacent to itself"
                )
            key = tuple(sorted((rid, other)))
            if key in pairs:
                continue  # declared once from each side: one goal
            pairs.add(key)
            goals.append(AdjacencyGoal(rid, other, priority))
    return requirements, goals


def requirements_to_csv(requirements, goals=()) -> str:
    """Inverse of :func:`load_requirements_csv`, field-for-field."""
    from .units import fmt_mu

    by_first: dict = {}
    for goal in sorted(goals, key=lambda g: g.pair):
        by_first.setdefault(goal.a, []).append(goal)
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for req in requirements:
        mine = by_first.get(req.id, [])
        priority = mine[0].priority if mine else ""
        writer.writerow(
            [
                req.id,
                req.name,
                fmt_mu(req.width),
                fmt_mu(req.height),
                str(req.rotatable).lower(),
                str(req.flexible).lower(),
                ";".join(g.b for g in mine),
                priority,
                req.anchor_edge or "",
                req.facing or "",
            ]
        )
    return out.getvalue()


# ------------------------------------------------------------ polygon sanity

def _orient(o, a, b) -> int:
    v = (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    return (v > 0) - (v < 0)


def _segments_cross(p1, p2, q1, q2) -> bool:
    d1 = _orient(q1, q2, p1)
    d2 = _orient(q1, q2, p2)
    d3 = _orient(p1, p2, q1)
    d4 = _orient(p1, p2, q2)
    return d1 * d2 < 0 and d3 * d4 < 0


def _self_intersects(poly) -> bool:
    m = len(poly)
    edges = [(poly[i], poly[(i + 1) % m]) for i in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            if j == i or (j + 1) % m == i or (i + 1) % m == j:
                continue  # shared endpoints are fine
            if _segments_cross(*edges[i], *edges[j]):
                return True
    return False
