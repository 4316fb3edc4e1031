"""JSON wire formats shared by the library, the CLI and the HTTP service.

One serializer produces the bytes everywhere (sorted keys, compact
separators), so a floorplan saved by the CLI and one fetched from the API
for the same inputs compare equal byte-for-byte.
"""

from __future__ import annotations

import json

from .extend import AllocatedLayout, ExtendedLayout
from .model import (
    AdjacencyGoal,
    Problem,
    Rect,
    SpatialRequirement,
    ValidationError,
)
from .placement import Floorplan, SpatialBlock
from .trees import LayoutTree
from .units import MU, from_mu, to_mu


def to_json_bytes(obj) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def to_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ------------------------------------------------------------------ problem

def problem_to_dict(problem: Problem) -> dict:
    out = {
        "requirements": [
            {
                "id": r.id,
                "name": r.name,
                "width": from_mu(r.width),
                "height": from_mu(r.height),
                "rotatable": r.rotatable,
                "flexible": r.flexible,
                "anchor_edge": r.anchor_edge,
                "facing": r.facing,
            }
            for r in problem.requirements
        ],
        "goals": [
            {"a": g.a, "b": g.b, "priority": g.priority} for g in problem.goals
        ],
        "representation": problem.representation,
        "use_rotation_genes": problem.use_rotation_genes,
        "boundary": None,
    }
    if isinstance(problem.boundary, Rect):
        out["boundary"] = {
            "kind": "rect",
            "x": from_mu(problem.boundary.x),
            "y": from_mu(problem.boundary.y),
            "w": from_mu(problem.boundary.w),
            "h": from_mu(problem.boundary.h),
        }
    elif problem.boundary is not None:
        out["boundary"] = {
            "kind": "polygon",
            "points": [[from_mu(x), from_mu(y)] for x, y in problem.boundary],
        }
    return out


def problem_from_dict(data: dict) -> Problem:
    if not isinstance(data, dict):
        raise ValidationError("problem must be a JSON object")
    try:
        requirements = tuple(
            SpatialRequirement(
                id=str(r["id"]),
                name=str(r.get("name") or r["id"]),
                width=to_mu(r["width"]),
                height=to_mu(r["height"]),
                rotatable=bool(r.get("rotatable", True)),
                flexible=bool(r.get("flexible", True)),
                anchor_edge=r.get("anchor_edge") or None,
                facing=r.get("facing") or None,
            )
            for r in data.get("requirements", [])
        )
        goals = tuple(
            AdjacencyGoal(str(g["a"]), str(g["b"]), str(g.get("priority", "L1")))
            for g in data.get("goals", [])
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed problem JSON: {exc}") from None
    boundary = data.get("boundary")
    if boundary is not None:
        if boundary.get("kind") == "rect":
            boundary = Rect(
                to_mu(boundary.get("x", 0)),
                to_mu(boundary.get("y", 0)),
                to_mu(boundary["w"]),
                to_mu(boundary["h"]),
            )
        elif boundary.get("kind") == "polygon":
            boundary = tuple((to_mu(x), to_mu(y)) for x, y in boundary["points"])
        else:
            raise ValidationError("boundary kind must be rect or polygon")
    return Problem(
        requirements=requirements,
        goals=goals,
        boundary=boundary,
        representation=data.get("representation", "bstar_available_nodes"),
        use_rotation_genes=bool(data.get("use_rotation_genes", False)),
    )


# ---------------------------------------------------------------- floorplan

def floorplan_to_dict(fp: Floorplan, problem: Problem | None = None) -> dict:
    ids = {}
    if problem is not None:
        ids = {i + 1: r.id for i, r in enumerate(problem.requirements)}
    return {
        "representation": fp.representation,
        "blocks": [
            {
                "id": ids.get(b.label, str(b.label)),
                "label": b.label,
                "x": from_mu(b.x),
                "y": from_mu(b.y),
                "w": from_mu(b.w),
                "h": from_mu(b.h),
                "rotated": b.rotated,
            }
            for b in fp.blocks
        ],
        "tree": fp.tree.to_dict() if fp.tree is not None else None,
    }


def floorplan_to_json_bytes(fp: Floorplan, problem: Problem | None = None) -> bytes:
    """Hand-rolled fast path producing exactly the bytes of
    ``to_json_bytes(floorplan_to_dict(fp, problem))`` (asserted by the tests);
    the optimizer decodes thousands of genomes, so this path is hot."""
    ids = {}
    if problem is not None:
        ids = {i + 1: r.id for i, r in enumerate(problem.requirements)}
    parts = ['{"blocks":[']
    first = True
    mu = float(MU)
    for b in fp.blocks:
        if not first:
            parts.append(",")
        first = False
        bid = json.dumps(ids.get(b.label, str(b.label)))
        parts.append(
            f'{{"h":{b.h / mu!r},"id":{bid},"label":{b.label},'
            f'"rotated":{"true" if b.rotated else "false"},'
            f'"w":{b.w / mu!r},"x":{b.x / mu!r},"y":{b.y / mu!r}}}'
        )
    parts.append('],"representation":')
    parts.append(json.dumps(fp.representation))
    parts.append(',"tree":')
    parts.append(_tree_json(fp.tree))
    parts.append("}")
    return "".join(parts).encode()


def _tree_json(tree) -> str:
    if tree is None:
        return "null"
    binary = tree.kind == "binary"

    def node(n, top):
        if n is None:
            return "null"
        label = "null" if (n.label == 0 and not binary) else str(n.label)
        if binary:
            core = f'"label":{label},"left":{node(n.left, False)},"right":{node(n.right, False)}'
            return f'{{"kind":"binary",{core}}}' if top else "{" + core + "}"
        kids = ",".join(node(c, False) for c in n.children)
        if top:
            return f'{{"children":[{kids}],"kind":"nary","label":{label}}}'
        return f'{{"children":[{kids}],"label":{label}}}'

    return node(tree.root, True)


def floorplan_from_dict(data: dict) -> Floorplan:
    blocks = tuple(
        SpatialBlock(
            label=int(b.get("label", i + 1)),
            x=to_mu(b["x"]),
            y=to_mu(b["y"]),
            w=to_mu(b["w"]),
            h=to_mu(b["h"]),
            rotated=bool(b.get("rotated", False)),
        )
        for i, b in enumerate(data.get("blocks", []))
    )
    tree = data.get("tree")
    return Floorplan(
        blocks,
        LayoutTree.from_dict(tree) if tree else None,
        data.get("representation", "unknown"),
    )


# ----------------------------------------------------------------- extended

def extended_to_dict(ex: ExtendedLayout, problem: Problem | None = None,
                     allocated: AllocatedLayout | None = None) -> dict:
    ids = {}
    if problem is not None:
        ids = {i + 1: r.id for i, r in enumerate(problem.requirements)}

    def block(b):
        return {
            "id": ids.get(b.label, str(b.label)),
            "label": b.label,
            "x": from_mu(b.x),
            "y": from_mu(b.y),
            "w": from_mu(b.w),
            "h": from_mu(b.h),
            "rotated": b.rotated,
        }

    out = {
        "boundary": {
            "x": from_mu(ex.boundary.x),
            "y": from_mu(ex.boundary.y),
            "w": from_mu(ex.boundary.w),
            "h": from_mu(ex.boundary.h),
        },
        "penalty": ex.penalty,
        "coverage": ex.coverage,
        "blocks": [block(b) for b in ex.extended_blocks],
    }
    if allocated is not None:
        out["allocated"] = [block(b) for b in allocated.blocks]
        out["infeasible"] = sorted(ids.get(l, str(l)) for l in allocated.infeasible)
    return out
