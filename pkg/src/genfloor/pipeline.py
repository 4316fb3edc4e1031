"""End-to-end composition: problem + parameters -> placed floorplan."""

from __future__ import annotations

from .model import OTREE_PROCEEDING, Problem, ValidationError
from .perturb import PermutationParams, perturb
from .placement import Floorplan, place_bstar, place_otree
from .trees import BINARY, NARY, standard_tree

_STD_CACHE: dict = {}


def _standard(kind: str, n: int):
    # standard trees are never mutated (perturb copies), so share per shape
    key = (kind, n)
    tree = _STD_CACHE.get(key)
    if tree is None:
        tree = _STD_CACHE[key] = standard_tree(kind, n)
    return tree


def generate_floorplan(problem: Problem, params, rotations=None) -> Floorplan:
    """Build the standard tree, perturb it, and place the result.

    `params` may be a PermutationParams or a raw value list for the
    problem's representation; `rotations` is an optional per-requirement
    boolean vector applied before placement (ignored for non-rotatable
    requirements, and only meaningful when the caller opted into rotation).
    """
    if not isinstance(params, PermutationParams):
        params = PermutationParams.create(problem.representation, params, problem.n)
    elif params.method != problem.representation:
        raise ValidationError(
            f"params are for {params.method}, problem uses {problem.representation}"
        )
    if rotations is not None:
        rotations = tuple(bool(r) for r in rotations)
        if len(rotations) != problem.n:
            raise ValidationError(f"expected {problem.n} rotation flags")
    if problem.representation == OTREE_PROCEEDING:
        tree = perturb(_standard(NARY, problem.n), params)
        fp = place_otree(tree, problem.requirements, rotations, snapshot=False)
    else:
        tree = perturb(_standard(BINARY, problem.n), params)
        fp = place_bstar(tree, problem.requirements, rotations, snapshot=False)
    return Floorplan(fp.blocks, fp.tree, problem.representation)
