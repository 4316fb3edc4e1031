"""genfloor: tree-encoded rectangular space layout generation and search.

Rooms are encoded as perturbed trees (ordered n-ary or binary), decoded to
non-overlapping rectangle packings by a skyline contour rule, scored by
geometric and topological evaluators, and searched with a seeded NSGA-II.
"""

from .model import (
    AdjacencyGoal,
    BSTAR_ASCEND_DESCEND,
    BSTAR_AVAILABLE_NODES,
    METHODS,
    OTREE_PROCEEDING,
    Problem,
    Rect,
    SpatialRequirement,
    ValidationError,
    adjacency_count,
    build_standard_tree,
    load_requirements_csv,
    prune_transitive_goals,
)
from .perturb import (
    PermutationParams,
    available_targets,
    identity_params,
    perturb,
    perturb_ascend_descend,
    perturb_available_nodes,
    perturb_proceeding,
)
from .pipeline import generate_floorplan
from .placement import Contour, Floorplan, SpatialBlock, contour_place, place_bstar, place_otree
from .trees import LayoutTree, standard_tree
from .units import MU, from_mu, to_mu

__version__ = "0.1.0"

__all__ = [
    "AdjacencyGoal",
    "BSTAR_ASCEND_DESCEND",
    "BSTAR_AVAILABLE_NODES",
    "Contour",
    "Floorplan",
    "LayoutTree",
    "METHODS",
    "MU",
    "OTREE_PROCEEDING",
    "PermutationParams",
    "Problem",
    "Rect",
    "SpatialBlock",
    "SpatialRequirement",
    "ValidationError",
    "adjacency_count",
    "available_targets",
    "build_standard_tree",
    "contour_place",
    "from_mu",
    "generate_floorplan",
    "identity_params",
    "load_requirements_csv",
    "perturb",
    "perturb_ascend_descend",
    "perturb_available_nodes",
    "perturb_proceeding",
    "place_bstar",
    "place_otree",
    "prune_transitive_goals",
    "standard_tree",
    "to_mu",
]
