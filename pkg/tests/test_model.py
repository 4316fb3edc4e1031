import pytest

from genfloor.model import (
    AdjacencyGoal,
    Problem,
    SpatialRequirement,
    ValidationError,
    adjacency_count,
    build_standard_tree,
    load_requirements_csv,
    prune_transitive_goals,
    requirements_to_csv,
)
from genfloor.units import MU

HEADER = "id,name,width,height,rotatable,flexible,adjacent_to\n"


def test_single_row_parse():
    reqs, goals = load_requirements_csv(HEADER + "liv,Living,5,4,true,true,\n")
    assert len(reqs) == 1 and goals == []
    req = reqs[0]
    assert req.id == "liv" and req.width == 5 * MU and req.height == 4 * MU
    assert req.rotatable and req.flexible


def test_adjacency_column_and_dedupe():
    content = HEADER + "a,A,2,2,true,true,b\n" + "b,B,2,2,true,true,a;c\n" + "c,C,2,2,true,true,\n"
    reqs, goals = load_requirements_csv(content)
    assert [r.id for r in reqs] == ["a", "b", "c"]
    # a->b and b->a collapse to one goal
    assert sorted(g.pair for g in goals) == [("a", "b"), ("b", "c")]


def test_negative_dimension_names_row_and_column():
    content = HEADER + "a,A,2,2,true,true,\n" + "b,B,-1,2,true,true,\n"
    with pytest.raises(ValidationError, match="row 3.*width"):
        load_requirements_csv(content)


def test_duplicate_id_rejected():
    content = HEADER + "a,A,2,2,true,true,\n" + "a,Again,1,1,true,true,\n"
    with pytest.raises(ValidationError, match="duplicate id"):
        load_requirements_csv(content)


def test_unknown_adjacent_id_rejected():
    content = HEADER + "a,A,2,2,true,true,zz\n"
    with pytest.raises(ValidationError, match="unknown id"):
        load_requirements_csv(content)


def test_priority_column():
    content = (
        "id,name,width,height,rotatable,flexible,adjacent_to,priority\n"
        "a,A,2,2,true,true,b,L2\n"
        "b,B,2,2,true,true,,\n"
    )
    _, goals = load_requirements_csv(content)
    assert goals[0].priority == "L2"


def test_csv_round_trip():
    reqs, goals = load_requirements_csv(
        "id,name,width,height,rotatable,flexible,adjacent_to,priority,anchor_edge,facing\n"
        "bed,Bed,2,3.5,false,false,sofa,L2,north,south\n"
        "sofa,Sofa,2,1,true,true,,,,\n"
    )
    again, goals2 = load_requirements_csv(requirements_to_csv(reqs, goals))
    assert again == reqs
    assert goals2 == goals


def test_anchor_requires_fixed_size():
    with pytest.raises(ValidationError, match="fixed-size"):
        SpatialRequirement.create("bed", "Bed", 2, 3, flexible=True, anchor_edge="north")


def test_goal_normalizes_pair():
    goal = AdjacencyGoal("z", "a")
    assert goal.pair == ("a", "z")
    with pytest.raises(ValidationError):
        AdjacencyGoal("a", "a")


def test_problem_validation():
    reqs = (SpatialRequirement.create("a", "A", 1, 1),)
    with pytest.raises(ValidationError, match="unknown id"):
        Problem(requirements=reqs, goals=(AdjacencyGoal("a", "b"),))
    with pytest.raises(ValidationError, match="at least one"):
        Problem(requirements=())


def test_adjacency_count_is_per_room():
    goals = (AdjacencyGoal("a", "b"), AdjacencyGoal("b", "c"))
    assert adjacency_count(goals) == 4


def test_goals_at_levels_nest():
    reqs = tuple(SpatialRequirement.create(i, i, 1, 1) for i in "abcd")
    goals = (
        AdjacencyGoal("a", "b", "L1"),
        AdjacencyGoal("b", "c", "L2"),
        AdjacencyGoal("c", "d", "L3"),
    )
    problem = Problem(requirements=reqs, goals=goals)
    assert len(problem.goals_at("L1")) == 3
    assert len(problem.goals_at("L2")) == 2
    assert len(problem.goals_at("L3")) == 1


def test_standard_tree_kind_follows_representation():
    reqs = tuple(SpatialRequirement.create(f"r{i}", f"R{i}", 1, 1) for i in range(6))
    binary = build_standard_tree(Problem(requirements=reqs, representation="bstar_ascend_descend"))
    assert binary.kind == "binary" and binary.bfs_order() == [1, 2, 3, 4, 5, 6]
    nary = build_standard_tree(Problem(requirements=reqs, representation="otree_proceeding"))
    assert nary.kind == "nary" and nary.children_of(0) == (1, 2, 3, 4, 5, 6)


def test_prune_transitive_triangle():
    goals = (AdjacencyGoal("a", "b"), AdjacencyGoal("b", "c"), AdjacencyGoal("a", "c"))
    kept = prune_transitive_goals(goals)
    # lexicographic order keeps (a,b) and (a,c); (b,c) closes the triangle
    assert sorted(g.pair for g in kept) == [("a", "b"), ("a", "c")]
    assert all(g.priority == "L3" for g in kept)


def test_prune_result_is_triangle_free():
    import itertools
    import random

    rng = random.Random(5)
    names = [f"r{i}" for i in range(7)]
    for _ in range(50):
        pairs = [p for p in itertools.combinations(names, 2) if rng.random() < 0.5]
        kept = {g.pair for g in prune_transitive_goals(AdjacencyGoal(a, b) for a, b in pairs)}
        for x, y, z in itertools.combinations(names, 3):
            tri = {tuple(sorted((x, y))), tuple(sorted((y, z))), tuple(sorted((x, z)))}
            assert not tri <= kept
