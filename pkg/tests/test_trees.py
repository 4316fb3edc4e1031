import pytest

from genfloor.trees import LayoutTree, standard_tree


def test_standard_binary_levels():
    tree = standard_tree("binary", 6)
    assert tree.bfs_order() == [1, 2, 3, 4, 5, 6]
    assert tree.children_of(1) == (2, 3)
    assert tree.children_of(2) == (4, 5)
    assert tree.children_of(3) == (6,)


def test_standard_binary_heap_indexing():
    tree = standard_tree("binary", 11)
    for label in range(1, 12):
        kids = set(tree.children_of(label))
        expect = {k for k in (2 * label, 2 * label + 1) if k <= 11}
        assert kids == expect


def test_standard_nary_single_level():
    tree = standard_tree("nary", 6)
    assert tree.children_of(0) == (1, 2, 3, 4, 5, 6)
    assert tree.dfs_order() == [0, 1, 2, 3, 4, 5, 6]


def test_standard_single_node():
    tree = standard_tree("binary", 1)
    assert tree.bfs_order() == [1]
    assert tree.children_of(1) == ()


def test_standard_tree_pure_function():
    assert standard_tree("binary", 7) == standard_tree("binary", 7)
    assert standard_tree("nary", 7) == standard_tree("nary", 7)
    assert standard_tree("binary", 7) != standard_tree("binary", 6)


def test_dfs_left_subtree_first():
    tree = standard_tree("binary", 3)
    # move D3 under D2's left slot
    node3 = tree._node(3)
    tree.detach_leaf(3)
    tree.attach(2, "left", 3)
    assert tree.dfs_order() == [1, 2, 3]
    assert node3.parent.label == 2


def test_bfs_chain():
    tree = standard_tree("binary", 3)
    tree.detach_leaf(3)
    tree.attach(2, "left", 3)
    # now a chain 1 -> 2 -> 3 on left slots
    tree.swap_positions(2, 2)
    assert tree.bfs_order() == [1, 2, 3]


def test_is_descendant():
    tree = standard_tree("binary", 6)
    assert not tree.is_descendant(1, 1)
    assert tree.is_descendant(2, 5)
    assert not tree.is_descendant(3, 4)
    assert tree.is_descendant(1, 6)
    with pytest.raises(ValueError):
        tree.is_descendant(1, 99)


def test_orders_are_permutations():
    tree = standard_tree("binary", 9)
    assert sorted(tree.dfs_order()) == list(range(1, 10))
    assert sorted(tree.bfs_order()) == list(range(1, 10))
    nary = standard_tree("nary", 9)
    assert sorted(nary.dfs_order()) == list(range(0, 10))
    assert sorted(nary.bfs_order()) == list(range(0, 10))


def test_swap_positions_keeps_shape():
    tree = standard_tree("binary", 6)
    tree.swap_positions(2, 6)
    assert tree.bfs_order() == [1, 6, 3, 4, 5, 2]
    assert tree.children_of(6) == (4, 5)
    tree.validate()


def test_reparent_subtree():
    tree = standard_tree("nary", 4)
    tree.reparent_subtree(2, 1)
    assert tree.children_of(0) == (1, 3, 4)
    assert tree.children_of(1) == (2,)
    tree.reparent_subtree(1, 4)  # moves the subtree {1, 2}
    assert tree.children_of(4) == (1,)
    assert tree.children_of(1) == (2,)
    tree.validate()


def test_json_round_trip_binary():
    tree = standard_tree("binary", 5)
    tree.swap_positions(1, 4)
    data = tree.to_dict()
    assert data["kind"] == "binary"
    back = LayoutTree.from_dict(data)
    assert back == tree


def test_json_round_trip_nary():
    tree = standard_tree("nary", 4)
    tree.reparent_subtree(3, 1)
    data = tree.to_dict()
    assert data["label"] is None  # synthetic root carries no block
    back = LayoutTree.from_dict(data)
    assert back == tree


def test_copy_is_independent():
    tree = standard_tree("binary", 4)
    clone = tree.copy()
    clone.swap_positions(1, 2)
    assert tree.bfs_order() == [1, 2, 3, 4]
    assert clone.bfs_order() == [2, 1, 3, 4]
