import itertools
import random

import pytest

from genfloor.fixtures import abc_requirements, relocation_trace
from genfloor.model import ValidationError
from genfloor.perturb import (
    PermutationParams,
    TargetDescriptor,
    apply_relocation,
    ascend_target,
    available_targets,
    descend_target,
    identity_params,
    perturb_ascend_descend,
    perturb_available_nodes,
    perturb_proceeding,
)
from genfloor.placement import place_bstar
from genfloor.trees import LayoutTree, standard_tree
from genfloor.units import MU


class TestProceeding:
    def test_chain(self):
        tree = perturb_proceeding(standard_tree("nary", 3), [0, 1, 2])
        assert tree.structure() == (0, (1, (2, (3,))))

    def test_identity_discards_all(self):
        std = standard_tree("nary", 3)
        assert perturb_proceeding(std, [1, 2, 3]) == std

    def test_descendant_conflict_discards(self):
        tree = perturb_proceeding(standard_tree("nary", 3), [2, 1, 3])
        assert tree.structure() == (0, (2, (1,)), (3,))

    def test_reparent_to_parent_moves_rightmost(self):
        tree = perturb_proceeding(standard_tree("nary", 3), [0, 2, 3])
        # step 1: D1 re-hangs under D0 again, landing after D3
        assert tree.children_of(0) == (2, 3, 1)

    def test_out_of_domain_rejected_before_any_step(self):
        with pytest.raises(ValidationError):
            perturb_proceeding(standard_tree("nary", 3), [0, 4, 0])
        with pytest.raises(ValidationError):
            perturb_proceeding(standard_tree("nary", 3), [0, 1])

    def test_no_cycles_fuzz(self):
        rng = random.Random(3)
        std = standard_tree("nary", 6)
        for _ in range(500):
            values = [rng.randint(0, 6) for _ in range(6)]
            tree = perturb_proceeding(std, values)
            tree.validate()
            assert sorted(tree.labels()) == list(range(7))


class TestAscendDescend:
    def test_half_up_is_noop(self):
        std = standard_tree("binary", 6)
        assert ascend_target(std, 5, 1) is None

    def test_single_step_up(self):
        std = standard_tree("binary", 6)
        assert ascend_target(std, 5, 2) == (2, False)

    def test_root_clamp(self):
        std = standard_tree("binary", 6)
        assert ascend_target(std, 5, 18) == (1, False)

    def test_descend_zero_swaps_in_place(self):
        std = standard_tree("binary", 6)
        assert descend_target(std, (2, False), 0) == TargetDescriptor("swap", 2)

    def test_descend_walks_level_order(self):
        std = standard_tree("binary", 6)
        assert descend_target(std, (2, False), 4) == TargetDescriptor("swap", 4)

    def test_descend_half_selects_ceiling_edge(self):
        std = standard_tree("binary", 6)
        assert descend_target(std, (2, False), 3) == TargetDescriptor("insert_above", 4)

    def test_all_half_pairs_are_identity(self):
        std = standard_tree("binary", 3)
        assert perturb_ascend_descend(std, [(0.5, 0.5)] * 3) == std

    def test_swap_with_root(self):
        std = standard_tree("binary", 3)
        tree = perturb_ascend_descend(std, [(0.5, 0.5), (1, 0), (0.5, 0.5)])
        assert tree.structure() == (2, (1, None, None), (3, None, None))
        fp = place_bstar(tree, abc_requirements())
        assert [(b.label, b.x // MU, b.y // MU) for b in fp.blocks] == [
            (2, 0, 0),
            (1, 2, 0),
            (3, 0, 3),
        ]

    def test_up_clamp_equivalence(self):
        std = standard_tree("binary", 3)
        a = perturb_ascend_descend(std, [(0.5, 0.5), (1, 0), (0.5, 0.5)])
        b = perturb_ascend_descend(std, [(0.5, 0.5), (9, 0), (0.5, 0.5)])
        assert a == b

    def test_clamp_equivalence_any_descend(self):
        std = standard_tree("binary", 6)
        for down in (0, 1, 3, 4):
            results = {
                perturb_ascend_descend(
                    std, [(0.5, 0.5)] * 4 + [(up, down / 2)] + [(0.5, 0.5)]
                ).structure()
                for up in (2, 3, 5, 9)  # all exceed D5's depth
            }
            assert len(results) == 1


class TestAvailableNodes:
    def test_four_targets_per_node(self):
        for n in (1, 3, 6):
            targets = available_targets(standard_tree("binary", n))
            assert len(targets) == 4 * n

    def test_target_order(self):
        targets = available_targets(standard_tree("binary", 3))
        assert [t.anchor for t in targets] == [1, 1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3]
        assert [t.kind for t in targets[:4]] == [
            "swap",
            "insert_above",
            "attach_or_insert_left",
            "attach_or_insert_right",
        ]

    def test_identity_parameters(self):
        std = standard_tree("binary", 5)
        assert perturb_available_nodes(std, identity_params("bstar_available_nodes", 5)) == std

    def test_single_node_all_noop(self):
        std = standard_tree("binary", 1)
        for doubled in range(5):
            assert perturb_available_nodes(std, PermutationParams(
                "bstar_available_nodes", (doubled,))) == std

    def test_exhaustive_n2_bounds(self):
        std = standard_tree("binary", 2)
        reqs = abc_requirements()[:2]
        shapes = set()
        for v1, v2 in itertools.product(range(9), repeat=2):
            tree = perturb_available_nodes(std, PermutationParams(
                "bstar_available_nodes", (v1, v2)))
            tree.validate()
            shapes.add(tree.structure())
            fp = place_bstar(tree, reqs)
            a, b = fp.blocks
            assert not (
                min(a.x2, b.x2) - max(a.x, b.x) > 0 and min(a.y2, b.y2) - max(a.y, b.y) > 0
            )
        assert len(shapes) <= (4 * 2) ** 2

    def test_domain_validation(self):
        with pytest.raises(ValidationError):
            PermutationParams.create("bstar_available_nodes", [0, 0.3, 0], 3)
        with pytest.raises(ValidationError):
            PermutationParams.create("bstar_available_nodes", [0, 7, 0], 3)


class TestApplyRelocation:
    def test_self_swap_is_noop(self):
        std = standard_tree("binary", 3)
        tree = std.copy()
        apply_relocation(tree, 1, TargetDescriptor("swap", 1))
        assert tree == std

    def test_leaf_delete_empties_slot(self):
        tree = standard_tree("binary", 3)
        apply_relocation(tree, 2, TargetDescriptor("attach_or_insert_right", 3))
        assert tree.children_of(1) == (3,)
        assert tree.left_of(1) is None

    def test_reference_trace(self):
        trace = relocation_trace()
        tree = LayoutTree.from_dict(trace["before"])
        apply_relocation(
            tree, trace["active"],
            TargetDescriptor(trace["target"]["kind"], trace["target"]["anchor"]),
        )
        assert tree == LayoutTree.from_dict(trace["after"])

    def test_insert_between_keeps_slot_kind(self):
        tree = standard_tree("binary", 7)
        # relocate D7 between D2 and its left child D4
        apply_relocation(tree, 7, TargetDescriptor("attach_or_insert_left", 2))
        assert tree.left_of(2) == 7
        assert tree.left_of(7) == 4
        tree.validate()

    def test_insert_above_root_makes_new_root(self):
        tree = standard_tree("binary", 3)
        apply_relocation(tree, 3, TargetDescriptor("insert_above", 1))
        assert tree.root.label == 3
        assert tree.left_of(3) == 1
        tree.validate()

    def test_unknown_anchor_errors(self):
        tree = standard_tree("binary", 3)
        with pytest.raises(ValidationError):
            apply_relocation(tree, 1, TargetDescriptor("swap", 42))

    def test_malformed_kind_errors(self):
        tree = standard_tree("binary", 3)
        with pytest.raises(ValidationError):
            apply_relocation(tree, 1, TargetDescriptor("sideways", 2))

    def test_label_conservation_fuzz(self):
        rng = random.Random(17)
        kinds = ["swap", "insert_above", "attach_or_insert_left", "attach_or_insert_right"]
        for _ in range(800):
            n = rng.randint(1, 8)
            tree = standard_tree("binary", n)
            for _ in range(6):
                active = rng.randint(1, n)
                anchor = rng.randint(1, n)
                apply_relocation(tree, active, TargetDescriptor(rng.choice(kinds), anchor))
                tree.validate()
                assert sorted(tree.labels()) == list(range(1, n + 1))


class TestParams:
    def test_string_round_trip(self):
        p = PermutationParams.from_string("bstar_ascend_descend", "0.5:0.5,1:0,0.5:0.5", 3)
        assert p.to_string() == "0.5:0.5,1:0,0.5:0.5"
        q = PermutationParams.from_string("otree_proceeding", "0,1,2", 3)
        assert q.to_string() == "0,1,2"
        r = PermutationParams.from_string("bstar_available_nodes", "0,0.5,2", 3)
        assert r.to_string() == "0,0.5,2" and r.steps == (0, 1, 4)

    def test_identity_params_all_methods(self):
        from genfloor.model import METHODS

        for method in METHODS:
            kind = "nary" if method == "otree_proceeding" else "binary"
            for n in (1, 2, 5, 8):
                std = standard_tree(kind, n)
                params = identity_params(method, n)
                from genfloor.perturb import perturb

                assert perturb(std, params) == std, (method, n)

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            PermutationParams.create("otree_proceeding", [0, 1], 3)


class TestDeterminism:
    def test_repeated_runs_identical(self):
        rng = random.Random(23)
        std = standard_tree("binary", 6)
        for _ in range(100):
            pairs = tuple((rng.randint(0, 24), rng.randint(0, 24)) for _ in range(6))
            params = PermutationParams("bstar_ascend_descend", pairs)
            assert perturb_ascend_descend(std, params) == perturb_ascend_descend(std, params)
