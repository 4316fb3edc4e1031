"""Deterministic tree perturbation driven by integer/half-integer parameters.

Three methods map (standard tree, parameter vector) to a layout tree, one
step per label D1..Dn, with no randomness anywhere:

* proceeding (n-ary): step i re-hangs D_i (subtree and all) under D_{p_i}.
* ascend/descend (binary): step i climbs p_iU parent links from D_i, walks
  p_iD members forward in level order, then swaps or re-inserts there.
* available nodes (binary): step i picks one of the 4n enumerated target
  slots of the current tree.

Half steps (the .5 values) select edge positions instead of nodes and are
stored doubled, so every parameter is an exact integer internally.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    BSTAR_ASCEND_DESCEND,
    BSTAR_AVAILABLE_NODES,
    METHODS,
    OTREE_PROCEEDING,
    ValidationError,
)
from .trees import BINARY, LEFT, NARY, RIGHT, LayoutTree

SWAP = "swap"
INSERT_ABOVE = "insert_above"
INSERT_LEFT = "attach_or_insert_left"
INSERT_RIGHT = "attach_or_insert_right"


@dataclass(frozen=True)
class TargetDescriptor:
    """Where a relocated node should land, anchored at a current tree member."""

    kind: str
    anchor: int


@dataclass(frozen=True)
class PermutationParams:
    """Validated parameter vector for one method.

    Canonical storage: plain ints for proceeding, doubled half-steps for the
    binary methods (value 3 means 1.5), pairs flattened as 2-tuples for
    ascend/descend.
    """

    method: str
    steps: tuple

    @classmethod
    def create(cls, method: str, values, n: int) -> "PermutationParams":
        if method not in METHODS:
            raise ValidationError(f"unknown method {method!r}")
        values = tuple(values)
        if len(values) != n:
            raise ValidationError(f"expected {n} parameters, got {len(values)}")
        if method == OTREE_PROCEEDING:
            steps = tuple(_whole(v, 0, n) for v in values)
        elif method == BSTAR_ASCEND_DESCEND:
            # the walk clamps at the root / last member, so values above the
            # canonical 2n cap are accepted and fold onto the clamped results
            steps = []
            for v in values:
                try:
                    up, down = v
                except (TypeError, ValueError):
                    raise ValidationError(
                        f"ascend/descend parameters are (up, down) pairs, got {v!r}"
                    ) from None
                steps.append((_half(up, None), _half(down, None)))
            steps = tuple(steps)
        else:
            steps = tuple(_half(v, 2 * n) for v in values)
        return cls(method, steps)

    @classmethod
    def from_string(cls, method: str, text: str, n: int) -> "PermutationParams":
        """CLI form: comma-separated decimals, pairs joined by ':'."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if method == BSTAR_ASCEND_DESCEND:
            values = []
            for part in parts:
                bits = part.split(":")
                if len(bits) != 2:
                    raise ValidationError(f"expected up:down pair, got {part!r}")
                values.append((_number(bits[0]), _number(bits[1])))
        else:
            values = [_number(p) for p in parts]
        return cls.create(method, values, n)

    def to_string(self) -> str:
        if self.method == BSTAR_ASCEND_DESCEND:
            return ",".join(f"{_fmt(u)}:{_fmt(d)}" for u, d in self.steps)
        if self.method == OTREE_PROCEEDING:
            return ",".join(str(v) for v in self.steps)
        return ",".join(_fmt(v) for v in self.steps)


def _number(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ValidationError(f"bad parameter value {text!r}") from None


def _fmt(doubled: int) -> str:
    return str(doubled // 2) if doubled % 2 == 0 else f"{doubled / 2:.1f}"


def _whole(value, lo: int, hi: int) -> int:
    v = int(value)
    if v != value or not lo <= v <= hi:
        raise ValidationError(f"parameter {value!r} outside {{{lo}..{hi}}}")
    return v


def _half(value, top) -> int:
    doubled = round(float(value) * 2)
    if doubled != float(value) * 2 or doubled < 0 or (top is not None and doubled > 2 * top):
        bound = "" if top is None else f", .., {top}"
        raise ValidationError(f"parameter {value!r} outside {{0, 0.5{bound}}}")
    return doubled


def identity_params(method: str, n: int) -> PermutationParams:
    """The vector that provably leaves the standard tree unchanged."""
    if method == OTREE_PROCEEDING:
        return PermutationParams.create(method, range(1, n + 1), n)
    if method == BSTAR_ASCEND_DESCEND:
        return PermutationParams.create(method, [(0.5, 0.5)] * n, n)
    return PermutationParams.create(method, [2 * (i - 1) for i in range(1, n + 1)], n)


# ---------------------------------------------------------------- proceeding

def perturb_proceeding(std: LayoutTree, params) -> LayoutTree:
    """n re-hanging steps; step i makes D_{p_i} the parent of D_i.

    The moved node keeps its whole subtree and lands as the rightmost child.
    A step is discarded when p_i = i or when the target currently sits inside
    D_i's own subtree (which would cut the tree loose).
    """
    steps = _steps_of(std, params, OTREE_PROCEEDING, NARY)
    tree = std.copy()
    for i, target in enumerate(steps, start=1):
        if target == i:
            continue
        if tree.is_descendant(i, target):
            continue
        tree.reparent_subtree(i, target)
    return tree


def _steps_of(std, params, method, kind):
    if isinstance(params, PermutationParams):
        if params.method != method:
            raise ValidationError(f"params are for {params.method}, not {method}")
        steps = params.steps
    else:
        steps = PermutationParams.create(method, params, std.n).steps
    if std.kind != kind:
        raise ValidationError(f"{method} needs a {kind} tree")
    if len(steps) != std.n:
        raise ValidationError(f"expected {std.n} parameters, got {len(steps)}")
    return steps


# ------------------------------------------------------------ ascend/descend

def ascend_target(tree: LayoutTree, label: int, up_doubled: int):
    """Climb the integer part of the up-parameter from the node, clamped at
    the root.  Returns None for the stay-put sentinel (up = 0.5), else
    (reached label, half flag); the half flag marks the edge position between
    the reached node and its parent."""
    if up_doubled == 1:
        return None
    climbs, half = divmod(up_doubled, 2)
    reached = label
    for _ in range(climbs):
        parent = tree.parent_of(reached)
        if parent is None:
            break
        reached = parent
    return reached, bool(half)


def descend_target(tree: LayoutTree, position, down_doubled: int) -> TargetDescriptor:
    """Walk members forward in level order from the ascend position.

    Integer walks land on a member (swap); a trailing half selects the edge
    between the next member reached (the ceiling) and that member's parent.
    Both walks clamp at the last member.
    """
    reached, asc_half = position
    order = tree.bfs_order()
    i = order.index(reached)
    steps, half = divmod(down_doubled, 2)
    last = len(order) - 1
    if half:
        return TargetDescriptor(INSERT_ABOVE, order[min(i + steps + 1, last)])
    if steps > 0:
        return TargetDescriptor(SWAP, order[min(i + steps, last)])
    if asc_half:
        return TargetDescriptor(INSERT_ABOVE, reached)
    return TargetDescriptor(SWAP, reached)


def perturb_ascend_descend(std: LayoutTree, params) -> LayoutTree:
    """n steps over labels in input order; each step composes ascend, descend
    and the relocation of the active label at its current position."""
    steps = _steps_of(std, params, BSTAR_ASCEND_DESCEND, BINARY)
    tree = std.copy()
    for i, (up, down) in enumerate(steps, start=1):
        position = ascend_target(tree, i, up)
        if position is None:
            continue
        target = descend_target(tree, position, down)
        apply_relocation(tree, i, target)
    return tree


# ------------------------------------------------------------ available nodes

def available_targets(tree: LayoutTree) -> list:
    """All 4n places a node can go in the current tree: for each member in
    level order, [swap here, insert above, left slot, right slot]."""
    targets = []
    for anchor in tree.bfs_order():
        targets.append(TargetDescriptor(SWAP, anchor))
        targets.append(TargetDescriptor(INSERT_ABOVE, anchor))
        targets.append(TargetDescriptor(INSERT_LEFT, anchor))
        targets.append(TargetDescriptor(INSERT_RIGHT, anchor))
    return targets


_KINDS = (SWAP, INSERT_ABOVE, INSERT_LEFT, INSERT_RIGHT)


def perturb_available_nodes(std: LayoutTree, params) -> LayoutTree:
    """n steps; step i relocates D_i to the target-list entry selected by the
    doubled parameter, clamped onto the last entry.  The list is rebuilt from
    the current tree before every step."""
    steps = _steps_of(std, params, BSTAR_AVAILABLE_NODES, BINARY)
    tree = std.copy()
    top = 4 * std.n - 1
    for i, doubled in enumerate(steps, start=1):
        # entry k of available_targets(tree) without materializing the list
        index = min(doubled, top)
        anchor = tree.bfs_order()[index // 4]
        apply_relocation(tree, i, TargetDescriptor(_KINDS[index % 4], anchor))
    return tree


# ----------------------------------------------------------------- relocation

def apply_relocation(tree: LayoutTree, active: int, target: TargetDescriptor) -> None:
    """Move the active label to the target position, in place.

    Swaps exchange the two labels' positions.  Insert targets first delete
    the active node (bubbling it down by repeated child swaps until it is a
    leaf), then splice it back in at the anchor's slot; inserting relative to
    the active node itself is the documented no-op.  Node count and label
    set are always preserved.
    """
    anchor = target.anchor
    if anchor not in tree:
        raise ValidationError(f"target anchors unknown node D{anchor}")
    if target.kind == SWAP:
        tree.swap_positions(active, anchor)
        return
    if anchor == active:
        return  # relocation onto or adjacent to itself
    if target.kind == INSERT_ABOVE:
        order0 = tree.bfs_order()
        parent0 = {label: tree.parent_of(label) for label in order0}
        slot0 = {label: tree.slot_of(label) for label in order0}
        _delete(tree, active)
        # the captured parent slot may have been the deleted node itself;
        # back up one level-order member at a time until the slot is valid
        idx = order0.index(anchor)
        parent, side = parent0[anchor], slot0[anchor]
        while parent == active:
            idx -= 1
            while idx >= 0 and order0[idx] == active:
                idx -= 1
            if idx < 0:
                parent, side = None, None
                break
            parent, side = parent0[order0[idx]], slot0[order0[idx]]
        if parent is None:
            tree.insert_above_root(active)
        else:
            _splice(tree, parent, side, active)
        return
    if target.kind in (INSERT_LEFT, INSERT_RIGHT):
        side = LEFT if target.kind == INSERT_LEFT else RIGHT
        _delete(tree, active)
        _splice(tree, anchor, side, active)
        return
    raise ValidationError(f"malformed target kind {target.kind!r}")


def _delete(tree: LayoutTree, label: int) -> None:
    # bubble down: prefer the left child swap, fall back to the right
    while True:
        child = tree.left_of(label)
        if child is None:
            child = tree.right_of(label)
        if child is None:
            break
        tree.swap_positions(label, child)
    tree.detach_leaf(label)


def _splice(tree: LayoutTree, parent: int, side: str, label: int) -> None:
    occupant = tree.left_of(parent) if side == LEFT else tree.right_of(parent)
    if occupant is None:
        tree.attach(parent, side, label)
    else:
        tree.insert_between(parent, side, label)


def perturb(std: LayoutTree, params: PermutationParams) -> LayoutTree:
    """Dispatch on the parameter vector's method."""
    if params.method == OTREE_PROCEEDING:
        return perturb_proceeding(std, params)
    if params.method == BSTAR_ASCEND_DESCEND:
        return perturb_ascend_descend(std, params)
    return perturb_available_nodes(std, params)
