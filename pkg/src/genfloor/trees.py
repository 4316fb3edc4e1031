"""Rooted labeled layout trees.

One structure backs both encodings: an ordered binary tree (each node has
distinct left/right slots) and an ordered n-ary tree with a synthetic,
label-free root.  Node identity is the label (the 1-based requirement
index; 0 is the synthetic n-ary root), so structural edits move labels
between positions rather than rebuilding nodes.
"""

from __future__ import annotations

BINARY = "binary"
NARY = "nary"

LEFT = "left"
RIGHT = "right"


class _Node:
    __slots__ = ("label", "parent", "left", "right", "children")

    def __init__(self, label):
        self.label = label
        self.parent = None
        self.left = None
        self.right = None
        self.children = []

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"<node D{self.label}>"


class LayoutTree:
    """Mutable rooted tree over labels D1..Dn (plus D0 for the n-ary kind)."""

    __slots__ = ("kind", "root", "_nodes", "_floating")

    def __init__(self, kind: str, n: int):
        if kind not in (BINARY, NARY):
            raise ValueError(f"unknown tree kind: {kind!r}")
        if n < 1:
            raise ValueError("a layout tree needs at least one labeled node")
        self.kind = kind
        self._nodes = {}
        self._floating = None
        if kind == BINARY:
            # complete binary tree: node k has children 2k and 2k+1 (1-based heap order)
            for label in range(1, n + 1):
                self._nodes[label] = _Node(label)
            for label in range(1, n + 1):
                node = self._nodes[label]
                if 2 * label <= n:
                    node.left = self._nodes[2 * label]
                    node.left.parent = node
                if 2 * label + 1 <= n:
                    node.right = self._nodes[2 * label + 1]
                    node.right.parent = node
            self.root = self._nodes[1]
        else:
            # all labeled nodes on one level under the synthetic root, input order
            root = _Node(0)
            self._nodes[0] = root
            for label in range(1, n + 1):
                node = _Node(label)
                node.parent = root
                root.children.append(node)
                self._nodes[label] = node
            self.root = root

    # ------------------------------------------------------------------ basics

    @property
    def n(self) -> int:
        """Number of labeled (block) nodes, excluding the synthetic root."""
        return len(self._nodes) - (1 if self.kind == NARY else 0)

    def labels(self):
        return sorted(self._nodes)

    def __contains__(self, label) -> bool:
        return label in self._nodes

    def _node(self, label) -> _Node:
        try:
            return self._nodes[label]
        except KeyError:
            raise ValueError(f"unknown node label: {label!r}") from None

    def parent_of(self, label):
        node = self._node(label).parent
        return None if node is None else node.label

    def children_of(self, label):
        node = self._node(label)
        if self.kind == BINARY:
            return tuple(c.label for c in (node.left, node.right) if c is not None)
        return tuple(c.label for c in node.children)

    def left_of(self, label):
        node = self._node(label).left
        return None if node is None else node.label

    def right_of(self, label):
        node = self._node(label).right
        return None if node is None else node.label

    def slot_of(self, label):
        """Which slot this node occupies under its parent: "left", "right" or None for the root."""
        node = self._node(label)
        if node.parent is None:
            return None
        if node.parent.left is node:
            return LEFT
        return RIGHT

    # -------------------------------------------------------------- traversals

    def dfs_order(self) -> list:
        """Preorder labels; left subtree fully before right, n-ary children left to right."""
        order = []
        stack = [self.root]
        while stack:
            node = stack.pop()
            order.append(node.label)
            if self.kind == BINARY:
                if node.right is not None:
                    stack.append(node.right)
                if node.left is not None:
                    stack.append(node.left)
            else:
                stack.extend(reversed(node.children))
        return order

    def bfs_order(self) -> list:
        """Level-order labels, left to right within each level."""
        order = []
        queue = [self.root]
        i = 0
        while i < len(queue):
            node = queue[i]
            i += 1
            order.append(node.label)
            if self.kind == BINARY:
                if node.left is not None:
                    queue.append(node.left)
                if node.right is not None:
                    queue.append(node.right)
            else:
                queue.extend(node.children)
        return order

    def is_descendant(self, anc, label) -> bool:
        """True iff `label` lies strictly inside the subtree rooted at `anc`."""
        self._node(anc)
        node = self._node(label)
        cur = node.parent
        while cur is not None:
            if cur.label == anc:
                return True
            cur = cur.parent
        return False

    def depth_of(self, label) -> int:
        node = self._node(label)
        d = 0
        while node.parent is not None:
            node = node.parent
            d += 1
        return d

    # ------------------------------------------------------- structural edits

    def swap_positions(self, a, b) -> None:
        """Exchange the positions of two labels; the tree shape is unchanged."""
        if a == b:
            return
        na, nb = self._node(a), self._node(b)
        na.label, nb.label = nb.label, na.label
        self._nodes[a], self._nodes[b] = nb, na

    def reparent_subtree(self, label, new_parent) -> None:
        """Detach `label` with its whole subtree and append it as the rightmost
        child of `new_parent` (n-ary kind only).  The caller is responsible for
        cycle prevention."""
        if self.kind != NARY:
            raise ValueError("reparent_subtree applies to the n-ary kind only")
        node = self._node(label)
        parent = self._node(new_parent)
        if node.parent is None:
            raise ValueError("cannot reparent the root")
        node.parent.children.remove(node)
        node.parent = parent
        parent.children.append(node)

    def detach_leaf(self, label) -> None:
        """Unlink a leaf from the binary tree, leaving it floating for re-insertion."""
        node = self._node(label)
        if node.left is not None or node.right is not None:
            raise ValueError(f"D{label} is not a leaf")
        if self._floating is not None:
            raise ValueError("another node is already detached")
        parent = node.parent
        if parent is None:
            raise ValueError("cannot detach the only remaining root this way")
        if parent.left is node:
            parent.left = None
        else:
            parent.right = None
        node.parent = None
        self._floating = node

    def attach(self, parent_label, side: str, label) -> None:
        """Link the floating node into an empty child slot (external branch)."""
        node = self._take_floating(label)
        parent = self._node(parent_label)
        if getattr(parent, side) is not None:
            raise ValueError(f"{side} slot of D{parent_label} is occupied")
        setattr(parent, side, node)
        node.parent = parent

    def insert_between(self, parent_label, side: str, label) -> None:
        """Splice the floating node into an occupied slot (internal branch).

        The floating node takes the slot; the former occupant becomes the
        floating node's child on that same side.
        """
        node = self._take_floating(label)
        parent = self._node(parent_label)
        child = getattr(parent, side)
        if child is None:
            raise ValueError(f"{side} slot of D{parent_label} is empty")
        setattr(parent, side, node)
        node.parent = parent
        setattr(node, side, child)
        child.parent = node

    def insert_above_root(self, label) -> None:
        """The floating node becomes the new root; the old root becomes its left child."""
        node = self._take_floating(label)
        old = self.root
        node.left = old
        old.parent = node
        self.root = node

    def _take_floating(self, label) -> _Node:
        node = self._node(label)
        if self._floating is not node:
            raise ValueError(f"D{label} is not the detached node")
        self._floating = None
        return node

    # ----------------------------------------------------------- housekeeping

    def copy(self) -> "LayoutTree":
        clone = LayoutTree.__new__(LayoutTree)
        clone.kind = self.kind
        clone._nodes = {label: _Node(label) for label in self._nodes}
        clone._floating = None
        for label, node in self._nodes.items():
            cn = clone._nodes[label]
            if node.parent is not None:
                cn.parent = clone._nodes[node.parent.label]
            if self.kind == BINARY:
                if node.left is not None:
                    cn.left = clone._nodes[node.left.label]
                if node.right is not None:
                    cn.right = clone._nodes[node.right.label]
            else:
                cn.children = [clone._nodes[c.label] for c in node.children]
        clone.root = clone._nodes[self.root.label]
        return clone

    def structure(self):
        """Nested tuple encoding of the shape, usable as a dict key."""

        def rec(node):
            if node is None:
                return None
            if self.kind == BINARY:
                return (node.label, rec(node.left), rec(node.right))
            return (node.label,) + tuple(rec(c) for c in node.children)

        return rec(self.root)

    def __eq__(self, other):
        return (
            isinstance(other, LayoutTree)
            and self.kind == other.kind
            and self.structure() == other.structure()
        )

    def __hash__(self):
        return hash((self.kind, self.structure()))

    def validate(self) -> None:
        """Walk the whole tree and check the structural invariants."""
        if self._floating is not None:
            raise AssertionError("a detached node was never re-inserted")
        seen = set()
        stack = [self.root]
        while stack:
            node = stack.pop()
            if node.label in seen:
                raise AssertionError(f"cycle or duplicate at D{node.label}")
            seen.add(node.label)
            kids = (
                [c for c in (node.left, node.right) if c is not None]
                if self.kind == BINARY
                else list(node.children)
            )
            for child in kids:
                if child.parent is not node:
                    raise AssertionError(f"bad parent link at D{child.label}")
                stack.append(child)
        if seen != set(self._nodes):
            raise AssertionError("unreachable nodes: " + repr(set(self._nodes) - seen))

    # ------------------------------------------------------------------- JSON

    def to_dict(self) -> dict:
        """Nested `{label, children}` form; binary kind uses explicit left/right keys."""

        def rec(node):
            if node is None:
                return None
            if self.kind == BINARY:
                return {"label": node.label, "left": rec(node.left), "right": rec(node.right)}
            return {
                "label": None if node.label == 0 else node.label,
                "children": [rec(c) for c in node.children],
            }

        out = rec(self.root)
        out["kind"] = self.kind
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "LayoutTree":
        kind = data.get("kind", BINARY if "left" in data or "right" in data else NARY)
        tree = cls.__new__(cls)
        tree.kind = kind
        tree._nodes = {}
        tree._floating = None

        def rec(obj, parent):
            if obj is None:
                return None
            label = obj["label"]
            if label is None:
                label = 0
            node = _Node(label)
            node.parent = parent
            tree._nodes[label] = node
            if kind == BINARY:
                node.left = rec(obj.get("left"), node)
                node.right = rec(obj.get("right"), node)
            else:
                node.children = [rec(c, node) for c in obj.get("children", [])]
            return node

        tree.root = rec(data, None)
        tree.validate()
        return tree


def standard_tree(kind: str, n: int) -> LayoutTree:
    """The canonical starting tree: complete binary, or one single n-ary level.

    Labels follow input order: D1 is the binary root (heap order below it);
    the n-ary kind hangs D1..Dn left-to-right under the synthetic root D0.
    """
    return LayoutTree(kind, n)
