"""Independent step interpreter for the three perturbation methods.

A deliberately plain re-implementation used only as a test oracle: binary
trees live in a dict mapping root-paths (tuples of 0/1, 0 = left) to labels,
n-ary trees in parent/children dicts.  Every rule is applied by rebuilding
dictionaries, nothing is shared with the engine beyond the documented
semantics.
"""

from __future__ import annotations

# ---------------------------------------------------------------- binary rep

def std_paths(n):
    """Heap-shaped complete binary tree: label k sits at the path spelled by
    the binary digits of k after the leading 1 (0 = left)."""
    tree = {}
    for label in range(1, n + 1):
        bits = bin(label)[3:]
        tree[tuple(int(b) for b in bits)] = label
    return tree


def bfs_labels(tree):
    return [tree[p] for p in sorted(tree, key=lambda p: (len(p), p))]


def path_of(tree, label):
    for path, l in tree.items():
        if l == label:
            return path
    raise KeyError(label)


def parent_label(tree, label):
    path = path_of(tree, label)
    return None if not path else tree[path[:-1]]


def swap(tree, a, b):
    if a == b:
        return dict(tree)
    out = dict(tree)
    pa, pb = path_of(tree, a), path_of(tree, b)
    out[pa], out[pb] = b, a
    return out


def delete(tree, label):
    """Bubble the label down (left-child swap first, else right), then drop it."""
    out = dict(tree)
    path = path_of(out, label)
    while True:
        left, right = path + (0,), path + (1,)
        if left in out:
            out[path], out[left] = out[left], out[path]
            path = left
        elif right in out:
            out[path], out[right] = out[right], out[path]
            path = right
        else:
            break
    del out[path]
    return out


def shift_subtree(tree, at, side):
    """Make room at `at`+(side,): the occupant subtree moves one level down
    on that same side."""
    slot = at + (side,)
    if slot not in tree:
        return dict(tree)
    moved = {}
    for path, label in tree.items():
        if path[: len(slot)] == slot:
            moved[slot + (side,) + path[len(slot):]] = label
        else:
            moved[path] = label
    return moved


def insert_at(tree, parent_path, side, label):
    out = shift_subtree(tree, parent_path, side)
    out[parent_path + (side,)] = label
    return out


def insert_above_root(tree, label):
    out = {(0,) + path: l for path, l in tree.items()}
    out[()] = label
    return out


def apply_target(tree, active, kind, anchor):
    """One relocation, mirroring the documented operation table."""
    if kind == "swap":
        return swap(tree, active, anchor)
    if anchor == active:
        return dict(tree)  # relocation onto or adjacent to itself
    if kind == "insert_above":
        order0 = bfs_labels(tree)
        parents0 = {l: parent_label(tree, l) for l in order0}
        paths0 = {l: path_of(tree, l) for l in order0}
        cut = delete(tree, active)
        idx = order0.index(anchor)
        target = anchor
        while parents0[target] == active:
            idx -= 1
            while idx >= 0 and order0[idx] == active:
                idx -= 1
            if idx < 0:
                target = None
                break
            target = order0[idx]
        if target is None or parents0[target] is None:
            return insert_above_root(cut, active)
        parent = parents0[target]
        side = paths0[target][-1]
        return insert_at(cut, path_of(cut, parent), side, active)
    if kind in ("attach_or_insert_left", "attach_or_insert_right"):
        side = 0 if kind == "attach_or_insert_left" else 1
        cut = delete(tree, active)
        return insert_at(cut, path_of(cut, anchor), side, active)
    raise ValueError(kind)


def available_list(tree):
    """The 4n target slots in level order: swap, above, left, right per node."""
    targets = []
    for label in bfs_labels(tree):
        targets.append(("swap", label))
        targets.append(("insert_above", label))
        targets.append(("attach_or_insert_left", label))
        targets.append(("attach_or_insert_right", label))
    return targets


def oracle_available_nodes(n, doubled_values):
    tree = std_paths(n)
    for i, doubled in enumerate(doubled_values, start=1):
        targets = available_list(tree)
        kind, anchor = targets[min(doubled, 4 * n - 1)]
        tree = apply_target(tree, i, kind, anchor)
    return tree


def oracle_ascend_descend(n, doubled_pairs):
    tree = std_paths(n)
    for i, (up2, down2) in enumerate(doubled_pairs, start=1):
        tree = oracle_ad_step(tree, i, up2, down2)
    return tree


def oracle_ad_step(tree, active, up2, down2):
    if up2 == 1:
        return dict(tree)  # half-step up: stay put, tree unchanged
    climbs, up_half = divmod(up2, 2)
    path = path_of(tree, active)
    reached_path = path[: max(0, len(path) - climbs)]
    reached = tree[reached_path]
    order = bfs_labels(tree)
    i = order.index(reached)
    steps, down_half = divmod(down2, 2)
    last = len(order) - 1
    if down_half:
        return apply_target(tree, active, "insert_above", order[min(i + steps + 1, last)])
    if steps > 0:
        return apply_target(tree, active, "swap", order[min(i + steps, last)])
    if up_half:
        return apply_target(tree, active, "insert_above", reached)
    return apply_target(tree, active, "swap", reached)


# ----------------------------------------------------------------- n-ary rep

def oracle_proceeding(n, values):
    """Children-list interpretation of the re-hanging method."""
    children = {k: [] for k in range(n + 1)}
    children[0] = list(range(1, n + 1))
    parent = {k: 0 for k in range(1, n + 1)}

    def in_subtree(root, label):
        frontier = [root]
        while frontier:
            cur = frontier.pop()
            if cur == label:
                return True
            frontier.extend(children[cur])
        return False

    for i, target in enumerate(values, start=1):
        if target == i:
            continue
        if in_subtree(i, target):
            continue
        children[parent[i]].remove(i)
        children[target].append(i)
        parent[i] = target
    return children


# ------------------------------------------------------- shape normalization

def paths_to_structure(tree):
    """Same nested-tuple encoding LayoutTree.structure() uses, for equality."""

    def rec(path):
        if path not in tree:
            return None
        return (tree[path], rec(path + (0,)), rec(path + (1,)))

    return rec(())


def children_to_structure(children):
    def rec(label):
        return (label,) + tuple(rec(c) for c in children[label])

    return rec(0)
