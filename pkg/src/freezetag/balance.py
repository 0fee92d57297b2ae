"""Heavy-path decomposition and the depth-rebalancing tree transform.

``pseudo_balance`` rewires a valid wake-up tree so that no root-to-leaf path
passes through more than O((1 + 1/mu) * log2(n)^2) nodes while the makespan
grows by at most a factor (1 + mu).  The idea: decompose the tree into heavy
paths, chop each path into subpaths of length xi = mu*t / (2*log2 n), and
let the robots inside a subpath share its awakening instead of waking it one
by one.  One walker robot sweeps each heavy path front to back; robots it
wakes on the way sweep backwards over the stretch just passed.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .constants import C_PB, TOL
from .errors import ParameterError
from .instances import Instance
from .trees import (TreeBuilder, WakeUpTree, cascade_colocated, max_path_nodes,
                    wake_times)


@dataclass(frozen=True)
class HeavyPathDecomposition:
    paths: tuple            # node tuples, head first
    path_of: tuple          # node -> index into paths
    heavy_child: tuple      # node -> heavy child id or None
    light_edges: tuple      # (parent, child) pairs not on any heavy path


def heavy_path_decomposition(tree: WakeUpTree) -> HeavyPathDecomposition:
    """Partition the tree edges into heavy paths plus light edges.

    The heavy child of a node is the child with the largest subtree (node
    count, ties to the smaller robot id).  Works on any rooted tree; the
    wake-up degree bounds are not required here.
    """
    n = tree.n
    # children-before-parents order for subtree sizes
    bfs = [0]
    for u in bfs:
        bfs.extend(tree.children[u])
    size = [1] * n
    for u in reversed(bfs):
        for c in tree.children[u]:
            size[u] += size[c]
    heavy: list = [None] * n
    for u in range(n):
        if tree.children[u]:
            heavy[u] = max(tree.children[u], key=lambda c: (size[c], -c))
    paths = []
    path_of = [0] * n
    light = []
    for u in bfs:
        p = tree.parent[u]
        if p is not None and heavy[p] == u:
            continue  # continues its parent's path
        chain = [u]
        while heavy[chain[-1]] is not None:
            chain.append(heavy[chain[-1]])
        idx = len(paths)
        paths.append(tuple(chain))
        for v in chain:
            path_of[v] = idx
    for u in range(n):
        for c in tree.children[u]:
            if heavy[u] != c:
                light.append((u, c))
    return HeavyPathDecomposition(tuple(paths), tuple(path_of), tuple(heavy),
                                  tuple(light))


def light_edges_on_paths(tree: WakeUpTree) -> int:
    """Max number of light edges crossed by any root-to-leaf path."""
    hpd = heavy_path_decomposition(tree)
    light = set(hpd.light_edges)
    count = [0] * tree.n
    best = 0
    stack = [0]
    while stack:
        u = stack.pop()
        for c in tree.children[u]:
            count[c] = count[u] + (1 if (u, c) in light else 0)
            best = max(best, count[c])
            stack.append(c)
    return best


class _LineServer:
    """Recursive sweep of a 1-D stretch of asleep robots.

    Items are (position, robot) pairs with positions measured forward from
    the responsible walker.  The walker advances monotonically; every robot
    it wakes takes over the stretch just behind it (mirrored and recursed).
    Below ``median_span`` the sweep switches to median splitting, which
    bounds the added depth by log2 of the robot count.
    """

    def __init__(self, builder: TreeBuilder, median_span: float):
        self.builder = builder
        self.median_span = median_span

    def serve(self, walker: int, items: list) -> None:
        a = 0.0
        while items:
            b = items[-1][0]
            if b - a <= self.median_span + TOL:
                self._serve_median(walker, items)
                return
            threshold = a + (b - a) / 3.0
            k = None
            for i, (pos, _) in enumerate(items):
                if pos <= threshold + TOL:
                    k = i
                else:
                    break
            if k is None:
                a = threshold  # first third is empty; shrink and retry
                continue
            pos_k, robot_k = items[k]
            self.builder.wake(walker, robot_k)
            behind = [(pos_k - p, r) for (p, r) in reversed(items[:k])]
            self.serve(robot_k, behind)
            items = items[k + 1:]
            a = pos_k

    def _serve_median(self, walker: int, items: list) -> None:
        while items:
            mid = len(items) // 2
            pos_m, robot_m = items[mid]
            self.builder.wake(walker, robot_m)
            behind = [(pos_m - p, r) for (p, r) in reversed(items[:mid])]
            self._serve_median(robot_m, behind)
            items = items[mid + 1:]


def pseudo_balance(instance: Instance, tree: WakeUpTree, mu: float) -> WakeUpTree:
    """Rebalance a valid tree: makespan <= (1+mu) * old, polylog path depth.

    Trees already within C_PB * log2(n)^2 path nodes are returned unchanged.
    The output is always a valid tree over the same robots.
    """
    if not (isinstance(mu, (int, float)) and mu > 0):
        raise ParameterError(f"mu must be positive, got {mu}")
    n = instance.n
    if n < 2:
        return tree
    times = wake_times(instance, tree)  # validates the input tree
    log2n = math.log2(n)
    if max_path_nodes(tree) <= C_PB * log2n * log2n + TOL:
        return tree
    t = max(times)
    builder = TreeBuilder(n)
    if t <= TOL:
        # everything is colocated; a doubling cascade has log depth
        cascade_colocated(builder, 0, list(range(1, n)))
        return builder.build()
    xi = mu * t / (2.0 * log2n)
    server = _LineServer(builder, median_span=xi / log2n)
    hpd = heavy_path_decomposition(tree)

    # Walk heavy paths top-down.  The walker of a path is the robot that woke
    # its head; it sweeps the path in subpaths of length xi, delegating each
    # stretch behind it, then the path's nodes dispatch their light children.
    queue = deque([(hpd.path_of[0], 0)])
    while queue:
        pi, walker = queue.popleft()
        path = hpd.paths[pi]
        offsets = [0.0]
        for i in range(1, len(path)):
            offsets.append(offsets[-1] + instance.distance(path[i - 1], path[i]))
        anchor_idx = 0  # walker stands at path[anchor_idx]
        i = 1
        while i < len(path):
            j = i
            while j + 1 < len(path) and offsets[j + 1] - offsets[i] <= xi + TOL:
                j += 1
            base = offsets[anchor_idx]
            items = [(offsets[k] - base, path[k]) for k in range(i, j + 1)]
            server.serve(walker, items)
            anchor_idx = j
            i = j + 1
        for u in path:
            for c in tree.children[u]:
                if hpd.heavy_child[u] != c:
                    builder.wake(u, c)
                    queue.append((hpd.path_of[c], u))
    return builder.build()
