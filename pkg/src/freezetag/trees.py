"""Wake-up trees: the solution object every solver produces.

A wake-up tree is a rooted tree over robot ids.  The root is robot 0; the
children of a node are the robots claimed next by that robot and by its
awakener, both of whom stand at the node's site at its wake time.  Hence the
root has out-degree at most 1 and every other node at most 2, and

    wake_time(child) = wake_time(parent) + d(site(parent), site(child)),

with departures taken immediately.  The makespan is the largest wake time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .constants import TOL
from .errors import ValidationError
from .instances import Instance


@dataclass(frozen=True)
class WakeUpTree:
    """Immutable rooted tree; ``parent[0]`` is None, children in claim order."""

    parent: tuple
    children: tuple

    @classmethod
    def from_parents(cls, parent: list) -> "WakeUpTree":
        children: list[list[int]] = [[] for _ in parent]
        for v, p in enumerate(parent):
            if p is not None:
                children[p].append(v)
        return cls(tuple(parent), tuple(tuple(c) for c in children))

    @property
    def n(self) -> int:
        return len(self.parent)


class TreeBuilder:
    """Accumulates who-wakes-whom while a simulation runs.

    Tracks, per robot, the tree node under which its next victim will hang
    (its own wake node, then its latest victim).  This makes the binary
    degree bound hold by construction and records each robot's victim list,
    which is what completion times are computed from.
    """

    def __init__(self, n: int):
        self.n = n
        self.parent: list = [None] * n
        self.children: list[list[int]] = [[] for _ in range(n)]
        self.victims: list[list[int]] = [[] for _ in range(n)]
        self._cur: list = [None] * n
        self._cur[0] = 0
        self._woken = 1

    def is_awake(self, robot: int) -> bool:
        return self._cur[robot] is not None

    def node_of(self, robot: int):
        """Tree node the robot's next victim will hang under."""
        return self._cur[robot]

    def wake(self, waker: int, woken: int) -> None:
        if self._cur[waker] is None:
            raise RuntimeError(f"waker {waker} is not awake")
        if woken == 0 or self._cur[woken] is not None:
            raise RuntimeError(f"robot {woken} is already awake")
        node = self._cur[waker]
        cap = 1 if node == 0 else 2
        if len(self.children[node]) >= cap:
            raise RuntimeError(f"node {node} is out of child slots")
        self.parent[woken] = node
        self.children[node].append(woken)
        self.victims[waker].append(woken)
        self._cur[waker] = woken
        self._cur[woken] = woken
        self._woken += 1

    @property
    def complete(self) -> bool:
        return self._woken == self.n

    def build(self) -> WakeUpTree:
        if not self.complete:
            missing = [r for r in range(self.n) if self._cur[r] is None]
            raise RuntimeError(f"robots never woken: {missing[:5]}")
        return WakeUpTree.from_parents(self.parent)


def cascade_colocated(builder: TreeBuilder, waker: int, sleepers: list[int]) -> list[int]:
    """Wake a group of robots colocated with the waker at zero cost.

    Doubling rounds: every awake robot at the site claims one sleeper per
    round, so the added subtree has logarithmic height in the group size.
    Returns the woken ids in wake order.
    """
    awake = [waker]
    pending = list(sleepers)
    woken: list[int] = []
    while pending:
        new = []
        for w in awake:
            if not pending:
                break
            s = pending.pop(0)
            builder.wake(w, s)
            new.append(s)
            woken.append(s)
        awake.extend(new)
    return woken


def validate_tree(instance: Instance, tree: WakeUpTree) -> list[str]:
    """Check every structural invariant; an empty list means the tree is valid."""
    violations = []
    n = instance.n
    if tree.n != n:
        return [f"tree has {tree.n} robots, instance has {n}"]
    if n == 0:
        return ["no robots"]
    if tree.parent[0] is not None:
        violations.append("robot 0 must be the root")
    for v in range(1, n):
        p = tree.parent[v]
        if p is None:
            violations.append(f"robot {v}: disconnected (no parent)")
        elif not isinstance(p, int) or not (0 <= p < n):
            violations.append(f"robot {v}: unknown parent {p!r}")
        elif p == v:
            violations.append(f"robot {v}: is its own parent")
    derived: list[list[int]] = [[] for _ in range(n)]
    for v in range(1, n):
        p = tree.parent[v]
        if isinstance(p, int) and 0 <= p < n and p != v:
            derived[p].append(v)
    for v in range(n):
        if sorted(tree.children[v]) != sorted(derived[v]):
            violations.append(f"robot {v}: children list disagrees with parent pointers")
    if len(tree.children[0]) > 1:
        violations.append("robot 0: root out-degree > 1")
    for v in range(1, n):
        if len(tree.children[v]) > 2:
            violations.append(f"robot {v}: binary bound exceeded")
    # reachability doubles as the cycle check
    seen = [False] * n
    stack = [0]
    seen[0] = True
    while stack:
        u = stack.pop()
        for c in derived[u]:
            if not seen[c]:
                seen[c] = True
                stack.append(c)
    unreachable = [v for v in range(n) if not seen[v]]
    if unreachable:
        violations.append(f"robots unreachable from root: {unreachable[:5]}")
    return violations


def wake_times(instance: Instance, tree: WakeUpTree) -> list[float]:
    """Per-robot wake times; raises ValidationError on a broken tree."""
    violations = validate_tree(instance, tree)
    if violations:
        raise ValidationError("; ".join(violations))
    times = [0.0] * instance.n
    stack = [0]
    while stack:
        u = stack.pop()
        for c in tree.children[u]:
            times[c] = times[u] + instance.distance(u, c)
            stack.append(c)
    return times


def evaluate_makespan(instance: Instance, tree: WakeUpTree) -> float:
    """Largest wake time in the tree (0.0 for the lone-source instance)."""
    return max(wake_times(instance, tree))


def max_path_nodes(tree: WakeUpTree) -> int:
    """Node count of the longest root-to-leaf path (a lone root counts 1)."""
    depth = [1] * tree.n
    best = 1
    stack = [0]
    while stack:
        u = stack.pop()
        for c in tree.children[u]:
            depth[c] = depth[u] + 1
            best = max(best, depth[c])
            stack.append(c)
    return best


def completion_times(times: list[float], victims: list[list[int]]) -> list[float]:
    """Per-robot completion: when it comes to rest after its last claim."""
    out = []
    for r, t in enumerate(times):
        out.append(times[victims[r][-1]] if victims[r] else t)
    return out


@dataclass(frozen=True)
class WakeEvent:
    time: float
    waker: int
    woken: int
    from_site: int
    to_site: int


@dataclass(frozen=True)
class Schedule:
    """Timed awakening events derived from a tree, sorted by time."""

    events: tuple
    makespan: float

    def to_json_dict(self) -> dict:
        return {
            "makespan": self.makespan,
            "events": [{"t": e.time, "waker": e.waker, "woken": e.woken}
                       for e in self.events],
        }


def schedule_from_tree(instance: Instance, tree: WakeUpTree) -> Schedule:
    """Expand a tree into events with a canonical waker attribution.

    At a node v woken by robot a, both v and a stand at v's site; the first
    child is attributed to v, the second to a.  Any attribution consistent
    with the tree is physically realizable, so this one is simply the fixed
    convention.
    """
    times = wake_times(instance, tree)
    events = []
    # (node, robot that traveled to it) in preorder; the root traveled nowhere
    stack = [(0, None)]
    while stack:
        v, arriver = stack.pop()
        kids = tree.children[v]
        agents = [v, arriver if arriver is not None else v]
        for slot, c in enumerate(kids):
            waker = agents[slot]
            events.append(WakeEvent(times[c], waker, c,
                                    instance.site_of(v), instance.site_of(c)))
            stack.append((c, waker))
    events.sort(key=lambda e: e.time)
    return Schedule(tuple(events), max(times))


def tree_from_schedule(instance: Instance, data: dict) -> WakeUpTree:
    """Rebuild the tree by replaying a schedule file's events in order."""
    if not isinstance(data, dict) or "events" not in data:
        raise ValidationError("schedule file: missing 'events'")
    n = instance.n
    builder = TreeBuilder(n)
    last_t = 0.0
    for i, ev in enumerate(data["events"]):
        try:
            t, waker, woken = float(ev["t"]), int(ev["waker"]), int(ev["woken"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"schedule file: event {i} malformed: {exc}") from exc
        if t < last_t - TOL:
            raise ValidationError(f"schedule file: event {i} out of time order")
        last_t = max(last_t, t)
        if not (0 <= waker < n and 0 <= woken < n):
            raise ValidationError(f"schedule file: event {i} names unknown robot")
        try:
            builder.wake(waker, woken)
        except RuntimeError as exc:
            raise ValidationError(f"schedule file: event {i}: {exc}") from exc
    if not builder.complete:
        raise ValidationError("schedule file: not all robots woken")
    return builder.build()
