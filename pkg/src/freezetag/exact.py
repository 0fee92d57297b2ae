"""Exhaustive solvers: the desk-scale optimum oracle.

The search walks rational strategies only: whenever a robot becomes
available it immediately claims some asleep unclaimed robot (or rests
forever when none exists).  Restricting to rational strategies loses no
optimality, and it turns the problem into a finite claim-assignment search.

Pruning (none of it affects optimality):

* admissible bound -- every unclaimed robot must be reached from one of the
  currently scheduled robots, so max over unclaimed sites of the best such
  arrival lower-bounds any completion of the state;
* colocated forcing -- claiming a sleeper at your own site costs zero time,
  so it is never wrong to do it first;
* twin sites -- sites with identical distance rows and robot counts are
  interchangeable while untouched, so only the smallest is tried;
* simultaneous groups -- robots available at the same instant and site are
  interchangeable, so target sites are assigned in ascending order.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

from .constants import TOL
from .errors import CapacityError, PreconditionError
from .instances import Instance, StarInstance
from .trees import WakeUpTree

_EXACT_EPS = 1e-12


@dataclass(frozen=True)
class ExactResult:
    tree: WakeUpTree
    makespan: float
    optimal: bool
    nodes: int


def _twin_site_classes(inst: Instance) -> dict[int, tuple[int, ...]]:
    """Group occupied sites into interchangeability classes.

    Two sites are twins when they hold equally many robots and have
    identical distance rows to every other occupied site; swapping them is
    then a relabeling.  Returns site -> sorted class members.
    """
    sites = inst.occupied_sites()
    classes: dict[int, tuple[int, ...]] = {}
    for i, a in enumerate(sites):
        if a in classes:
            continue
        members = [a]
        for b in sites[i + 1:]:
            if b in classes or len(inst.robots_at(a)) != len(inst.robots_at(b)):
                continue
            if all(abs(inst.site_distance(a, x) - inst.site_distance(b, x)) <= _EXACT_EPS
                   for x in sites if x not in (a, b)):
                members.append(b)
        group = tuple(members)
        for m in members:
            classes[m] = group
    return classes


class _Search:
    def __init__(self, inst: Instance, time_budget: float | None,
                 spoke_filter: bool = False):
        self.inst = inst
        self.n = inst.n
        self.deadline = None if time_budget is None else time.monotonic() + time_budget
        self.spoke_filter = spoke_filter
        self.sites = inst.occupied_sites()
        self.twin_class = _twin_site_classes(inst)
        self.orig_count = {s: len([r for r in inst.robots_at(s) if r != 0])
                           for s in self.sites}
        self.unclaimed: dict[int, list[int]] = {
            s: sorted(r for r in inst.robots_at(s) if r != 0) for s in self.sites}
        self.n_unclaimed = self.n - 1
        self.pending: dict[int, tuple[float, int]] = {0: (0.0, inst.site_of(0))}
        self.parent: list = [None] * self.n
        self.cur: list = [None] * self.n
        self.cur[0] = 0
        self.best = math.inf
        self.best_parent: list | None = None
        self.cur_max = 0.0
        self.nodes = 0
        self.aborted = False

    def _spoke_ok(self, from_site: int, to_site: int) -> bool:
        """Nondecreasing spoke lengths along a robot's claim sequence."""
        if not self.spoke_filter or from_site == 0:
            return True
        star = self.inst
        return star.spoke_lengths[to_site - 1] >= star.spoke_lengths[from_site - 1] - TOL

    def _lower_bound(self) -> float:
        lb = self.cur_max
        pend = list(self.pending.values())
        for s, robots in self.unclaimed.items():
            if not robots:
                continue
            reach = min(t + self.inst.site_distance(site, s) for t, site in pend)
            if reach > lb:
                lb = reach
        return lb

    def _claim(self, robot: int, target: int):
        """Apply a claim and return the undo record."""
        t, site = self.pending[robot]
        tsite = self.inst.site_of(target)
        arrival = t + self.inst.site_distance(site, tsite)
        undo = (robot, self.pending[robot], target, self.cur[robot], self.cur_max)
        self.unclaimed[tsite].remove(target)
        self.n_unclaimed -= 1
        self.pending[robot] = (arrival, tsite)
        self.pending[target] = (arrival, tsite)
        self.parent[target] = self.cur[robot]
        self.cur[robot] = target
        self.cur[target] = target
        self.cur_max = max(self.cur_max, arrival)
        return undo

    def _undo(self, undo) -> None:
        robot, old_entry, target, old_cur, old_max = undo
        tsite = self.inst.site_of(target)
        self.unclaimed[tsite].append(target)
        self.unclaimed[tsite].sort()
        self.n_unclaimed += 1
        self.pending[robot] = old_entry
        del self.pending[target]
        self.parent[target] = None
        self.cur[robot] = old_cur
        self.cur[target] = None
        self.cur_max = old_max

    def run(self) -> None:
        self._recurse({})
        if self.best_parent is None:
            # budget hit before any leaf; fall back to nearest-first greedy
            self._greedy_fallback()

    def _greedy_fallback(self) -> None:
        while self.n_unclaimed:
            t, robot = min((entry[0], r) for r, entry in self.pending.items())
            _, site = self.pending[robot]
            options = [(self.inst.site_distance(site, s), s)
                       for s, robots in self.unclaimed.items()
                       if robots and self._spoke_ok(site, s)]
            if not options:
                del self.pending[robot]
                continue
            _, s = min(options)
            self._claim(robot, self.unclaimed[s][0])
        if self.cur_max < self.best:
            self.best = self.cur_max
            self.best_parent = list(self.parent)

    def _recurse(self, group_floor: dict) -> None:
        self.nodes += 1
        if self.aborted:
            return
        if self.deadline is not None and self.nodes % 1024 == 0:
            if time.monotonic() > self.deadline:
                self.aborted = True
                return
        if self.n_unclaimed == 0:
            if self.cur_max < self.best - _EXACT_EPS:
                self.best = self.cur_max
                self.best_parent = list(self.parent)
            return
        if not self.pending:
            return  # everyone rested under the spoke filter: dead branch
        if self._lower_bound() >= self.best - _EXACT_EPS:
            return
        t, robot = min((entry[0], r) for r, entry in self.pending.items())
        _, site = self.pending[robot]

        # free colocated sleepers first; never loses optimality
        local = self.unclaimed.get(site)
        if local:
            undo = self._claim(robot, local[0])
            self._recurse(group_floor)
            self._undo(undo)
            return

        def fresh(s: int) -> bool:
            return len(self.unclaimed[s]) == self.orig_count[s]

        viable = []
        for s, robots in self.unclaimed.items():
            if not robots or not self._spoke_ok(site, s):
                continue
            if fresh(s) and any(m < s and fresh(m) for m in self.twin_class[s]):
                continue  # an untouched smaller twin already stands in for it
            viable.append(s)
        if not viable:
            # nothing claimable under the spoke filter: the robot rests forever
            entry = self.pending.pop(robot)
            self._recurse(group_floor)
            self.pending[robot] = entry
            return
        floor = group_floor.get((t, site), -1)
        candidates = [s for s in viable if s > floor]
        # interchangeable same-instant claims are enumerated in ascending
        # site order only; a branch with nothing above the floor is a
        # reordering of one already explored
        candidates.sort(key=lambda s: (-self.inst.site_distance(site, s), s))
        for s in candidates:
            undo = self._claim(robot, self.unclaimed[s][0])
            child_floor = dict(group_floor)
            child_floor[(t, site)] = s
            self._recurse(child_floor)
            self._undo(undo)
            if self.aborted:
                return


def _check_capacity(inst: Instance, max_robots: int) -> None:
    if inst.n > max_robots:
        raise CapacityError(
            f"instance has {inst.n} robots, exact search is capped at "
            f"{max_robots} (raise max_robots to override)")


def solve_optimal(instance: Instance, max_robots: int = 10,
                  time_budget: float | None = None) -> ExactResult:
    """Minimum-makespan wake-up tree by exhaustive rational-strategy search.

    Raises CapacityError beyond ``max_robots``.  If ``time_budget`` (seconds)
    runs out, the best tree found so far is returned with ``optimal=False``.
    """
    _check_capacity(instance, max_robots)
    if instance.n == 1:
        return ExactResult(WakeUpTree.from_parents([None]), 0.0, True, 1)
    search = _Search(instance, time_budget)
    search.run()
    tree = WakeUpTree.from_parents(search.best_parent)
    return ExactResult(tree, search.best, not search.aborted, search.nodes)


def solve_optimal_equal_star(star: StarInstance, max_robots: int = 10,
                             time_budget: float | None = None) -> ExactResult:
    """Optimal solver for stars with a uniform per-leaf robot count.

    Explores only claim sequences whose spoke lengths never decrease, which
    is enough to contain an optimum on equal-robot stars and prunes hard.
    """
    if star.kind != "star":
        raise PreconditionError("equal-star solver needs a star instance")
    if star.uniform_q is None:
        raise PreconditionError("equal-star solver needs a uniform robot count per leaf")
    _check_capacity(star, max_robots)
    if star.n == 1:
        return ExactResult(WakeUpTree.from_parents([None]), 0.0, True, 1)
    search = _Search(star, time_budget, spoke_filter=True)
    search.run()
    tree = WakeUpTree.from_parents(search.best_parent)
    return ExactResult(tree, search.best, not search.aborted, search.nodes)


def min_average_completion(instance: Instance, max_robots: int = 6) -> float:
    """Exhaustive minimum of the average completion time over rational plays.

    A robot's completion is when it comes to rest for good: the wake time of
    its last victim, or its own wake time if it never claims anyone.  Full
    enumeration without makespan pruning, so keep n small.
    """
    _check_capacity(instance, max_robots)
    n = instance.n
    if n == 1:
        return 0.0
    best = math.inf

    # pending maps an available robot to (availability time, site)
    def recurse(pending: dict, unclaimed: dict, remaining: int,
                completions: dict, floor: dict) -> None:
        nonlocal best
        if remaining == 0:
            settled = dict(completions)
            for r, (t, _s) in pending.items():
                settled.setdefault(r, t)
            best = min(best, sum(settled.values()) / n)
            return
        t, robot = min((entry[0], r) for r, entry in pending.items())
        _, site = pending[robot]
        viable = sorted(s for s, robots in unclaimed.items() if robots)
        if not viable:
            new_pending = dict(pending)
            del new_pending[robot]
            new_completions = dict(completions)
            new_completions.setdefault(robot, t)
            recurse(new_pending, unclaimed, remaining, new_completions, floor)
            return
        group_floor = floor.get((t, site), -1)
        for s in viable:
            if s <= group_floor:
                continue  # reordering of an explored same-instant branch
            target = unclaimed[s][0]
            arrival = t + instance.site_distance(site, s)
            new_pending = dict(pending)
            new_pending[robot] = (arrival, s)
            new_pending[target] = (arrival, s)
            new_unclaimed = {k: list(v) for k, v in unclaimed.items()}
            new_unclaimed[s].remove(target)
            new_completions = dict(completions)
            new_completions[robot] = arrival
            new_floor = dict(floor)
            new_floor[(t, site)] = s
            recurse(new_pending, new_unclaimed, remaining - 1,
                    new_completions, new_floor)

    unclaimed0 = {s: sorted(r for r in instance.robots_at(s) if r != 0)
                  for s in instance.occupied_sites()}
    recurse({0: (0.0, instance.site_of(0))}, unclaimed0, n - 1, {}, {})
    return best
