"""Instance representations for the freeze-tag solvers.

An instance is a finite metric over occupied sites plus a robot population:
robot 0 (the source, initially awake) and asleep robots everywhere else.
Robot ids are dense 0..n-1; the source site's robots come first, remaining
sites follow in ascending site order.  Three kinds are supported:

* ``StarInstance``   -- weighted star, source at the center.
* ``GraphInstance``  -- connected weighted graph, metric = shortest paths.
* ``PointsInstance`` -- planar/point set under an Lp metric.
"""

from __future__ import annotations

import heapq
import math

from .errors import ValidationError


class Instance:
    """Common surface: robot ids, site lookup, and a metric between sites."""

    kind = "abstract"

    def __init__(self, robot_site: list[int], source_site: int):
        if not robot_site:
            raise ValidationError("no robots")
        if robot_site[0] != source_site:
            raise ValidationError("robot 0 must sit at the source site")
        self._robot_site = robot_site
        self.source_site = source_site
        self._site_robots: dict[int, list[int]] = {}
        for rid, site in enumerate(robot_site):
            self._site_robots.setdefault(site, []).append(rid)

    @property
    def n(self) -> int:
        return len(self._robot_site)

    def site_of(self, robot: int) -> int:
        return self._robot_site[robot]

    def robots_at(self, site: int) -> list[int]:
        return self._site_robots.get(site, [])

    def occupied_sites(self) -> list[int]:
        return sorted(self._site_robots)

    def site_distance(self, a: int, b: int) -> float:
        raise NotImplementedError

    def distance(self, r1: int, r2: int) -> float:
        """Metric distance between two robots' home sites."""
        return self.site_distance(self._robot_site[r1], self._robot_site[r2])


def _assign_robots(counts_by_site: list[tuple[int, int]], source_site: int) -> list[int]:
    """Dense robot->site assignment, source site's robots first."""
    counts = dict(counts_by_site)
    if counts.get(source_site, 0) < 1:
        raise ValidationError("missing source: source site has no robot")
    order = [source_site] + [s for s, _ in counts_by_site if s != source_site]
    robot_site = []
    for site in order:
        robot_site.extend([site] * counts[site])
    return robot_site


class StarInstance(Instance):
    """Weighted star: site 0 is the center (source), site i+1 is leaf i."""

    kind = "star"

    def __init__(self, spoke_lengths: list[float], robots_at_leaf: list[int]):
        if len(spoke_lengths) != len(robots_at_leaf):
            raise ValidationError("spoke length list and robot count list differ in size")
        for i, length in enumerate(spoke_lengths):
            if not (length > 0):
                raise ValidationError(f"spoke {i}: length must be positive, got {length}")
        for i, q in enumerate(robots_at_leaf):
            if q < 1 or q != int(q):
                raise ValidationError(f"spoke {i}: robot count must be a positive integer, got {q}")
        self.spoke_lengths = [float(x) for x in spoke_lengths]
        self.robots_at_leaf = [int(q) for q in robots_at_leaf]
        self.m = len(spoke_lengths)
        counts = [(0, 1)] + [(i + 1, self.robots_at_leaf[i]) for i in range(self.m)]
        super().__init__(_assign_robots(counts, 0), 0)

    @property
    def uniform_q(self) -> int | None:
        """Common per-leaf robot count, or None when counts vary (vacuously 1 if m=0)."""
        if self.m == 0:
            return 1
        q = self.robots_at_leaf[0]
        return q if all(c == q for c in self.robots_at_leaf) else None

    def leaf_site(self, leaf: int) -> int:
        return leaf + 1

    def site_distance(self, a: int, b: int) -> float:
        if a == b:
            return 0.0
        if a == 0:
            return self.spoke_lengths[b - 1]
        if b == 0:
            return self.spoke_lengths[a - 1]
        return self.spoke_lengths[a - 1] + self.spoke_lengths[b - 1]


class GraphInstance(Instance):
    """Connected weighted graph; the metric is all-pairs shortest paths.

    Shortest-path distances are computed once at construction (Dijkstra from
    each vertex), so ``site_distance`` is a table lookup afterwards.
    """

    kind = "graph"

    def __init__(self, num_vertices: int, edges: list[tuple[int, int, float]],
                 robots: list[int], source: int = 0):
        if num_vertices < 1:
            raise ValidationError("graph needs at least one vertex")
        if len(robots) != num_vertices:
            raise ValidationError("robot count list must have one entry per vertex")
        if not (0 <= source < num_vertices):
            raise ValidationError(f"missing source: vertex {source} not in graph")
        self.num_vertices = num_vertices
        self.source = source
        self.edges = []
        self.adj: list[list[tuple[int, float]]] = [[] for _ in range(num_vertices)]
        for (u, v, w) in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices) or u == v:
                raise ValidationError(f"bad edge ({u},{v})")
            if not (w > 0):
                raise ValidationError(f"edge ({u},{v}): weight must be positive, got {w}")
            self.edges.append((int(u), int(v), float(w)))
            self.adj[u].append((v, float(w)))
            self.adj[v].append((u, float(w)))
        self.robots = [int(r) for r in robots]
        if any(r < 0 for r in self.robots):
            raise ValidationError("negative robot count")
        self._dist = [self._dijkstra(v) for v in range(num_vertices)]
        if any(math.isinf(d) for d in self._dist[source]):
            raise ValidationError("disconnected graph")
        counts = [(v, self.robots[v]) for v in range(num_vertices) if self.robots[v] > 0]
        super().__init__(_assign_robots(counts, source), source)

    def _dijkstra(self, start: int) -> list[float]:
        dist = [math.inf] * self.num_vertices
        dist[start] = 0.0
        heap = [(0.0, start)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for v, w in self.adj[u]:
                nd = d + w
                if nd < dist[v]:
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        return dist

    def site_distance(self, a: int, b: int) -> float:
        return self._dist[a][b]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def local_weight_ratio(self, v: int) -> float:
        """Max/min weight over edges incident to v (1.0 for isolated vertices)."""
        weights = [w for _, w in self.adj[v]]
        return max(weights) / min(weights) if weights else 1.0

    @property
    def rho_max(self) -> float:
        return max(self.local_weight_ratio(v) for v in range(self.num_vertices))

    @property
    def degree_pressure(self) -> float:
        """Max over occupied vertices of degree demand per resident robot.

        deg(source)/r(source) at the source and (deg(v)-2)/r(v) elsewhere;
        this is the quantity the online cascade's competitive bound scales with.
        """
        best = self.degree(self.source) / self.robots[self.source]
        for v in range(self.num_vertices):
            if v != self.source and self.robots[v] > 0:
                best = max(best, (self.degree(v) - 2) / self.robots[v])
        return best


class PointsInstance(Instance):
    """Point set with an Lp metric; site i is point i."""

    kind = "points"
    _METRICS = ("L2", "L1", "Linf")

    def __init__(self, points: list[tuple[float, ...]], robots: list[int],
                 source: int = 0, metric: str = "L2"):
        if not points:
            raise ValidationError("no robots")
        if len(robots) != len(points):
            raise ValidationError("robot count list must have one entry per point")
        if metric not in self._METRICS:
            raise ValidationError(f"unknown metric {metric!r}")
        dims = {len(p) for p in points}
        if len(dims) != 1:
            raise ValidationError("points have mixed dimensions")
        self.dim = dims.pop()
        if self.dim < 1:
            raise ValidationError("points need at least one coordinate")
        if not (0 <= source < len(points)):
            raise ValidationError(f"missing source: point {source} out of range")
        self.points = [tuple(float(c) for c in p) for p in points]
        self.metric = metric
        self.source = source
        self.robots = [int(r) for r in robots]
        if any(r < 0 for r in self.robots):
            raise ValidationError("negative robot count")
        counts = [(i, self.robots[i]) for i in range(len(points)) if self.robots[i] > 0]
        super().__init__(_assign_robots(counts, source), source)

    def site_distance(self, a: int, b: int) -> float:
        pa, pb = self.points[a], self.points[b]
        deltas = [abs(x - y) for x, y in zip(pa, pb)]
        if self.metric == "L2":
            return math.sqrt(sum(d * d for d in deltas))
        if self.metric == "L1":
            return sum(deltas)
        return max(deltas)


def lower_bounds(instance: Instance) -> tuple[float, float]:
    """Two lower bounds on any wake-up makespan.

    Returns ``(max distance from the source to any robot, diameter/2)``,
    both over occupied sites.  Every valid tree's makespan is at least the
    max of the two: the farthest robot must be reached, and whoever wakes
    the far end of a diameter pair started within half a diameter of it.
    """
    sites = instance.occupied_sites()
    src = instance.site_of(0)
    reach = max(instance.site_distance(src, s) for s in sites)
    diam = 0.0
    for i, a in enumerate(sites):
        for b in sites[i + 1:]:
            diam = max(diam, instance.site_distance(a, b))
    return reach, diam / 2.0
