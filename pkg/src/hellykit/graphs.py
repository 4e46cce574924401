"""Finite simple graphs with the hop metric, and the path machinery built on it.

Vertices are dense integers 0..n-1.  All set-valued results are returned as
sorted lists so that downstream reports are reproducible.  Graphs are immutable
after construction and safe to share between workers; every operation here is a
pure function of its inputs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

GEODESIC_CAP_DEFAULT = 100_000


class GraphError(ValueError):
    pass


class NotConnectedError(GraphError):
    pass


class GeodesicCapExceeded(GraphError):
    """Raised when geodesic enumeration would silently truncate."""


class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Loops are dropped and parallel edges collapsed at construction; the hop
    metric is unaffected by either.  Optional vertex labels are carried as
    opaque strings for export only.
    """

    __slots__ = ("n", "adj", "labels", "_dist")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]],
                 labels: Optional[dict[int, str]] = None):
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        adj = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                continue
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adj = tuple(tuple(sorted(s)) for s in adj)
        self.labels = dict(labels) if labels else {}
        self._dist = None

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def is_connected(self) -> bool:
        seen = self._bfs(0)
        return all(d >= 0 for d in seen)

    def _bfs(self, source: int) -> list[int]:
        dist = [-1] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def dist(self) -> tuple[tuple[int, ...], ...]:
        """All-pairs hop distances; raises NotConnectedError on disconnected input."""
        if self._dist is None:
            rows = []
            for s in range(self.n):
                row = self._bfs(s)
                if any(d < 0 for d in row):
                    raise NotConnectedError("graph not connected")
                rows.append(tuple(row))
            self._dist = tuple(rows)
        return self._dist

    def d(self, u: int, v: int) -> int:
        return self.dist()[u][v]

    def eccentricity(self, v: int) -> int:
        return max(self.dist()[v])

    def diameter(self) -> int:
        return max(max(row) for row in self.dist())

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.edge_count()})"


@dataclass(frozen=True)
class QGParams:
    """Quasigeodesic parameters: stretch lam >= 1, additive c >= 0, optional
    window bound for local-geodesic checks."""

    lam: Fraction
    c: Fraction
    k_local: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "lam", Fraction(self.lam))
        object.__setattr__(self, "c", Fraction(self.c))
        if self.lam < 1:
            raise ValueError("lam must be >= 1")
        if self.c < 0:
            raise ValueError("c must be >= 0")
        if self.k_local is not None and self.k_local < 2:
            raise ValueError("k_local must be >= 2")


@dataclass(frozen=True)
class PathClass:
    is_geodesic: bool
    is_quasigeodesic: bool
    is_k_local_geodesic: Optional[bool]


def distance_matrix(g: Graph) -> tuple[tuple[int, ...], ...]:
    """All-pairs shortest paths by BFS; symmetric with zero diagonal."""
    return g.dist()


def ball(g: Graph, center: int, rho: int) -> list[int]:
    """Vertices at hop distance <= rho from center, sorted."""
    if not 0 <= center < g.n:
        raise GraphError("center out of range")
    row = g.dist()[center]
    return [v for v in range(g.n) if row[v] <= rho]


def interval(g: Graph, u: int, v: int) -> list[int]:
    """All vertices on some geodesic between u and v (metric betweenness)."""
    d = g.dist()
    duv = d[u][v]
    return [z for z in range(g.n) if d[u][z] + d[z][v] == duv]


def power_graph(g: Graph, k: int) -> Graph:
    """Same vertices, edges between distinct vertices at distance <= k.

    Distances obey d_k(u,v) = ceil(d(u,v)/k).
    """
    if k < 1:
        raise GraphError("power requires k >= 1")
    if k == 1:
        return g
    d = g.dist()
    edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if d[u][v] <= k]
    return Graph(g.n, edges, labels=g.labels)


def full_subgraph(g: Graph, vertices: Sequence[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on the given vertex set, relabelled 0..|S|-1.

    Returns (subgraph, old->new map).  Raises if S is empty or the induced
    subgraph is disconnected: callers need a connected piece.
    """
    vs = sorted(set(vertices))
    if not vs:
        raise GraphError("empty vertex set")
    index = {v: i for i, v in enumerate(vs)}
    edges = [(index[u], index[v]) for u in vs for v in g.adj[u] if v in index and u < v]
    sub = Graph(len(vs), edges, labels={index[v]: g.labels[v] for v in vs if v in g.labels})
    if not sub.is_connected():
        raise NotConnectedError("induced subgraph not connected")
    return sub, index


def is_isometric_subgraph(sub: Graph, embedding: Sequence[int], sup: Graph
                          ) -> tuple[bool, Optional[tuple[int, int]]]:
    """Check d_sub(u,v) == d_sup(phi u, phi v) for all pairs.

    The embedding must map edges to edges (distances can then only drop, so a
    failure witness always has d_sub > d_sup).  Returns (ok, witness pair).
    """
    if len(embedding) != sub.n:
        raise GraphError("embedding has wrong length")
    for u in range(sub.n):
        for v in sub.adj[u]:
            if u < v and embedding[v] not in sup.adj[embedding[u]]:
                raise GraphError(f"embedding does not preserve edge ({u},{v})")
    ds, dS = sub.dist(), sup.dist()
    for u in range(sub.n):
        for v in range(u + 1, sub.n):
            if ds[u][v] != dS[embedding[u]][embedding[v]]:
                return False, (u, v)
    return True, None


def _check_path(g: Graph, path: Sequence[int]) -> None:
    if not path:
        raise GraphError("empty vertex sequence is not a path")
    for v in path:
        if not 0 <= v < g.n:
            raise GraphError("path vertex out of range")
    for a, b in zip(path, path[1:]):
        if b not in g.adj[a]:
            raise GraphError(f"({a},{b}) is not an edge")


def classify_path(g: Graph, path: Sequence[int], q: QGParams) -> PathClass:
    """Geodesic / (lam,c)-quasigeodesic / k-local-geodesic classification.

    The quasigeodesic test checks |i-j| <= lam*d(p_i,p_j) + c over every vertex
    pair, i.e. over all subpaths.
    """
    _check_path(g, path)
    d = g.dist()
    n = len(path) - 1
    is_geo = n == d[path[0]][path[n]]
    is_qg = True
    for i in range(n + 1):
        for j in range(i + 1, n + 1):
            if j - i > q.lam * d[path[i]][path[j]] + q.c:
                is_qg = False
                break
        if not is_qg:
            break
    local = None
    if q.k_local is not None:
        local = True
        for i in range(n + 1):
            for j in range(i + 1, min(i + q.k_local, n) + 1):
                if j - i != d[path[i]][path[j]]:
                    local = False
                    break
            if not local:
                break
    return PathClass(is_geo, is_qg, local)


def hausdorff_distance(g: Graph, a: Iterable[int], b: Iterable[int]) -> int:
    sa, sb = sorted(set(a)), sorted(set(b))
    if not sa or not sb:
        raise GraphError("hausdorff distance needs nonempty sets")
    d = g.dist()
    ab = max(min(d[x][y] for y in sb) for x in sa)
    ba = max(min(d[y][x] for x in sa) for y in sb)
    return max(ab, ba)


def enumerate_geodesics(g: Graph, u: int, v: int, cap: int = GEODESIC_CAP_DEFAULT,
                        allow_truncate: bool = False) -> tuple[list[tuple[int, ...]], bool]:
    """All geodesics u -> v as vertex tuples, lexicographically ordered.

    Refuses to truncate silently: if more than `cap` geodesics exist, raises
    GeodesicCapExceeded unless allow_truncate is set, in which case the first
    `cap` are returned with a truncation flag.
    """
    d = g.dist()
    du, dv = d[u], d[v]
    total = du[v]
    out: list[tuple[int, ...]] = []
    truncated = False

    def walk(z: int, acc: list[int]) -> bool:
        if z == v:
            out.append(tuple(acc))
            return len(out) <= cap
        for w in g.adj[z]:
            if du[w] == du[z] + 1 and du[w] + dv[w] == total:
                acc.append(w)
                ok = walk(w, acc)
                acc.pop()
                if not ok:
                    return False
        return True

    completed = walk(u, [u])
    if not completed:
        if not allow_truncate:
            raise GeodesicCapExceeded(f"more than {cap} geodesics between {u} and {v}")
        truncated = True
        del out[cap:]
    return out, truncated


def count_geodesics(g: Graph, u: int, v: int) -> int:
    """Number of geodesics u -> v by dynamic programming over the distance DAG."""
    d = g.dist()
    du, dv = d[u], d[v]
    total = du[v]
    layer = sorted((z for z in range(g.n) if du[z] + dv[z] == total), key=lambda z: du[z])
    count = {u: 1}
    for z in layer:
        if z == u:
            continue
        count[z] = sum(count.get(w, 0) for w in g.adj[z]
                       if du[w] == du[z] - 1 and du[w] + dv[w] == total)
    return count.get(v, 0)


@dataclass(frozen=True)
class ThinnessReport:
    delta_thin: int
    delta_slim: int
    triangles: int
    exhaustive: bool
    samples: int


def _triangle_constants(g: Graph, p: Sequence[int], q: Sequence[int], r: Sequence[int]
                        ) -> tuple[int, int]:
    """(thin, slim) constants of one geodesic triangle p: a->b, q: b->c, r: c->a.

    Thin pairs match vertices at equal distance from a shared corner, up to
    that corner's Gromov product; slim measures each side against the union of
    the other two.
    """
    d = g.dist()
    lp, lq, lr = len(p) - 1, len(q) - 1, len(r) - 1
    thin = 0
    # corner a = p_- = r_+ : pair p[t] with r[lr - t]
    for side1, l1, side2, l2, lopp in (
            (p, lp, r, lr, lq),   # corner a
            (q, lq, p, lp, lr),   # corner b = p_+ = q_-
            (r, lr, q, lq, lp)):  # corner c = q_+ = r_-
        bound = (l1 + l2 - lopp) // 2
        for t in range(0, bound + 1):
            thin = max(thin, d[side1[t]][side2[l2 - t]])
    slim = 0
    for side, others in ((p, q + r), (q, r + p), (r, p + q)):
        for u in side:
            slim = max(slim, min(d[u][w] for w in others))
    return thin, slim


def thinness_delta(g: Graph, max_exhaustive: int = 10, samples: int = 2000,
                   seed: int = 0, cap: int = GEODESIC_CAP_DEFAULT) -> ThinnessReport:
    """Max thin and slim constants over geodesic triangles.

    Exhaustive over all corner triples and all geodesic choices when
    n <= max_exhaustive; otherwise `samples` random triangles are drawn with a
    seeded generator and the report says so.
    """
    import random

    g.dist()
    thin = slim = 0
    checked = 0
    if g.n <= max_exhaustive:
        geos: dict[tuple[int, int], list[tuple[int, ...]]] = {}
        for u in range(g.n):
            for v in range(g.n):
                geos[(u, v)], _ = enumerate_geodesics(g, u, v, cap=cap)
        for a in range(g.n):
            for b in range(g.n):
                for c in range(g.n):
                    for p in geos[(a, b)]:
                        for q in geos[(b, c)]:
                            for r in geos[(c, a)]:
                                t, s = _triangle_constants(g, p, q, r)
                                thin = max(thin, t)
                                slim = max(slim, s)
                                checked += 1
        return ThinnessReport(thin, slim, checked, True, 0)

    rng = random.Random(seed)

    def random_geodesic(u: int, v: int) -> list[int]:
        d = g.dist()
        path = [u]
        z = u
        while z != v:
            nxt = [w for w in g.adj[z] if d[w][v] == d[z][v] - 1]
            z = rng.choice(nxt)
            path.append(z)
        return path

    for _ in range(samples):
        a, b, c = (rng.randrange(g.n) for _ in range(3))
        p = random_geodesic(a, b)
        q = random_geodesic(b, c)
        r = random_geodesic(c, a)
        t, s = _triangle_constants(g, p, q, r)
        thin = max(thin, t)
        slim = max(slim, s)
        checked += 1
    return ThinnessReport(thin, slim, checked, False, samples)
