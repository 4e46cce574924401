"""Finite windows of the glued graph the CLI calls `gamma`: the barycentric
subdivision of the Cayley graph over X, together with one thickened parabolic
copy per right coset of each factor, joined by connecting edges.

Vertices come in three kinds:

  ("free", g)            g a group element
  ("med", (g, x))        the midpoint of the X-edge from g to image(x)*g,
                         stored as the lexicographically smaller of the two
                         equivalent (element, letter) pairs
  ("int", j, rep, u)     vertex u of the factor-j model, in the copy attached
                         to the coset with canonical representative rep (the
                         normal form with its leading factor-j syllable
                         stripped)

Edges: free (free-medial), connecting (free-internal), internal (two vertices
of one copy at model distance <= N).  Every free vertex has degree |X| + m and
every medial vertex degree 2; no two free vertices are adjacent.

Windows are truncated balls around the identity free vertex.  A vertex's
neighbor set is materialized exactly when its distance from the base is < R,
which is what makes the distance certificates below sound: if
dist(u) + d_window(u, v) <= R, every potentially shorter path would stay
strictly inside the materialized region, so the window distance is the true
distance in the infinite graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import ceil
from typing import Optional

from .groups import Element, GroupError, GroupSpec, Letter

WINDOW_GUARD_DEFAULT = 200_000

GammaVertex = tuple


class WindowError(GroupError):
    pass


def min_n_quotient(spec: GroupSpec) -> int:
    """Least N compatible with the basepoint-orbit condition on the parabolic
    models.  All shipped models carry transitive actions, so their quotients
    are single vertices and the answer is 1."""
    return 1


def min_n_loops(spec: GroupSpec) -> int:
    """Least N compatible with the short-cycle condition on parabolic letters.

    A cyclic word of length <= 3 over the relative alphabet with single-letter
    components and trivial image must, in a free product, be either an X-letter
    against the parabolic letter with the same image (norm 1) or two X-letters
    against the parabolic letter carrying their product; so the condition
    reduces to products of two generators of one factor.  Without N at least
    this large, genuine window geodesics exist whose derived words are not
    2-local geodesics (two generator hops against one parabolic letter).
    """
    need = 1
    for factor in spec.factors:
        for g1 in factor.generators:
            for g2 in factor.generators:
                h = factor.mul(g1, g2)
                if h != factor.identity:
                    need = max(need, factor.graph_distance(factor.identity, h))
    return need


def recommended_n(spec: GroupSpec) -> int:
    """Least N satisfying both computable ambient clauses."""
    return max(min_n_quotient(spec), min_n_loops(spec))


def certified_clauses(spec: GroupSpec, n_thick: int) -> dict[str, object]:
    """Which ambient assumption clauses a given N certifies.  The prohibited-
    path clause depends on a non-constructive word list and stays assumed."""
    return {
        "quotient_radius": n_thick >= min_n_quotient(spec),
        "prohibited_words": "assumed",
        "short_cycles": n_thick >= min_n_loops(spec),
    }


@dataclass(frozen=True)
class GammaConfig:
    spec: GroupSpec
    n_thick: int
    allow_small_n: bool = False

    def __post_init__(self):
        if self.n_thick < 1:
            raise WindowError("N must be >= 1")
        if not self.allow_small_n and self.n_thick < min_n_quotient(self.spec):
            raise WindowError(
                f"N={self.n_thick} below the quotient bound "
                f"{min_n_quotient(self.spec)}; pass allow_small_n to override")

    # -- vertex constructors ------------------------------------------------

    def free(self, g: Element) -> GammaVertex:
        return ("free", g)

    def medial(self, g: Element, x: Letter) -> GammaVertex:
        other = (self.spec.multiply(self.spec.letter_image(x), g),
                 self.spec.letter_invert(x))
        return ("med", min((g, x), other))

    def internal(self, j: int, g: Element, u) -> GammaVertex:
        return ("int", j, self.strip_coset(g, j), u)

    def strip_coset(self, g: Element, j: int) -> Element:
        """Canonical right-coset representative: drop a leading j-syllable."""
        if g and g[0][0] == "p" and g[0][1] == j:
            return g[1:]
        return g

    def base_vertex(self) -> GammaVertex:
        return ("free", self.spec.identity)

    # -- the neighbor rule ----------------------------------------------------

    def neighbors(self, v: GammaVertex) -> list[GammaVertex]:
        spec = self.spec
        kind = v[0]
        out: list[GammaVertex] = []
        if kind == "free":
            g = v[1]
            for x in spec.x_letters():
                out.append(self.medial(g, x))
            for j in range(len(spec.factors)):
                out.append(("int", j, self.strip_coset(g, j), spec.project(g, j)))
        elif kind == "med":
            g, x = v[1]
            out.append(("free", g))
            out.append(("free", spec.multiply(spec.letter_image(x), g)))
        elif kind == "int":
            _, j, rep, u = v
            factor = spec.factors[j]
            for u2 in factor.near(u, self.n_thick):
                out.append(("int", j, rep, u2))
            # connecting free vertices: h * rep with h moving the basepoint
            # image of rep onto u; transitive models give exactly one
            h = factor.mul(u, factor.inv(spec.project(rep, j)))
            out.append(("free", spec.multiply(spec.parabolic(j, h), rep)))
        else:
            raise WindowError(f"unknown vertex kind {kind!r}")
        return sorted(set(out))

    def is_edge(self, u: GammaVertex, v: GammaVertex) -> bool:
        return v in self.neighbors(u)

    @staticmethod
    def edge_kind(u: GammaVertex, v: GammaVertex) -> str:
        kinds = {u[0], v[0]}
        if kinds == {"free", "med"}:
            return "free"
        if kinds == {"free", "int"}:
            return "connecting"
        if kinds == {"int"}:
            return "internal"
        raise WindowError(f"impossible edge {u[0]}-{v[0]}")


class GammaWindow:
    """BFS closure of the base free vertex to depth R; immutable once built."""

    def __init__(self, config: GammaConfig, radius: int,
                 max_vertices: int = WINDOW_GUARD_DEFAULT):
        self.config = config
        self.radius = radius
        self.base = config.base_vertex()
        dist: dict[GammaVertex, int] = {self.base: 0}
        adj: dict[GammaVertex, set] = {self.base: set()}
        queue = deque([self.base])
        while queue:
            v = queue.popleft()
            if dist[v] == radius:
                continue
            for w in config.neighbors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    adj[w] = set()
                    if len(dist) > max_vertices:
                        raise WindowError(
                            f"window exceeds {max_vertices} vertices at R={radius}")
                    queue.append(w)
                adj[v].add(w)
                adj[w].add(v)
        self.dist_from_base = dist
        self.adj = {v: tuple(sorted(ws)) for v, ws in adj.items()}

    def vertices(self) -> list[GammaVertex]:
        return sorted(self.dist_from_base)

    def free_vertices(self) -> list[GammaVertex]:
        return [v for v in self.vertices() if v[0] == "free"]

    def has_full_neighborhood(self, v: GammaVertex) -> bool:
        return self.dist_from_base[v] < self.radius

    def degree(self, v: GammaVertex) -> int:
        return len(self.adj[v])

    def window_distance(self, u: GammaVertex, v: GammaVertex
                        ) -> tuple[Optional[int], bool]:
        """(BFS distance inside the window, certified).  Certified means the
        value is provably the distance in the infinite graph."""
        if u not in self.adj or v not in self.adj:
            raise WindowError("vertex not in window")
        level = self._bfs_from(u, stop=v)
        hops = level.get(v)
        if hops is None:
            return None, False
        return hops, self.dist_from_base[u] + hops <= self.radius

    def _bfs_from(self, u: GammaVertex, stop: Optional[GammaVertex] = None
                  ) -> dict[GammaVertex, int]:
        level = {u: 0}
        queue = deque([u])
        while queue:
            z = queue.popleft()
            if stop is not None and z == stop:
                break
            for w in self.adj[z]:
                if w not in level:
                    level[w] = level[z] + 1
                    queue.append(w)
        return level

    # -- path analysis -------------------------------------------------------

    def check_path(self, path: list[GammaVertex]) -> None:
        if not path:
            raise WindowError("empty path")
        for v in path:
            if v not in self.adj:
                raise WindowError("path leaves the window")
        for a, b in zip(path, path[1:]):
            if b not in self.adj[a] and not self.config.is_edge(a, b):
                raise WindowError(f"not an edge: {a} - {b}")

    def _internal_runs(self, path: list[GammaVertex]) -> list[tuple[int, int]]:
        runs = []
        i = 0
        while i < len(path):
            if path[i][0] != "int":
                i += 1
                continue
            k = i
            while k + 1 < len(path) and path[k + 1][0] == "int":
                k += 1
            runs.append((i, k))
            i = k + 1
        return runs

    def copy_distance(self, u: GammaVertex, v: GammaVertex) -> int:
        """Distance inside a thickened copy: ceil of the model distance over N."""
        if u[0] != "int" or v[0] != "int" or u[1] != v[1] or u[2] != v[2]:
            raise WindowError("vertices are not in one copy")
        factor = self.config.spec.factors[u[1]]
        return ceil(factor.graph_distance(u[3], v[3]) / self.config.n_thick)

    def parabolic_shortenings(self, path: list[GammaVertex]
                              ) -> list[tuple[int, int, int, int]]:
        """All-internal subpaths that are not geodesic inside their copy,
        as (start, end, length, copy_distance).  Checking maximal runs
        suffices: subpaths of copy-geodesics are copy-geodesics."""
        self.check_path(path)
        out = []
        for a, b in self._internal_runs(path):
            if a == b:
                continue
            need = self.copy_distance(path[a], path[b])
            if b - a > need:
                out.append((a, b, b - a, need))
        return out

    def penetration_profile(self, path: list[GammaVertex]
                            ) -> list[tuple[tuple, GammaVertex, GammaVertex]]:
        """Copies visited, in order, with entry and exit vertices."""
        self.check_path(path)
        out = []
        for a, b in self._internal_runs(path):
            copy_id = (path[a][1], path[a][2])
            out.append((copy_id, path[a], path[b]))
        return out

    def geodesics_between(self, u: GammaVertex, v: GammaVertex,
                          cap: int = 100_000, allow_truncate: bool = False
                          ) -> tuple[list[list[GammaVertex]], bool]:
        """All geodesics between a certified pair, via the distance DAG."""
        hops, certified = self.window_distance(u, v)
        if not certified:
            raise WindowError("distance not certified; enlarge the window")
        down = self._bfs_from(v)
        out: list[list[GammaVertex]] = []
        truncated = False

        def walk(z: GammaVertex, acc: list[GammaVertex]) -> bool:
            if z == v:
                out.append(list(acc))
                return len(out) <= cap
            for w in self.adj[z]:
                if down.get(w) == down[z] - 1:
                    acc.append(w)
                    ok = walk(w, acc)
                    acc.pop()
                    if not ok:
                        return False
            return True

        if not walk(u, [u]):
            if not allow_truncate:
                raise WindowError(f"more than {cap} geodesics")
            truncated = True
            del out[cap:]
        return out, truncated

    def count_geodesics(self, u: GammaVertex, v: GammaVertex) -> int:
        """Geodesic count by dynamic programming over the distance DAG; the
        independent cross-check for geodesics_between."""
        hops, certified = self.window_distance(u, v)
        if not certified:
            raise WindowError("distance not certified")
        up = self._bfs_from(u)
        down = self._bfs_from(v)
        on_layer = sorted((z for z in self.adj
                           if z in up and z in down and up[z] + down[z] == hops),
                          key=lambda z: (up[z], z))
        count = {u: 1}
        for z in on_layer:
            if z == u:
                continue
            count[z] = sum(count.get(w, 0) for w in self.adj[z]
                           if w in up and up[w] == up[z] - 1
                           and down.get(w, -1) == down[z] + 1)
        return count.get(v, 0)

    def random_geodesic(self, rng, u: GammaVertex, v: GammaVertex
                        ) -> list[GammaVertex]:
        hops, certified = self.window_distance(u, v)
        if not certified:
            raise WindowError("distance not certified")
        down = self._bfs_from(v)
        path = [u]
        z = u
        while z != v:
            nxt = [w for w in self.adj[z] if down.get(w) == down[z] - 1]
            z = nxt[rng.randrange(len(nxt))]
            path.append(z)
        return path

    # -- export ---------------------------------------------------------------

    def kind_counts(self) -> dict[str, int]:
        counts = {"free": 0, "med": 0, "int": 0}
        for v in self.dist_from_base:
            counts[v[0]] += 1
        return counts

    def to_graph(self):
        """Project the window to a plain graph on 0..n-1 (window vertex order),
        e.g. to use it as the ambient graph of an orbit analysis.  Returns
        (graph, vertex list); vertex i of the graph is vertices[i]."""
        from .graphs import Graph

        verts = self.vertices()
        index = {v: i for i, v in enumerate(verts)}
        edges = [(index[u], index[v]) for u in verts for v in self.adj[u]
                 if index[u] < index[v]]
        labels = {i: v[0] for i, v in enumerate(verts)}
        return Graph(len(verts), edges, labels=labels), verts

    def to_json(self) -> dict:
        verts = self.vertices()
        index = {v: i for i, v in enumerate(verts)}
        edges = sorted((index[u], index[v]) for u in verts for v in self.adj[u]
                       if index[u] < index[v])
        return {
            "radius": self.radius,
            "n_thick": self.config.n_thick,
            "allow_small_n": self.config.allow_small_n,
            "group": self.config.spec.to_json(),
            "vertices": [vertex_to_obj(v) for v in verts],
            "dist_from_base": [self.dist_from_base[v] for v in verts],
            "edges": [[a, b] for a, b in edges],
            "edge_kinds": [GammaConfig.edge_kind(verts[a], verts[b])
                           for a, b in edges],
        }

    def to_dot(self) -> str:
        verts = self.vertices()
        index = {v: i for i, v in enumerate(verts)}
        shape = {"free": "circle", "med": "point", "int": "box"}
        lines = ["graph gamma_window {"]
        for v in verts:
            lines.append(f'  {index[v]} [shape={shape[v[0]]}, label="{v[0]}"];')
        for u in verts:
            for v in self.adj[u]:
                if index[u] < index[v]:
                    lines.append(f"  {index[u]} -- {index[v]};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def element_to_obj(g: Element) -> list:
    out = []
    for syl in g:
        if syl[0] == "p":
            h = syl[2]
            out.append(["p", syl[1], list(h) if isinstance(h, tuple) else h])
        else:
            out.append(["f", list(syl[1])])
    return out


def letter_to_obj(letter: Letter) -> list:
    if letter[0] == "xf":
        return ["xf", letter[1]]
    h = letter[2]
    return [letter[0], letter[1], list(h) if isinstance(h, tuple) else h]


def vertex_to_obj(v: GammaVertex) -> dict:
    if v[0] == "free":
        return {"kind": "free", "element": element_to_obj(v[1])}
    if v[0] == "med":
        g, x = v[1]
        return {"kind": "medial", "element": element_to_obj(g),
                "letter": letter_to_obj(x)}
    return {"kind": "internal", "factor": v[1], "coset": element_to_obj(v[2]),
            "vertex": list(v[3]) if isinstance(v[3], tuple) else v[3]}


def build_window(config: GammaConfig, radius: int,
                 max_vertices: int = WINDOW_GUARD_DEFAULT) -> GammaWindow:
    return GammaWindow(config, radius, max_vertices=max_vertices)
