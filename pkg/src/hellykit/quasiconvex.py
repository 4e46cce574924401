"""Orbit subgraphs inside power graphs and the finite-instance checks of the
two subgraph lemmas: the thickened orbit is coarsely Helly with constant
3 + ceil(xi/k), and under pseudo-modularity it embeds isometrically.

Quasiconvexity over all (lam,c) is not decidable on a finite instance; the
enumerator sweeps the parameters it is given and reports the swept grid, and a
bound computed under a binding cap is flagged as a lower bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Optional, Sequence

from .graphs import (Graph, GraphError, QGParams, full_subgraph,
                     is_isometric_subgraph, power_graph)
from .helly import coarse_helly_constant, is_pseudo_modular

ENUM_CAP_DEFAULT = 200_000


class EnumerationCapExceeded(GraphError):
    pass


@dataclass(frozen=True)
class OrbitSpec:
    ambient: Graph
    orbit: tuple[int, ...]
    k: int

    def __post_init__(self):
        if not self.orbit:
            raise GraphError("orbit must be nonempty")
        if self.k < 1:
            raise GraphError("k must be >= 1")


@dataclass(frozen=True)
class QCResult:
    k: int                 # neighbourhood constant over the enumerated family
    enumerated: int        # quasigeodesics with endpoints in the orbit seen
    explored: int          # DFS prefixes visited
    capped: bool           # True: k is only a lower bound

    def is_exact(self) -> bool:
        return not self.capped


def quasiconvexity_k(ambient: Graph, orbit: Sequence[int], q: QGParams,
                     cap: int = ENUM_CAP_DEFAULT,
                     allow_cap: bool = False) -> QCResult:
    """Least k with every enumerated (lam,c)-quasigeodesic with endpoints in
    the orbit inside the orbit's k-neighbourhood.

    Depth-first search over walks, pruning any prefix that already violates
    the quasigeodesic inequality (prefixes of quasigeodesics are
    quasigeodesics, so this is lossless).  If the exploration cap binds, the
    result is a lower bound and says so; without allow_cap that raises.
    """
    wset = sorted(set(orbit))
    if not wset:
        raise GraphError("empty orbit")
    d = ambient.dist()
    to_orbit = [min(d[v][w] for w in wset) for v in range(ambient.n)]
    lam, c = q.lam, q.c

    best = 0
    enumerated = 0
    explored = 0
    capped = False

    def dfs(walk: list[int], high: int) -> bool:
        nonlocal best, enumerated, explored, capped
        explored += 1
        if explored > cap:
            capped = True
            return False
        tail = walk[-1]
        if tail in orbit_set:
            enumerated += 1
            best = max(best, high)
        n = len(walk)
        for w in ambient.adj[tail]:
            ok = True
            for i in range(n):
                if n - i > lam * d[walk[i]][w] + c:
                    ok = False
                    break
            if ok:
                walk.append(w)
                keep = dfs(walk, max(high, to_orbit[w]))
                walk.pop()
                if not keep:
                    return False
        return True

    orbit_set = set(wset)
    done = True
    for w1 in wset:
        if not dfs([w1], to_orbit[w1]):
            done = False
            break
    if not done and not allow_cap:
        raise EnumerationCapExceeded(
            f"quasigeodesic enumeration exceeded {cap} prefixes; "
            "pass allow_cap for lower-bound semantics")
    return QCResult(best, enumerated, explored, capped)


def build_delta(spec: OrbitSpec) -> tuple[Graph, list[int], Graph]:
    """The full subgraph of the k-power spanned by the orbit's closed
    1-neighbourhood, its embedding, and the k-power itself."""
    gk = power_graph(spec.ambient, spec.k)
    d = spec.ambient.dist()
    span = sorted(v for v in range(spec.ambient.n)
                  if min(d[v][w] for w in spec.orbit) <= spec.k)
    delta, index = full_subgraph(gk, span)
    embedding = [None] * delta.n
    for old, new in index.items():
        embedding[new] = old
    return delta, embedding, gk


@dataclass
class Section5Report:
    instance: str
    k: int
    xi_ambient: Optional[int]
    coarse_hypothesis: dict
    isometric_hypothesis: dict
    coarse_conclusion: dict
    isometric_conclusion: dict
    swept_grid: list[str]

    def violations(self) -> int:
        bad = 0
        for conc in (self.coarse_conclusion, self.isometric_conclusion):
            if conc.get("checked") and not conc.get("holds"):
                bad += 1
        return bad

    def to_json(self) -> dict:
        return {
            "instance": self.instance,
            "k": self.k,
            "xi_ambient": self.xi_ambient,
            "coarse_hypothesis": self.coarse_hypothesis,
            "isometric_hypothesis": self.isometric_hypothesis,
            "coarse_conclusion": self.coarse_conclusion,
            "isometric_conclusion": self.isometric_conclusion,
            "swept_grid": self.swept_grid,
            "violations": self.violations(),
        }


def verify_section5(spec: OrbitSpec, xi_ambient: Optional[int] = None,
                    cap: int = ENUM_CAP_DEFAULT, max_vertices: int = 64,
                    instance: str = "") -> Section5Report:
    """Check both subgraph lemmas on one instance.

    Hypotheses are verified computationally; a conclusion is only asserted
    when its hypotheses verified, otherwise it is reported as skipped.  A
    checked conclusion that fails indicates an implementation bug, so callers
    treat it as a hard error.
    """
    ambient, k = spec.ambient, spec.k
    if xi_ambient is None:
        xi_ambient = coarse_helly_constant(ambient, max_vertices=max_vertices)
    else:
        actual = coarse_helly_constant(ambient, max_vertices=max_vertices)
        if actual > xi_ambient:
            raise GraphError(
                f"ambient coarse constant {actual} exceeds the claimed {xi_ambient}")
    xi = xi_ambient

    grid = [f"(1,{2 * xi})", "(5,0)"]
    coarse_hyp = {"checked": True, "holds": False}
    qc1 = quasiconvexity_k(ambient, spec.orbit, QGParams(1, 2 * xi),
                           cap=cap, allow_cap=True)
    coarse_hyp["qc_constant"] = qc1.k
    coarse_hyp["capped"] = qc1.capped
    coarse_hyp["holds"] = (not qc1.capped) and qc1.k <= k

    iso_hyp = {"checked": True, "holds": False}
    pm, _ = is_pseudo_modular(ambient)
    iso_hyp["pseudo_modular"] = pm
    qc5 = quasiconvexity_k(ambient, spec.orbit, QGParams(5, 0),
                           cap=cap, allow_cap=True)
    iso_hyp["qc_constant"] = qc5.k
    iso_hyp["capped"] = qc5.capped
    iso_hyp["holds"] = pm and (not qc5.capped) and qc5.k <= k

    delta, embedding, gk = build_delta(spec)

    if coarse_hyp["holds"]:
        xi_delta = coarse_helly_constant(delta, max_vertices=max_vertices)
        bound = 3 + ceil(Fraction(xi, k))
        coarse_conc = {"checked": True, "xi_delta": xi_delta, "bound": bound,
                       "holds": xi_delta <= bound}
    else:
        coarse_conc = {"checked": False, "reason": "hypothesis failed, skipped"}

    if iso_hyp["holds"]:
        ok, witness = is_isometric_subgraph(delta, embedding, gk)
        iso_conc = {"checked": True, "holds": ok}
        if witness is not None:
            iso_conc["witness"] = list(witness)
    else:
        iso_conc = {"checked": False, "reason": "hypothesis failed, skipped"}

    return Section5Report(instance, k, xi, coarse_hyp, iso_hyp, coarse_conc,
                          iso_conc, grid)
