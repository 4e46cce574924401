"""Words over the relative alphabet (finite generators plus all parabolic
letters): component decomposition, backtracking and phase analysis, geodesic
checks, and the empirical measurement harness for the relative-thinness
constants.

Those constants exist by theorems but are not constructive, so everything a
harness reports here is a seeded empirical maximum with sample provenance,
never a certificate; `estimate` stays True in every report.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .groups import Element, GroupSpec, Letter, random_element


@dataclass(frozen=True)
class RelWord:
    """A word over X union H starting at a given vertex.  Words are allowed to
    backtrack; detecting that is the point."""

    base: Element
    letters: tuple[Letter, ...]

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class Component:
    """Maximal run of parabolic letters from one factor, with its endpoint
    vertices in the group."""

    j: int
    start_index: int
    end_index: int  # inclusive letter positions
    start_vertex: Element
    end_vertex: Element


@dataclass(frozen=True)
class WordAnalysis:
    backtracks: bool
    vertex_backtracks: bool
    isolated_components: tuple[int, ...]
    phase_vertices: tuple[int, ...]
    components: tuple[Component, ...]


@dataclass
class ConstantReport:
    """Empirical maxima; all values are estimates, never certificates."""

    what: str
    params: dict
    samples: int
    rejected: int
    seed: int
    epsilon_hat: Optional[int] = None
    nu_hat: Optional[int] = None
    mu_hat: Optional[int] = None
    zeta_hat: Optional[int] = None
    delta_hat: Optional[int] = None
    delta_slim_hat: Optional[int] = None
    estimate: bool = True
    notes: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"what": self.what, "params": self.params, "samples": self.samples,
               "rejected": self.rejected, "seed": self.seed, "estimate": self.estimate}
        for name in ("epsilon_hat", "nu_hat", "mu_hat", "zeta_hat",
                     "delta_hat", "delta_slim_hat"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        if self.notes:
            out["notes"] = self.notes
        return out


def vertices(spec: GroupSpec, w: RelWord) -> list[Element]:
    out = [w.base]
    for letter in w.letters:
        out.append(spec.multiply(spec.letter_image(letter), out[-1]))
    return out


def value(spec: GroupSpec, w: RelWord) -> Element:
    """The element the word represents: end times start-inverse."""
    acc = spec.identity
    for letter in w.letters:
        acc = spec.multiply(spec.letter_image(letter), acc)
    return acc


def end_vertex(spec: GroupSpec, w: RelWord) -> Element:
    return spec.multiply(value(spec, w), w.base)


def reverse_word(spec: GroupSpec, w: RelWord) -> RelWord:
    letters = tuple(spec.letter_invert(l) for l in reversed(w.letters))
    return RelWord(end_vertex(spec, w), letters)


def decompose_components(spec: GroupSpec, w: RelWord) -> list[Component]:
    """Ordered maximal parabolic runs; letters outside them are X-letters."""
    verts = vertices(spec, w)
    comps = []
    i = 0
    n = len(w.letters)
    while i < n:
        letter = w.letters[i]
        if letter[0] != "h":
            i += 1
            continue
        j = letter[1]
        k = i
        while k + 1 < n and w.letters[k + 1][0] == "h" and w.letters[k + 1][1] == j:
            k += 1
        comps.append(Component(j, i, k, verts[i], verts[k + 1]))
        i = k + 1
    return comps


def _in_parabolic(q: Element, j: Optional[int] = None) -> bool:
    if q == ():
        return True
    if len(q) == 1 and q[0][0] == "p":
        return j is None or q[0][1] == j
    return False


def connected(spec: GroupSpec, c1: Component, c2: Component) -> bool:
    """Same factor and start vertices in the same right coset."""
    if c1.j != c2.j:
        return False
    q = spec.multiply(c1.start_vertex, spec.invert(c2.start_vertex))
    return _in_parabolic(q, c1.j)


def analyze_word(spec: GroupSpec, w: RelWord) -> WordAnalysis:
    comps = decompose_components(spec, w)
    backtracks = False
    isolated = []
    for a in range(len(comps)):
        alone = True
        for b in range(len(comps)):
            if a != b and connected(spec, comps[a], comps[b]):
                alone = False
                backtracks = True
        if alone:
            isolated.append(a)

    n = len(w.letters)
    vertex_backtracks = False
    prefix = [spec.identity]
    for letter in w.letters:
        prefix.append(spec.multiply(spec.letter_image(letter), prefix[-1]))
    for i in range(n + 1):
        if vertex_backtracks:
            break
        inv_i = spec.invert(prefix[i])
        for k in range(i + 2, n + 1):
            if _in_parabolic(spec.multiply(prefix[k], inv_i)):
                vertex_backtracks = True
                break

    interior = set()
    for c in comps:
        interior.update(range(c.start_index + 1, c.end_index + 1))
    phase = tuple(i for i in range(n + 1) if i not in interior)
    return WordAnalysis(backtracks, vertex_backtracks, tuple(isolated), phase,
                        tuple(comps))


def is_rel_geodesic(spec: GroupSpec, w: RelWord) -> bool:
    return len(w.letters) == spec.rel_length(value(spec, w))


def is_quasigeodesic(spec: GroupSpec, w: RelWord, lam, c) -> bool:
    """Exact (lam,c)-quasigeodesic check over every subword, via rel_length."""
    lam, c = Fraction(lam), Fraction(c)
    prefix = [spec.identity]
    for letter in w.letters:
        prefix.append(spec.multiply(spec.letter_image(letter), prefix[-1]))
    n = len(w.letters)
    for i in range(n + 1):
        inv_i = spec.invert(prefix[i])
        for k in range(i + 1, n + 1):
            d = spec.rel_length(spec.multiply(prefix[k], inv_i))
            if k - i > lam * d + c:
                return False
    return True


def k_similar(spec: GroupSpec, p: RelWord, q: RelWord, k: int) -> bool:
    if spec.d_x(p.base, q.base) > k:
        return False
    return spec.d_x(end_vertex(spec, p), end_vertex(spec, q)) <= k


def geodesic_word(spec: GroupSpec, start: Element, end: Element) -> RelWord:
    q = spec.multiply(end, spec.invert(start))
    return RelWord(start, tuple(spec.geodesic_letters(q)))


# ---------------------------------------------------------------------------
# samplers


def _random_x_offset(spec: GroupSpec, rng: random.Random, k: int) -> Element:
    g = spec.identity
    letters = spec.x_letters()
    for _ in range(rng.randint(0, k)):
        g = spec.multiply(spec.letter_image(rng.choice(letters)), g)
    return g


def perturbed_word(spec: GroupSpec, rng: random.Random, start: Element,
                   end: Element, lam, c, parabolic_cap: int = 2,
                   tries: int = 8) -> tuple[RelWord, int]:
    """A non-backtracking (lam,c)-quasigeodesic from start to end.

    Detour through a randomly offset waypoint, filtered by the exact
    quasigeodesic and backtracking checks; falls back to the geodesic word
    (always valid) when every detour is rejected.  Returns (word, rejections).
    """
    rejections = 0
    direct = geodesic_word(spec, start, end)
    if Fraction(lam) == 1 and Fraction(c) == 0:
        return direct, 0
    verts = vertices(spec, direct)
    for _ in range(tries):
        mid = verts[rng.randrange(len(verts))]
        offset = random_element(spec, rng, rng.randint(1, 2), parabolic_cap)
        waypoint = spec.multiply(offset, mid)
        cand = RelWord(start, geodesic_word(spec, start, waypoint).letters
                       + geodesic_word(spec, waypoint, end).letters)
        if not is_quasigeodesic(spec, cand, lam, c):
            rejections += 1
            continue
        if analyze_word(spec, cand).backtracks:
            rejections += 1
            continue
        return cand, rejections
    return direct, rejections


# ---------------------------------------------------------------------------
# defect measurements


def _phase_elements(spec: GroupSpec, w: RelWord) -> list[Element]:
    analysis = analyze_word(spec, w)
    verts = vertices(spec, w)
    return [verts[i] for i in analysis.phase_vertices]


def _max_min_dx(spec: GroupSpec, sources: Sequence[Element],
                targets: Sequence[Element]) -> int:
    worst = 0
    for u in sources:
        inv_u = spec.invert(u)
        best = min(spec.x_length(spec.multiply(v, inv_u)) for v in targets)
        worst = max(worst, best)
    return worst


def bcp_defects(spec: GroupSpec, wp: RelWord, wq: RelWord) -> dict[str, int]:
    """Defects of one similar pair against the coset-penetration clauses:
    phase-vertex closeness, size of unmatched components, and endpoint
    closeness of connected components.  Measured in both directions."""
    phase_p = _phase_elements(spec, wp)
    phase_q = _phase_elements(spec, wq)
    phase_defect = max(_max_min_dx(spec, phase_q, phase_p),
                       _max_min_dx(spec, phase_p, phase_q))

    comps_p = decompose_components(spec, wp)
    comps_q = decompose_components(spec, wq)
    unmatched = 0
    conn = 0
    for side_a, side_b in ((comps_q, comps_p), (comps_p, comps_q)):
        for ca in side_a:
            partners = [cb for cb in side_b if connected(spec, ca, cb)]
            if not partners:
                unmatched = max(unmatched, spec.d_x(ca.start_vertex, ca.end_vertex))
            for cb in partners:
                conn = max(conn, spec.d_x(ca.start_vertex, cb.start_vertex),
                           spec.d_x(ca.end_vertex, cb.end_vertex))
    return {"phase": phase_defect, "unmatched": unmatched, "connected": conn}


def triangle_mu_defects(spec: GroupSpec, p: RelWord, q: RelWord, r: RelWord) -> int:
    """Worst defect of a non-backtracking quasigeodesic triangle against the
    four triangle clauses, closed under rotation and orientation reversal."""
    triangles = []
    rev = (reverse_word(spec, q), reverse_word(spec, p), reverse_word(spec, r))
    for a, b, c in ((p, q, r), rev):
        triangles.extend(((a, b, c), (b, c, a), (c, a, b)))
    worst = 0
    for wa, wb, wc in triangles:
        phase_ab = _phase_elements(spec, wa) + _phase_elements(spec, wb)
        worst = max(worst, _max_min_dx(spec, _phase_elements(spec, wc), phase_ab))
        comps_a = decompose_components(spec, wa)
        comps_b = decompose_components(spec, wb)
        for cc in decompose_components(spec, wc):
            in_a = [ca for ca in comps_a if connected(spec, cc, ca)]
            in_b = [cb for cb in comps_b if connected(spec, cc, cb)]
            if not in_a and not in_b:
                worst = max(worst, spec.d_x(cc.start_vertex, cc.end_vertex))
            elif in_a and not in_b:
                ca = in_a[0]
                worst = max(worst, spec.d_x(cc.end_vertex, ca.start_vertex),
                            spec.d_x(ca.end_vertex, cc.start_vertex))
            elif in_a and in_b:
                ca, cb = in_a[0], in_b[0]
                worst = max(worst, spec.d_x(cc.end_vertex, ca.start_vertex),
                            spec.d_x(ca.end_vertex, cb.start_vertex),
                            spec.d_x(cb.end_vertex, cc.start_vertex))
    return worst


def triangle_nu_defect(spec: GroupSpec, p: RelWord, q: RelWord, r: RelWord) -> int:
    vp, vq, vr = (vertices(spec, w) for w in (p, q, r))
    return max(_max_min_dx(spec, vp, vq + vr),
               _max_min_dx(spec, vq, vr + vp),
               _max_min_dx(spec, vr, vp + vq))


def _rel_thin_slim(spec: GroupSpec, p: RelWord, q: RelWord, r: RelWord
                   ) -> tuple[int, int]:
    vp, vq, vr = (vertices(spec, w) for w in (p, q, r))
    lp, lq, lr = len(p), len(q), len(r)
    thin = 0
    for side1, l1, side2, l2, lopp in ((vp, lp, vr, lr, lq),
                                       (vq, lq, vp, lp, lr),
                                       (vr, lr, vq, lq, lp)):
        for t in range((l1 + l2 - lopp) // 2 + 1):
            thin = max(thin, spec.d_rel(side1[t], side2[l2 - t]))
    slim = 0
    for side, others in ((vp, vq + vr), (vq, vr + vp), (vr, vp + vq)):
        for u in side:
            inv_u = spec.invert(u)
            slim = max(slim, min(spec.rel_length(spec.multiply(v, inv_u))
                                 for v in others))
    return thin, slim


# ---------------------------------------------------------------------------
# measurement harnesses


def _sample_corner(spec: GroupSpec, rng: random.Random, radius: int,
                   parabolic_cap: int) -> Element:
    return random_element(spec, rng, rng.randint(0, radius), parabolic_cap)


def measure_bcp(spec: GroupSpec, qg_lam, qg_c, k: int, samples: int, seed: int,
                radius: int = 6, parabolic_cap: int = 2) -> ConstantReport:
    """Empirical penetration constant over sampled k-similar non-backtracking
    (lam,c)-quasigeodesic pairs."""
    rng = random.Random(seed)
    eps = 0
    rejected = 0
    accepted = 0
    while accepted < samples:
        g1 = _sample_corner(spec, rng, radius, parabolic_cap)
        g2 = _sample_corner(spec, rng, radius, parabolic_cap)
        wp, rej_p = perturbed_word(spec, rng, g1, g2, qg_lam, qg_c, parabolic_cap)
        h1 = spec.multiply(_random_x_offset(spec, rng, k), g1)
        h2 = spec.multiply(_random_x_offset(spec, rng, k), g2)
        wq, rej_q = perturbed_word(spec, rng, h1, h2, qg_lam, qg_c, parabolic_cap)
        rejected += rej_p + rej_q
        defects = bcp_defects(spec, wp, wq)
        eps = max(eps, *defects.values())
        accepted += 1
    return ConstantReport(
        what="bcp", params={"lambda": str(qg_lam), "c": str(qg_c), "k": k,
                            "radius": radius, "parabolic_cap": parabolic_cap,
                            "group": spec.to_json()},
        samples=accepted, rejected=rejected, seed=seed, epsilon_hat=eps)


def _sample_triangle(spec: GroupSpec, rng: random.Random, lam, c, radius: int,
                     parabolic_cap: int) -> tuple[RelWord, RelWord, RelWord, int]:
    a = _sample_corner(spec, rng, radius, parabolic_cap)
    b = _sample_corner(spec, rng, radius, parabolic_cap)
    cc = _sample_corner(spec, rng, radius, parabolic_cap)
    wp, r1 = perturbed_word(spec, rng, a, b, lam, c, parabolic_cap)
    wq, r2 = perturbed_word(spec, rng, b, cc, lam, c, parabolic_cap)
    wr, r3 = perturbed_word(spec, rng, cc, a, lam, c, parabolic_cap)
    return wp, wq, wr, r1 + r2 + r3


def measure_triangles(spec: GroupSpec, qg_lam, qg_c, samples: int, seed: int,
                      radius: int = 6, parabolic_cap: int = 2) -> ConstantReport:
    """Empirical nu (geodesic triangles) and mu ((lam,c)-quasigeodesic
    triangles) over sampled triangles."""
    rng = random.Random(seed)
    nu = mu = 0
    rejected = 0
    for _ in range(samples):
        gp, gq, gr, _ = _sample_triangle(spec, rng, 1, 0, radius, parabolic_cap)
        nu = max(nu, triangle_nu_defect(spec, gp, gq, gr))
        wp, wq, wr, rej = _sample_triangle(spec, rng, qg_lam, qg_c, radius,
                                           parabolic_cap)
        rejected += rej
        mu = max(mu, triangle_mu_defects(spec, wp, wq, wr))
    return ConstantReport(
        what="triangles", params={"lambda": str(qg_lam), "c": str(qg_c),
                                  "radius": radius, "parabolic_cap": parabolic_cap,
                                  "group": spec.to_json()},
        samples=samples, rejected=rejected, seed=seed, nu_hat=nu, mu_hat=mu)


def measure_delta(spec: GroupSpec, samples: int, seed: int, radius: int = 6,
                  parabolic_cap: int = 2) -> ConstantReport:
    """Empirical thin and slim constants of sampled geodesic triangles in the
    relative metric."""
    rng = random.Random(seed)
    thin = slim = 0
    for _ in range(samples):
        wp, wq, wr, _ = _sample_triangle(spec, rng, 1, 0, radius, parabolic_cap)
        t, s = _rel_thin_slim(spec, wp, wq, wr)
        thin = max(thin, t)
        slim = max(slim, s)
    return ConstantReport(
        what="delta", params={"radius": radius, "parabolic_cap": parabolic_cap,
                              "group": spec.to_json()},
        samples=samples, rejected=0, seed=seed, delta_hat=thin,
        delta_slim_hat=slim)


def measure_zeta(spec: GroupSpec, qg_lam, qg_c, samples: int, seed: int,
                 radius: int = 6, parabolic_cap: int = 2) -> ConstantReport:
    """Empirical Hausdorff closeness (relative metric) of sampled
    quasigeodesics to geodesics with the same endpoints."""
    rng = random.Random(seed)
    zeta = 0
    rejected = 0
    for _ in range(samples):
        g1 = _sample_corner(spec, rng, radius, parabolic_cap)
        g2 = _sample_corner(spec, rng, radius, parabolic_cap)
        wq, rej = perturbed_word(spec, rng, g1, g2, qg_lam, qg_c, parabolic_cap)
        rejected += rej
        wg = geodesic_word(spec, g1, g2)
        vq, vg = vertices(spec, wq), vertices(spec, wg)
        worst = 0
        for u in vq:
            inv_u = spec.invert(u)
            worst = max(worst, min(spec.rel_length(spec.multiply(v, inv_u))
                                   for v in vg))
        for u in vg:
            inv_u = spec.invert(u)
            worst = max(worst, min(spec.rel_length(spec.multiply(v, inv_u))
                                   for v in vq))
        zeta = max(zeta, worst)
    return ConstantReport(
        what="zeta", params={"lambda": str(qg_lam), "c": str(qg_c),
                             "radius": radius, "parabolic_cap": parabolic_cap,
                             "group": spec.to_json()},
        samples=samples, rejected=rejected, seed=seed, zeta_hat=zeta)
