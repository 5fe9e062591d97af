"""Maximal arcs of Denniston and Mathon type in PG(2,q), q = 2^h.

The building blocks are conics

    F_{alpha,beta,lam} = { (x,y,z) : alpha x^2 + x y + beta y^2 + lam z^2 = 0 }

with trace(alpha beta) = 1 and lam != 0.  Every such conic has nucleus
(0,0,1) and is disjoint from the line z = 0.  Two conics with distinct lam
compose to a third one by a lam-weighted average of their coefficients; a
set of conics closed under this composition, together with the common
nucleus, is a maximal arc of degree |set| + 1 (Mathon's construction).
Denniston arcs are the special case alpha constant, beta = 1, with the lam
values ranging over an additive subgroup minus 0.

Disjointness of conics is always decided here by comparing point sets; the
trace shortcut trace((alpha (+) alpha')(beta (+) beta')) = 1 is exposed
separately so callers and tests can compare the two.
"""

from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import projective as pg
from .finite_field import GF

#: common nucleus of every conic in the family
NUCLEUS: pg.Coords = (0, 0, 1)

#: the line z = 0, external to every conic of the family
INFINITY_LINE: pg.Coords = (0, 0, 1)


class ClosureError(ValueError):
    """A seed set cannot be completed to a closed set of conics."""


class DisjointnessError(ValueError):
    """Two conics that must be disjoint share a point."""


@dataclass(frozen=True)
class Conic:
    """F_{alpha,beta,lam}; requires trace(alpha*beta) = 1 and lam != 0."""

    gf: GF
    alpha: int
    beta: int
    lam: int

    def __post_init__(self) -> None:
        q = self.gf.q
        for name in ("alpha", "beta", "lam"):
            v = getattr(self, name)
            if not isinstance(v, int) or not 0 <= v < q:
                raise ValueError(f"{name}={v!r} is not an element of GF({q})")
        if self.lam == 0:
            raise ValueError("lam must be nonzero")
        if self.gf.trace(self.gf.mul(self.alpha, self.beta)) != 1:
            raise ValueError(
                f"degenerate conic: trace(alpha*beta) = 0 for "
                f"alpha={self.alpha}, beta={self.beta}"
            )


@functools.lru_cache(maxsize=None)
def quadric_points(gf: GF, a: int, b: int, l: int) -> frozenset[pg.Coords]:
    """Zero set of a x^2 + x y + b y^2 + l z^2, degenerate cases included."""
    mul = gf.mul
    pts = []
    for x in range(gf.q):
        ax2 = mul(a, mul(x, x))
        for y in range(gf.q):
            if ax2 ^ mul(x, y) ^ mul(b, mul(y, y)) == l:
                pts.append(pg.normalize(gf, (x, y, 1)))
    for y in range(gf.q):  # the line z = 0
        if a ^ y ^ mul(b, mul(y, y)) == 0:
            pts.append((1, y, 0))
    if b == 0:
        pts.append((0, 1, 0))
    return frozenset(pts)


def conic_points(c: Conic) -> frozenset[pg.Coords]:
    """The q + 1 points of a conic; none of them lies on z = 0."""
    return quadric_points(c.gf, c.alpha, c.beta, c.lam)


def _compose_params(c1: Conic, c2: Conic) -> tuple[int, int, int]:
    if c1.gf != c2.gf:
        raise ValueError("conics live in different fields")
    if c1.lam == c2.lam:
        raise ValueError("composition requires distinct lam values")
    gf = c1.gf
    dl = c1.lam ^ c2.lam
    inv_dl = gf.inv(dl)
    a = gf.mul(inv_dl, gf.mul(c1.alpha, c1.lam) ^ gf.mul(c2.alpha, c2.lam))
    b = gf.mul(inv_dl, gf.mul(c1.beta, c1.lam) ^ gf.mul(c2.beta, c2.lam))
    return a, b, dl


def compose(c1: Conic, c2: Conic) -> Conic:
    """Mathon composition: lam-weighted average of coefficients."""
    return Conic(c1.gf, *_compose_params(c1, c2))


def composition_trace(c1: Conic, c2: Conic) -> int:
    """trace(alpha'' * beta'') of the composition; 1 guarantees disjointness."""
    gf = c1.gf
    a, b, _ = _compose_params(c1, c2)
    return gf.trace(gf.mul(a, b))


def conics_disjoint(c1: Conic, c2: Conic) -> bool:
    """Point-set disjointness; this oracle, not the trace test, is authoritative."""
    if c1 == c2:
        raise ValueError("disjointness is a question about distinct conics")
    return conic_points(c1).isdisjoint(conic_points(c2))


@dataclass(frozen=True)
class MathonArc:
    """A closed set of pairwise disjoint conics plus their common nucleus."""

    gf: GF
    conics: tuple[Conic, ...]

    def __post_init__(self) -> None:
        if not self.conics:
            raise ValueError("an arc needs at least one conic")
        lams = [c.lam for c in self.conics]
        if any(c.gf != self.gf for c in self.conics):
            raise ValueError("conics live in different fields")
        if sorted(set(lams)) != lams:
            raise ValueError("conics must be sorted by lam with no repeats")

    @property
    def degree(self) -> int:
        return len(self.conics) + 1

    @property
    def lam_values(self) -> tuple[int, ...]:
        return tuple(c.lam for c in self.conics)

    @property
    def nucleus(self) -> pg.Coords:
        return NUCLEUS


def close_set(seed: Iterable[Conic]) -> MathonArc:
    """Close a seed set of conics under composition into a Mathon arc.

    Raises ClosureError when two conics collide on the same lam or a
    composition degenerates, and DisjointnessError when the closed set
    fails the point-set disjointness oracle.
    """
    by_lam: dict[int, Conic] = {}
    gf: Optional[GF] = None
    for c in seed:
        if gf is None:
            gf = c.gf
        elif c.gf != gf:
            raise ValueError("seed conics live in different fields")
        old = by_lam.get(c.lam)
        if old is not None and old != c:
            raise ClosureError(f"lam collision between {old} and {c}")
        by_lam[c.lam] = c
    if gf is None:
        raise ValueError("seed must contain at least one conic")

    changed = True
    while changed:
        changed = False
        cs = sorted(by_lam.values(), key=lambda c: c.lam)
        for i, c1 in enumerate(cs):
            for c2 in cs[i + 1 :]:
                a, b, l = _compose_params(c1, c2)
                try:
                    new = Conic(gf, a, b, l)
                except ValueError as exc:
                    raise ClosureError(
                        f"composition of {c1} and {c2} is not a conic: {exc}"
                    ) from exc
                old = by_lam.get(l)
                if old is None:
                    by_lam[l] = new
                    changed = True
                elif old != new:
                    raise ClosureError(
                        f"composition of {c1} and {c2} collides with {old} on lam={l}"
                    )
        if len(by_lam) >= gf.q:
            raise ClosureError("closure exceeded the maximum of q - 1 conics")

    closed = sorted(by_lam.values(), key=lambda c: c.lam)
    for i, c1 in enumerate(closed):
        for c2 in closed[i + 1 :]:
            if not conics_disjoint(c1, c2):
                raise DisjointnessError(f"{c1} and {c2} share a point")
    return MathonArc(gf, tuple(closed))


def denniston_arc(gf: GF, alpha: int, A: Iterable[int]) -> MathonArc:
    """The Denniston arc {F_{alpha,1,lam} : lam in A}; A u {0} must be a subgroup."""
    lams = sorted(set(A))
    if not lams:
        raise ValueError("A must be nonempty")
    if 0 in lams:
        raise ValueError("0 does not index a conic; A must omit it")
    for l in lams:
        if not 0 <= l < gf.q:
            raise ValueError(f"lam={l!r} is not an element of GF({gf.q})")
    if gf.trace(alpha) != 1:
        raise ValueError(f"trace(alpha) must be 1, got alpha={alpha}")
    if gf.additive_span(lams) != set(lams) | {0}:
        raise ValueError("A together with 0 must be closed under addition")
    return close_set(Conic(gf, alpha, 1, l) for l in lams)


def arc_points(m: MathonArc) -> frozenset[pg.Coords]:
    """All q(d-1) + d points of the arc: the conics plus the nucleus."""
    pts = {NUCLEUS}
    for c in m.conics:
        pts |= conic_points(c)
    return frozenset(pts)


@dataclass
class MaximalArcReport:
    """Line-intersection histogram of a candidate point set."""

    q: int
    degree: int
    size: int
    expected_size: int
    histogram: dict[int, int] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return self.size == self.expected_size and set(self.histogram) <= {0, self.degree}

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "degree": self.degree,
            "size": self.size,
            "expected_size": self.expected_size,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "verdict": self.verdict,
        }


def verify_maximal_arc(gf: GF, points: Iterable[pg.Coords], d: int) -> MaximalArcReport:
    """Check a point set is a degree-d maximal arc by scanning every line."""
    pts = set(points)
    per_line: Counter = Counter()
    for pt in pts:
        for ln in pg.lines_through2(gf, pt):
            per_line[ln] += 1
    hist = Counter(per_line.values())
    zero_lines = gf.q * gf.q + gf.q + 1 - len(per_line)
    if zero_lines:
        hist[0] = zero_lines
    return MaximalArcReport(
        q=gf.q,
        degree=d,
        size=len(pts),
        expected_size=gf.q * (d - 1) + d,
        histogram=dict(sorted(hist.items())),
    )


def denniston_closure(c1: Conic, c2: Conic) -> MathonArc:
    """The unique degree-4 arc of Denniston type containing two disjoint conics."""
    if not conics_disjoint(c1, c2):
        raise DisjointnessError(f"{c1} and {c2} share a point")
    arc = close_set([c1, c2])
    if arc.degree != 4:
        raise ClosureError(f"closure of two conics has degree {arc.degree}, expected 4")
    return arc


def synthetic_extension(m: MathonArc, c: Conic) -> MathonArc:
    """Extend a degree-d arc by one disjoint conic to the unique degree-2d arc."""
    if c.gf != m.gf:
        raise ValueError("conic and arc live in different fields")
    subgroup = set(m.lam_values) | {0}
    if c.lam in subgroup:
        raise ValueError(f"lam={c.lam} already lies in the arc's lam subgroup")
    for mc in m.conics:
        if not conics_disjoint(mc, c):
            raise DisjointnessError(f"{c} meets {mc}")
    ext = close_set(list(m.conics) + [c])
    if ext.degree != 2 * m.degree or not set(ext.conics) >= set(m.conics):
        raise ClosureError("extension did not double the degree")
    return ext


def is_denniston_type(m: MathonArc) -> bool:
    """Whether the arc's additive partial flock is linear (all planes share a line)."""
    from .flocks import arc_to_flock, classify_flock  # deferred: flocks imports this module

    return classify_flock(arc_to_flock(m)).linear


def arc_to_json(m: MathonArc) -> dict:
    return {
        "field": m.gf.to_json(),
        "conics": [
            {"alpha": c.alpha, "beta": c.beta, "lambda": c.lam} for c in m.conics
        ],
        "degree": m.degree,
    }


def arc_from_json(obj: dict) -> MathonArc:
    """Rebuild and re-validate an arc: the conic set must already be closed."""
    if not isinstance(obj, dict) or "field" not in obj or "conics" not in obj:
        raise ValueError("arc object must have 'field' and 'conics' keys")
    gf = GF.from_json(obj["field"])
    conics = []
    for entry in obj["conics"]:
        if not isinstance(entry, dict) or set(entry) != {"alpha", "beta", "lambda"}:
            raise ValueError("each conic needs exactly alpha, beta and lambda")
        conics.append(Conic(gf, entry["alpha"], entry["beta"], entry["lambda"]))
    arc = close_set(conics)
    if len(arc.conics) != len(conics):
        raise ValueError("conic set is not closed under composition")
    if "degree" in obj and obj["degree"] != arc.degree:
        raise ValueError(f"declared degree {obj['degree']} != actual {arc.degree}")
    return arc
