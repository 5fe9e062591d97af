"""Partial flocks of the quadratic cone in PG(3,q) and their links to arcs.

The cone K is the quadric X1 X3 = X2^2 with vertex (1,0,0,0).  A partial
flock is a set of planes, none through the vertex, whose cone sections are
pairwise disjoint conics.  Planes are normalized 4-tuples; a plane avoiding
the vertex normalizes to [1, f, t, g], and two such planes have disjoint
sections exactly when their X2-coordinates differ and
trace((f+f')(g+g')/(t+t')^2) = 1.  That trace test is exact for cone
sections; a brute-force section-intersection oracle runs alongside it in
every verification report.

A Mathon arc with conics F_{alpha,beta,lam} corresponds to the additive
partial flock with planes [1, alpha*lam, lam, beta*lam] plus the plane
X0 = 0.  Independently, the arc's plane PG(2,q) embeds into X0 = 0 via
(x,y,z) -> (0,x,z,y), and projecting the cone from a point p = (1,0,y,0)
of the nuclear line N = {(t,0,1,0)} u {vertex} is a bijection onto that
embedded plane.  Each arc conic is then the shadow of one plane section;
for the default p = (1,0,1,0) the section plane of F_{alpha,beta,lam} is
[sqrt(lam), sqrt(alpha), sqrt(lam)+1, sqrt(beta)], and those planes plus
the singular plane X0 + X2 = 0 form the raw projection flock.  A
coefficient chain (delta, then phi built from inversion on N, then the
squaring map kappa) rewrites the raw planes into the additive ones, plane
for plane.

Planes avoiding p carry a standard form a X0 + b X1 + (a+1) X2 + c X3 = 0.
Composing two standard planes by the weighted average mirroring Mathon's
conic composition yields a third plane of their pencil; the coefficientwise
sum of the two standard equations is the pencil's unique plane through p,
and its trace in X0 = 0 is the common external line -- the Denniston
line -- of the two projected conics' degree-4 closure.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Optional

from . import projective as pg
from .finite_field import GF
from .mathon_arcs import Conic, DisjointnessError, MathonArc, close_set

#: vertex of the cone X1 X3 = X2^2
VERTEX: pg.Coords = (1, 0, 0, 0)

#: nucleus of the base conic cut by the plane X0 = 0
BASE_NUCLEUS: pg.Coords = (0, 0, 1, 0)

#: default projection point on the nuclear line
DEFAULT_PROJECTION_POINT: pg.Coords = (1, 0, 1, 0)

#: the plane X0 = 0 holding the embedded copy of PG(2,q)
EMBEDDING_PLANE: pg.Coords = (1, 0, 0, 0)

#: the plane X0 + X2 = 0, singular for the default projection point
SINGULAR_PLANE: pg.Coords = (1, 0, 1, 0)


# -- the cone and the nuclear line ---------------------------------------------


def is_on_cone(gf: GF, point: pg.Coords) -> bool:
    """Whether a PG(3,q) point satisfies X1 X3 = X2^2."""
    return gf.mul(point[1], point[3]) == gf.square(point[2])


@functools.lru_cache(maxsize=None)
def cone_points(gf: GF) -> frozenset[pg.Coords]:
    """All q^2 + q + 1 points of the cone, vertex included."""
    return frozenset(p for p in pg.enumerate_points3(gf) if is_on_cone(gf, p))


@functools.lru_cache(maxsize=None)
def nuclear_line_points(gf: GF) -> tuple[pg.Coords, ...]:
    """The q + 1 points of the nuclear line N = {(t,0,1,0)} plus the vertex."""
    pts = {VERTEX, BASE_NUCLEUS}
    for t in gf.nonzero_elements():
        pts.add(pg.normalize(gf, (t, 0, 1, 0)))
    return tuple(sorted(pts))


def nuclear_intersection(gf: GF, plane: pg.Coords) -> pg.Coords:
    """The unique point where a plane not containing N meets the nuclear line."""
    u0, u2 = plane[0], plane[2]
    if u0 == 0 and u2 == 0:
        raise ValueError("the plane contains the whole nuclear line")
    if u0 == 0:
        return VERTEX
    # (t,0,1,0) with t*u0 + u2 = 0
    return pg.normalize(gf, (gf.div(u2, u0), 0, 1, 0))


def plane_section(gf: GF, plane: pg.Coords) -> frozenset[pg.Coords]:
    """Brute-force oracle: all cone points on the given plane."""
    return frozenset(e for e in cone_points(gf) if pg.incident(gf, e, plane))


def section_trace(gf: GF, u: pg.Coords, w: pg.Coords) -> Optional[int]:
    """trace((f+f')(g+g')/(t+t')^2) for planes [1,f,t,g]; None when t = t'.

    Both planes must avoid the vertex (nonzero X0 coefficient).  The value 1
    is equivalent to the two cone sections being disjoint; with t = t' two
    distinct sections always share a point, so no trace value applies.
    """
    un = pg.normalize(gf, u)
    wn = pg.normalize(gf, w)
    if un[0] == 0 or wn[0] == 0:
        raise ValueError("a plane through the cone vertex has no conic section")
    dt = un[2] ^ wn[2]
    if dt == 0:
        return None
    df = un[1] ^ wn[1]
    dg = un[3] ^ wn[3]
    return gf.trace(gf.div(gf.mul(df, dg), gf.square(dt)))


def sections_disjoint(gf: GF, u: pg.Coords, w: pg.Coords) -> bool:
    """Whether two vertex-avoiding planes cut disjoint cone sections."""
    return section_trace(gf, u, w) == 1


# -- partial flocks ---------------------------------------------------------------


@dataclass(frozen=True)
class PartialFlock:
    """A set of planes avoiding the cone vertex, stored in canonical order."""

    gf: GF
    planes: tuple[pg.Coords, ...]

    def __post_init__(self) -> None:
        if not self.planes:
            raise ValueError("a partial flock needs at least one plane")
        norm = [pg.normalize(self.gf, p) for p in self.planes]
        if list(self.planes) != sorted(set(norm)):
            raise ValueError("planes must be normalized, distinct and sorted")
        for p in self.planes:
            if p[0] == 0:
                raise ValueError(f"plane {p} passes through the cone vertex {VERTEX}")

    @property
    def size(self) -> int:
        return len(self.planes)


def make_flock(gf: GF, planes: Iterable[pg.Coords]) -> PartialFlock:
    """Normalize, deduplicate and sort raw plane tuples into a PartialFlock."""
    return PartialFlock(gf, tuple(sorted({pg.normalize(gf, p) for p in planes})))


def base_representation(F: PartialFlock) -> tuple[tuple[int, int, int], ...]:
    """Per-plane triples (t, f, g) from the normalized form [1, f, t, g].

    Sorted by t; together they present the flock as a base set B = {t} with
    coefficient maps f, g.
    """
    return tuple(sorted((p[2], p[1], p[3]) for p in F.planes))


@dataclass
class FlockReport:
    """Pairwise trace values and section intersections of a plane set."""

    q: int
    size: int
    section_sizes: tuple[int, ...]
    pairs: tuple[tuple[tuple[int, int], Optional[int], int], ...]

    @property
    def verdict(self) -> bool:
        return all(s == self.q + 1 for s in self.section_sizes) and all(
            tr == 1 and shared == 0 for _, tr, shared in self.pairs
        )

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "size": self.size,
            "section_sizes": list(self.section_sizes),
            "pairs": [
                {"planes": list(ij), "trace": tr, "shared_points": shared}
                for ij, tr, shared in self.pairs
            ],
            "verdict": self.verdict,
        }


def verify_partial_flock(F: PartialFlock) -> FlockReport:
    """Check every plane pair by the trace test and the section oracle."""
    gf = F.gf
    sections = [plane_section(gf, p) for p in F.planes]
    pairs = []
    for i, j in itertools.combinations(range(F.size), 2):
        tr = section_trace(gf, F.planes[i], F.planes[j])
        shared = len(sections[i] & sections[j])
        pairs.append(((i, j), tr, shared))
    return FlockReport(
        q=gf.q,
        size=F.size,
        section_sizes=tuple(len(s) for s in sections),
        pairs=tuple(pairs),
    )


@dataclass(frozen=True)
class FlockClassification:
    """Additivity of the base representation and linearity of the plane set."""

    additive: bool
    linear: bool
    common_line: Optional[tuple[pg.Coords, pg.Coords]]

    def to_json(self) -> dict:
        return {"additive": self.additive, "linear": self.linear}


def classify_flock(F: PartialFlock) -> FlockClassification:
    """Decide whether a flock is additive and whether it is linear.

    Additive: the (t, f, g) triples of the normalized planes form a group
    under coordinatewise XOR with pairwise distinct t (so B = {t} is closed
    under addition and f, g are additive maps on it).  Linear: all planes
    share a common line, found by intersecting the first two planes and
    testing the two spanning points against the rest.
    """
    gf = F.gf
    triples = base_representation(F)
    tset = {t for t, _, _ in triples}
    triple_set = set(triples)
    additive = (
        len(tset) == len(triples)
        and (0, 0, 0) in triple_set
        and all(
            (a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2]) in triple_set
            for a, b in itertools.combinations(triple_set, 2)
        )
    )
    if F.size == 1:
        return FlockClassification(additive=additive, linear=True, common_line=None)
    line = tuple(pg.meet_planes(gf, F.planes[0], F.planes[1]))
    linear = all(
        pg.incident(gf, pt, plane) for pt in line for plane in F.planes[2:]
    )
    return FlockClassification(
        additive=additive, linear=linear, common_line=line if linear else None
    )


# -- the algebraic arc <-> flock correspondence ------------------------------------


def arc_to_flock(m: MathonArc) -> PartialFlock:
    """The additive partial flock of a Mathon arc.

    Each conic F_{alpha,beta,lam} contributes the plane
    [1, alpha*lam, lam, beta*lam]; the plane X0 = 0 completes the flock, so
    the base set is the arc's lam subgroup including 0.
    """
    gf = m.gf
    planes = {EMBEDDING_PLANE}
    for c in m.conics:
        planes.add((1, gf.mul(c.alpha, c.lam), c.lam, gf.mul(c.beta, c.lam)))
    return PartialFlock(gf, tuple(sorted(planes)))


def additive_plane_conic(gf: GF, plane: pg.Coords) -> Conic:
    """The conic whose additive-flock plane is the given one."""
    u = pg.normalize(gf, plane)
    if u[0] == 0:
        raise ValueError(f"plane {plane} passes through the cone vertex {VERTEX}")
    t = u[2]
    if t == 0:
        raise ValueError("a plane with zero X2-coefficient encodes no conic")
    return Conic(gf, gf.div(u[1], t), gf.div(u[3], t), t)


def flock_to_arc(F: PartialFlock) -> MathonArc:
    """Rebuild the Mathon arc of an additive partial flock.

    Inverse of arc_to_flock.  The plane X0 = 0 carries no conic; every other
    plane [1, f, t, g] yields F_{f/t, g/t, t}.  The conic set is re-closed
    and re-checked for disjointness on the way out.
    """
    cls = classify_flock(F)
    if not cls.additive:
        raise ValueError("only an additive partial flock corresponds to an arc")
    conics = [
        additive_plane_conic(F.gf, p) for p in F.planes if p != EMBEDDING_PLANE
    ]
    arc = close_set(conics)
    if len(arc.conics) != len(conics):
        raise ValueError("flock planes do not close under conic composition")
    return arc


# -- projection from the nuclear line ----------------------------------------------


def _projection_parameter(gf: GF, p: pg.Coords) -> int:
    """The y with p = (1,0,y,0); rejects points off N and the points x, n."""
    pn = pg.normalize(gf, p)
    if pn == VERTEX or pn == BASE_NUCLEUS:
        raise ValueError(f"cannot project from the special point {pn}")
    if pn[0] != 1 or pn[1] != 0 or pn[3] != 0:
        raise ValueError(f"projection point {pn} is not on the nuclear line")
    return pn[2]


def embed_point(point: pg.Coords) -> pg.Coords:
    """PG(2,q) -> plane X0 = 0: (x, y, z) -> (0, x, z, y)."""
    x, y, z = point
    return (0, x, z, y)


def unembed_point(point: pg.Coords) -> pg.Coords:
    """Plane X0 = 0 -> PG(2,q): (0, a, b, c) -> (a, c, b)."""
    if point[0] != 0:
        raise ValueError(f"point {point} is not on the plane X0 = 0")
    return (point[1], point[3], point[2])


def project_point(gf: GF, p: pg.Coords, e: pg.Coords) -> pg.Coords:
    """Project a PG(3,q) point from p = (1,0,y,0) into PG(2,q) coordinates.

    The image is the intersection of the line through p and e with the
    plane X0 = 0, read back through the embedding.  Restricted to the cone
    this map is a bijection onto the full plane, sending the vertex to the
    common nucleus (0,0,1).
    """
    y = _projection_parameter(gf, p)
    img = (e[1], e[3], e[2] ^ gf.mul(y, e[0]))
    return pg.normalize(gf, img)


def unproject_point(gf: GF, p: pg.Coords, point: pg.Coords) -> pg.Coords:
    """The unique cone point that projects from p onto a given PG(2,q) point."""
    y = _projection_parameter(gf, p)
    x, yy, z = pg.normalize(gf, point)
    s2 = gf.mul(x, yy) ^ gf.square(z)
    if s2 == 0:
        # already on the cone after embedding
        return pg.normalize(gf, embed_point((x, yy, z)))
    mu = gf.div(y, gf.sqrt(s2))
    e = (1, gf.mul(mu, x), y ^ gf.mul(mu, z), gf.mul(mu, yy))
    return pg.normalize(gf, e)


def projection_singular_plane(gf: GF, p: pg.Coords) -> pg.Coords:
    """The plane through p whose projection collapses onto the line z = 0."""
    y = _projection_parameter(gf, p)
    return pg.normalize(gf, (y, 0, 1, 0))


def project_conic_to_plane(
    c: Conic, p: pg.Coords = DEFAULT_PROJECTION_POINT
) -> pg.Coords:
    """The plane cutting the cone section that projects onto a given conic.

    For the default projection point the coefficients are closed-form:
    [sqrt(lam), sqrt(alpha), sqrt(lam)+1, sqrt(beta)].  For any other point
    of the nuclear line the plane is spanned by the preimages of three conic
    points.
    """
    gf = c.gf
    y = _projection_parameter(gf, p)
    if y == 1:
        sl = gf.sqrt(c.lam)
        plane = (sl, gf.sqrt(c.alpha), sl ^ 1, gf.sqrt(c.beta))
        return pg.normalize(gf, plane)
    from .mathon_arcs import conic_points

    pts = sorted(conic_points(c))[:3]
    pre = [unproject_point(gf, p, pt) for pt in pts]
    return pg.plane_through(gf, *pre)


def project_arc(
    m: MathonArc, p: pg.Coords = DEFAULT_PROJECTION_POINT
) -> PartialFlock:
    """The raw projection flock of an arc: one plane per conic plus the singular one.

    The result is a genuine partial flock (its sections project bijectively
    onto the disjoint conics and the external line z = 0) but in general it
    is not additive; the coefficient chain in geometric_to_additive rewrites
    it into the additive flock of the same arc.
    """
    planes = {project_conic_to_plane(c, p) for c in m.conics}
    planes.add(projection_singular_plane(m.gf, p))
    return PartialFlock(m.gf, tuple(sorted(planes)))


# -- the coefficient chain between the raw and the additive picture -----------------


def delta_plane(u: pg.Coords) -> pg.Coords:
    """Substitution X0 -> X0 + X2 on plane coefficients (an involution)."""
    return (u[0], u[1], u[2] ^ u[0], u[3])


def iota_nuclear_point(gf: GF, point: pg.Coords) -> pg.Coords:
    """Inversion (1,0,y,0) -> (1,0,1/y,0) on the nuclear line minus {x, n}."""
    y = _projection_parameter(gf, point)
    return (1, 0, gf.inv(y), 0)


def phi_plane(gf: GF, u: pg.Coords) -> pg.Coords:
    """Replace a plane by the span of its X0 = 0 trace and the inverted N-point.

    The plane meets the nuclear line in (u2/u0, 0, 1, 0); inverting that
    point while keeping the trace in X0 = 0 replaces the X0 coefficient by
    u2^2/u0.  Undefined for planes through the vertex or the base nucleus.
    """
    if u[0] == 0:
        raise ValueError(f"plane {u} passes through the cone vertex {VERTEX}")
    if u[2] == 0:
        raise ValueError(f"plane {u} passes through the base nucleus {BASE_NUCLEUS}")
    return (gf.div(gf.square(u[2]), u[0]), u[1], u[2], u[3])


def kappa_plane(gf: GF, u: pg.Coords) -> pg.Coords:
    """Coordinatewise squaring (the Frobenius collineation on plane coordinates)."""
    return tuple(gf.square(x) for x in u)


def kappa_inv_plane(gf: GF, u: pg.Coords) -> pg.Coords:
    """Coordinatewise square root, inverse of kappa_plane."""
    return tuple(gf.sqrt(x) for x in u)


def raw_to_additive_plane(gf: GF, u: pg.Coords) -> pg.Coords:
    """One plane of the chain: delta, then phi, then kappa, then normalize.

    The singular plane X0 + X2 = 0 maps to X0 = 0 directly (delta already
    lands there and phi does not apply).  Any other plane through the
    default projection point is rejected.
    """
    w = delta_plane(pg.normalize(gf, u))
    if w[0] == 0:
        raise ValueError(f"plane {u} passes through the cone vertex {VERTEX}")
    if w[2] == 0:
        if pg.normalize(gf, w) == EMBEDDING_PLANE:
            return EMBEDDING_PLANE
        raise ValueError(
            f"plane {u} passes through the projection point "
            f"{DEFAULT_PROJECTION_POINT} but is not the singular plane"
        )
    return pg.normalize(gf, kappa_plane(gf, phi_plane(gf, w)))


def additive_to_raw_plane(gf: GF, u: pg.Coords) -> pg.Coords:
    """Inverse chain: kappa^{-1}, then phi, then delta, then normalize.

    The plane X0 = 0 maps back to the singular plane X0 + X2 = 0.
    """
    un = pg.normalize(gf, u)
    if un == EMBEDDING_PLANE:
        return SINGULAR_PLANE
    w = kappa_inv_plane(gf, un)
    return pg.normalize(gf, delta_plane(phi_plane(gf, w)))


def geometric_to_additive(F: PartialFlock) -> PartialFlock:
    """Rewrite a raw projection flock into the additive flock of its arc."""
    gf = F.gf
    return PartialFlock(
        gf, tuple(sorted(raw_to_additive_plane(gf, p) for p in F.planes))
    )


def additive_to_geometric(F: PartialFlock) -> PartialFlock:
    """Rewrite an additive flock into the raw picture of the default projection."""
    gf = F.gf
    return PartialFlock(
        gf, tuple(sorted(additive_to_raw_plane(gf, p) for p in F.planes))
    )


# -- standard plane form and composition -------------------------------------------


def standardize_plane(gf: GF, u: pg.Coords) -> tuple[int, int, int]:
    """The (a, b, c) of the unique scaling a X0 + b X1 + (a+1) X2 + c X3 = 0.

    Exists exactly when the X0 and X2 coefficients differ, i.e. when the
    plane avoids the default projection point (1,0,1,0).
    """
    if u[0] == u[2]:
        raise ValueError(
            f"plane {u} contains the projection point {DEFAULT_PROJECTION_POINT}"
            " and has no standard form"
        )
    s = gf.inv(u[0] ^ u[2])
    return (gf.mul(s, u[0]), gf.mul(s, u[1]), gf.mul(s, u[3]))


def standard_to_plane(gf: GF, abc: tuple[int, int, int]) -> pg.Coords:
    """The normalized plane of a standard form (a, b, c)."""
    a, b, c = abc
    return pg.normalize(gf, (a, b, a ^ 1, c))


def standard_plane_conic(gf: GF, abc: tuple[int, int, int]) -> Conic:
    """The conic that a standard-form plane's section projects onto (default p)."""
    a, b, c = abc
    return Conic(gf, gf.square(b), gf.square(c), gf.square(a))


def plane_compose(gf: GF, V: pg.Coords, W: pg.Coords) -> pg.Coords:
    """The third plane of the pencil, mirroring Mathon's conic composition.

    With standard forms (a, b, c) and (a', b', c'), a distinct-X0 pair with
    disjoint sections composes to (a+a', (ab+a'b')/(a+a'), (ac+a'c')/(a+a')).
    The result lies in the pencil of V and W, so it contains their common
    line, and its section projects onto the composition of the two projected
    conics.
    """
    a1, b1, c1 = standardize_plane(gf, V)
    a2, b2, c2 = standardize_plane(gf, W)
    if a1 == 0 or a2 == 0:
        raise ValueError("a plane through the cone vertex has no conic section")
    da = a1 ^ a2
    if da == 0:
        raise ValueError("composition needs distinct X0-coefficients")
    if not sections_disjoint(gf, V, W):
        raise DisjointnessError(f"sections of {V} and {W} share a cone point")
    nb = gf.div(gf.mul(a1, b1) ^ gf.mul(a2, b2), da)
    nc = gf.div(gf.mul(a1, c1) ^ gf.mul(a2, c2), da)
    return standard_to_plane(gf, (da, nb, nc))


def singular_plane(gf: GF, V: pg.Coords, W: pg.Coords) -> pg.Coords:
    """The unique plane of the pencil of V and W through the projection point.

    Computed as the coefficientwise sum of the two standard equations.  Its
    trace in X0 = 0 is the Denniston line of the two projected conics.
    """
    a1, b1, c1 = standardize_plane(gf, V)
    a2, b2, c2 = standardize_plane(gf, W)
    if a1 == a2:
        raise ValueError("the pencil plane through p needs distinct X0-coefficients")
    return pg.normalize(gf, (a1 ^ a2, b1 ^ b2, a1 ^ a2, c1 ^ c2))


# -- Denniston lines ---------------------------------------------------------------


def denniston_line(c1: Conic, c2: Conic) -> pg.Coords:
    """The external line of the degree-4 closure of two distinct conics.

    In PG(2,q) line coordinates this is
    [sqrt(alpha+alpha'), sqrt(beta+beta'), sqrt(lam+lam')]; all three conic
    pairs of a degree-4 closed set give the same line.
    """
    if c1.gf != c2.gf:
        raise ValueError("conics live in different fields")
    if (c1.alpha, c1.beta, c1.lam) == (c2.alpha, c2.beta, c2.lam):
        raise ValueError("a Denniston line needs two distinct conics")
    gf = c1.gf
    return pg.normalize(
        gf,
        (
            gf.sqrt(c1.alpha ^ c2.alpha),
            gf.sqrt(c1.beta ^ c2.beta),
            gf.sqrt(c1.lam ^ c2.lam),
        ),
    )


@dataclass(frozen=True)
class DennistonLineReport:
    """All pairwise Denniston lines of an arc and their concurrency."""

    lines: tuple[pg.Coords, ...]
    concurrent: bool
    common_point: Optional[pg.Coords]

    def to_json(self) -> dict:
        return {
            "lines": [list(l) for l in self.lines],
            "concurrent": self.concurrent,
            "common_point": list(self.common_point) if self.common_point else None,
        }


def denniston_lines_concurrent(m: MathonArc) -> DennistonLineReport:
    """Collect the Denniston line of every conic pair and test concurrency."""
    if m.degree < 4:
        raise ValueError("Denniston lines need an arc of degree at least 4")
    gf = m.gf
    lines = tuple(
        sorted(
            {
                denniston_line(c1, c2)
                for c1, c2 in itertools.combinations(m.conics, 2)
            }
        )
    )
    if len(lines) == 1:
        return DennistonLineReport(lines=lines, concurrent=True, common_point=None)
    pt = pg.meet_lines2(gf, lines[0], lines[1])
    concurrent = all(pg.incident(gf, pt, l) for l in lines[2:])
    return DennistonLineReport(
        lines=lines, concurrent=concurrent, common_point=pt if concurrent else None
    )


# -- flock extension ---------------------------------------------------------------


def extend_flock(F: PartialFlock, V: pg.Coords) -> PartialFlock:
    """Double an additive partial flock by one new disjoint plane.

    The new plane must avoid the vertex (1,0,0,0) and the base nucleus
    (0,0,1,0), and its section must be disjoint from every section of F.
    The size-2d result is assembled in the raw picture: V and the conic
    planes of F are carried through the coefficient chain, V is composed
    with each of them there, and the compositions are carried back.  The
    outcome is the unique additive flock on the doubled base set.
    """
    gf = F.gf
    if not classify_flock(F).additive:
        raise ValueError("only an additive partial flock can be extended")
    v = pg.normalize(gf, tuple(V))
    if v[0] == 0:
        raise ValueError(f"plane {v} passes through the cone vertex {VERTEX}")
    if v[2] == 0:
        raise ValueError(f"plane {v} passes through the base nucleus {BASE_NUCLEUS}")
    for u in F.planes:
        if not sections_disjoint(gf, v, u):
            raise DisjointnessError(f"the section of {v} meets the section of {u}")
    raw_v = additive_to_raw_plane(gf, v)
    planes = set(F.planes) | {v}
    for u in F.planes:
        if u == EMBEDDING_PLANE:
            continue
        composed = plane_compose(gf, raw_v, additive_to_raw_plane(gf, u))
        planes.add(raw_to_additive_plane(gf, composed))
    out = PartialFlock(gf, tuple(sorted(planes)))
    if out.size != 2 * F.size or not classify_flock(out).additive:
        raise ValueError("extension did not produce an additive flock of double size")
    for a, b in itertools.combinations(out.planes, 2):
        if not sections_disjoint(gf, a, b):
            raise DisjointnessError(f"sections of {a} and {b} share a cone point")
    return out


# -- serialization ------------------------------------------------------------------


def flock_to_json(F: PartialFlock) -> dict:
    triples = base_representation(F)
    cls = classify_flock(F)
    return {
        "field": F.gf.to_json(),
        "planes": [list(p) for p in F.planes],
        "B": [t for t, _, _ in triples],
        "f": [f for _, f, _ in triples],
        "g": [g for _, _, g in triples],
        "additive": cls.additive,
        "linear": cls.linear,
    }


def flock_from_json(obj: dict) -> PartialFlock:
    """Rebuild a flock from JSON, re-deriving and checking any derived fields."""
    if not isinstance(obj, dict) or "field" not in obj or "planes" not in obj:
        raise ValueError("flock object must have 'field' and 'planes' keys")
    gf = GF.from_json(obj["field"])
    planes = []
    for entry in obj["planes"]:
        if not isinstance(entry, (list, tuple)) or len(entry) != 4:
            raise ValueError("each plane needs exactly four coordinates")
        planes.append(pg.normalize(gf, tuple(entry)))
    F = PartialFlock(gf, tuple(sorted(set(planes))))
    derived = flock_to_json(F)
    for key in ("B", "f", "g", "additive", "linear"):
        if key in obj and obj[key] != derived[key]:
            raise ValueError(f"declared {key!r} does not match the planes")
    return F
