"""Projective geometry over GF(2^h): PG(2,q) and PG(3,q).

Points, lines and planes are tuples of field elements in homogeneous
coordinates, normalized so the first nonzero coordinate equals 1.  That
canonical form makes equality, hashing and set membership exact.  All
enumerations are deterministic: ascending lexicographic order on the
normalized coordinate tuples.
"""

from __future__ import annotations

import functools
import itertools
from typing import Sequence

from .finite_field import GF

Coords = tuple[int, ...]


def normalize(gf: GF, coords: Sequence[int]) -> Coords:
    """Canonical representative of a projective point (or hyperplane)."""
    for i, c in enumerate(coords):
        if c:
            if c == 1:
                return tuple(coords)
            s = gf.inv(c)
            return tuple(coords[:i]) + (1,) + tuple(gf.mul(s, x) for x in coords[i + 1 :])
    raise ValueError("the zero vector is not a projective point")


def incident(gf: GF, point: Coords, hyper: Coords) -> bool:
    """Whether a point lies on a line (PG(2,q)) or plane (PG(3,q))."""
    acc = 0
    for x, y in zip(point, hyper):
        acc ^= gf.mul(x, y)
    return acc == 0


@functools.lru_cache(maxsize=None)
def _projective_points(gf: GF, n: int) -> tuple[Coords, ...]:
    pts: list[Coords] = []
    for lead in range(n - 1, -1, -1):
        head = (0,) * lead + (1,)
        for rest in itertools.product(range(gf.q), repeat=n - 1 - lead):
            pts.append(head + rest)
    return tuple(pts)


def enumerate_points2(gf: GF) -> tuple[Coords, ...]:
    """All q^2 + q + 1 points of PG(2,q), canonical order."""
    return _projective_points(gf, 3)


def enumerate_lines2(gf: GF) -> tuple[Coords, ...]:
    """All q^2 + q + 1 lines of PG(2,q) in dual coordinates, canonical order."""
    return _projective_points(gf, 3)


def enumerate_points3(gf: GF) -> tuple[Coords, ...]:
    """All q^3 + q^2 + q + 1 points of PG(3,q), canonical order."""
    return _projective_points(gf, 4)


def enumerate_planes3(gf: GF) -> tuple[Coords, ...]:
    """All q^3 + q^2 + q + 1 planes of PG(3,q) in dual coordinates."""
    return _projective_points(gf, 4)


def nullspace(gf: GF, rows: Sequence[Sequence[int]], n: int) -> list[Coords]:
    """Canonical basis of the right nullspace of a small matrix over GF(q)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        s = gf.inv(mat[r][col])
        mat[r] = [gf.mul(s, x) for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [x ^ gf.mul(f, y) for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
    basis = []
    for fc in (c for c in range(n) if c not in pivots):
        v = [0] * n
        v[fc] = 1
        for ri, pc in enumerate(pivots):
            v[pc] = mat[ri][fc]  # characteristic 2: negation is identity
        basis.append(tuple(v))
    return basis


def _span_points(gf: GF, basis: Sequence[Coords]) -> tuple[Coords, ...]:
    """All projective points of a subspace given by a basis of dimension <= 2."""
    if len(basis) == 1:
        return (normalize(gf, basis[0]),)
    if len(basis) == 2:
        b1, b2 = basis
        out = {normalize(gf, b1)}
        for t in range(gf.q):
            out.add(normalize(gf, tuple(x ^ gf.mul(t, y) for x, y in zip(b2, b1))))
        return tuple(sorted(out))
    raise ValueError(f"span enumeration supports dimension <= 2, got {len(basis)}")


@functools.lru_cache(maxsize=None)
def _orthogonal2(gf: GF, triple: Coords) -> tuple[Coords, ...]:
    return _span_points(gf, nullspace(gf, [triple], 3))


def line_points2(gf: GF, line: Coords) -> tuple[Coords, ...]:
    """The q + 1 points on a line of PG(2,q)."""
    return _orthogonal2(gf, line)


def lines_through2(gf: GF, point: Coords) -> tuple[Coords, ...]:
    """The q + 1 lines through a point of PG(2,q)."""
    return _orthogonal2(gf, point)


def join_points2(gf: GF, p1: Coords, p2: Coords) -> Coords:
    """The line of PG(2,q) through two distinct points."""
    basis = nullspace(gf, [p1, p2], 3)
    if len(basis) != 1:
        raise ValueError("join requires two distinct points")
    return normalize(gf, basis[0])


def meet_lines2(gf: GF, l1: Coords, l2: Coords) -> Coords:
    """The intersection point of two distinct lines of PG(2,q)."""
    basis = nullspace(gf, [l1, l2], 3)
    if len(basis) != 1:
        raise ValueError("meet requires two distinct lines")
    return normalize(gf, basis[0])


def plane_through(gf: GF, p1: Coords, p2: Coords, p3: Coords) -> Coords:
    """The plane of PG(3,q) spanned by three non-collinear points."""
    basis = nullspace(gf, [p1, p2, p3], 4)
    if len(basis) != 1:
        raise ValueError("the three points are collinear or not distinct")
    return normalize(gf, basis[0])


def meet_planes(gf: GF, a: Coords, b: Coords) -> tuple[Coords, Coords]:
    """Two distinct points spanning the line where two distinct planes meet."""
    if normalize(gf, a) == normalize(gf, b):
        raise ValueError("the planes coincide")
    b1, b2 = nullspace(gf, [a, b], 4)
    return normalize(gf, b1), normalize(gf, b2)
