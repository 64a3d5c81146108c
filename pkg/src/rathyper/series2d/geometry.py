"""Exact planar polyhedra: vertices, recession cones, lattice points, tiny LPs."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..lattice import xgcd

Vec = tuple[int, int]
QVec = tuple[Fraction, Fraction]


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*v)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(x // g for x in v)


def primitive_q(v: Sequence[Fraction]) -> tuple[int, ...]:
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    return primitive([int(Fraction(x) * den) for x in v])


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def det2(a: Sequence, b: Sequence):
    return a[0] * b[1] - a[1] * b[0]


def perp(v: Sequence[int]) -> Vec:
    return (-v[1], v[0])


def solve2(a1, c1, a2, c2) -> Optional[QVec]:
    """Intersection of lines a1.x = c1 and a2.x = c2."""
    d = det2(a1, a2)
    if d == 0:
        return None
    x = Fraction(c1 * a2[1] - c2 * a1[1], 1) / d
    y = Fraction(a1[0] * c2 - a2[0] * c1, 1) / d
    return (x, y)


def inward_normals(mu1: Vec, mu2: Vec) -> tuple[Vec, Vec]:
    """Primitive normals nu1 (orthogonal to mu1) and nu2 (orthogonal to mu2) pointing into the cone."""
    if det2(mu1, mu2) == 0:
        raise ValueError("cone is not two-dimensional")
    n1 = primitive(perp(mu1))
    if dot(n1, mu2) < 0:
        n1 = (-n1[0], -n1[1])
    n2 = primitive(perp(mu2))
    if dot(n2, mu1) < 0:
        n2 = (-n2[0], -n2[1])
    return n1, n2


@dataclass(frozen=True)
class Polyhedron2D:
    """{x in R^2 : a.x <= c for every (a, c)} with integer a and rational c."""

    ineqs: tuple[tuple[Vec, Fraction], ...]

    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) <= c for a, c in self.ineqs)

    def normal_rank(self) -> int:
        normals = [a for a, _ in self.ineqs if a != (0, 0)]
        if not normals:
            return 0
        return 2 if any(det2(normals[0], b) != 0 for b in normals[1:]) else 1

    def vertices(self) -> list[QVec]:
        pts = set()
        for (a1, c1), (a2, c2) in itertools.combinations(self.ineqs, 2):
            p = solve2(a1, c1, a2, c2)
            if p is not None and self.contains(p):
                pts.add(p)
        return sorted(pts)

    def recession_rays(self) -> list[Vec]:
        """Extreme rays of {d : a.d <= 0}, primitive; assumes normal rank 2."""
        cands = set()
        for a, _ in self.ineqs:
            if a == (0, 0):
                continue
            p = primitive(perp(a))
            for d in (p, (-p[0], -p[1])):
                if all(dot(b, d) <= 0 for b, _ in self.ineqs):
                    cands.add(d)
        return sorted(cands)

    def is_empty(self) -> bool:
        for a, c in self.ineqs:
            if a == (0, 0) and c < 0:
                return True
        if self.normal_rank() == 2:
            return not self.vertices()
        return _strip_interval(self) is None


def _strip_interval(P: Polyhedron2D):
    """For normal rank <= 1: (g, lo, hi) with P = {lo <= <g,x> <= hi} (None when empty)."""
    g = None
    lo, hi = None, None
    for a, c in P.ineqs:
        if a == (0, 0):
            if c < 0:
                return None
            continue
        if g is None:
            g = primitive(a)
        lam = a[0] // g[0] if g[0] else a[1] // g[1]
        bound = Fraction(c) / lam
        if lam > 0:
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = bound if lo is None else max(lo, bound)
    if lo is not None and hi is not None and lo > hi:
        return None
    return g, lo, hi


def lattice_points_in_box(lo: Sequence[int], hi: Sequence[int]):
    for x in range(lo[0], hi[0] + 1):
        for y in range(lo[1], hi[1] + 1):
            yield (x, y)


def _norm_key(p: Vec):
    return (p[0] * p[0] + p[1] * p[1], p)


def lattice_witness(P: Polyhedron2D) -> Optional[Vec]:
    """A lattice point of ``P`` of smallest norm among a complete candidate set, or None.

    For a pointed polyhedron conv(V) + cone(r1, r2) every lattice point can be
    translated by integer multiples of the rays into conv(V) + [0,1] r1 + [0,1] r2,
    so searching that bounded set decides lattice feasibility exactly.
    """
    rank = P.normal_rank()
    if rank == 0:
        return (0, 0) if P.contains((0, 0)) else None
    if rank == 1:
        s = _strip_interval(P)
        if s is None:
            return None
        g, lo, hi = s
        # integer t in [lo, hi] closest to 0
        lo_i = math.ceil(lo) if lo is not None else None
        hi_i = math.floor(hi) if hi is not None else None
        if lo_i is not None and hi_i is not None and lo_i > hi_i:
            return None
        t = 0
        if lo_i is not None and t < lo_i:
            t = lo_i
        if hi_i is not None and t > hi_i:
            t = hi_i
        _, x, y = xgcd(g[0], g[1])
        w = (t * x, t * y)
        # shorten along the line direction
        d = perp(g)
        dd = dot(d, d)
        k = round(Fraction(dot(w, d), dd))
        return (w[0] - k * d[0], w[1] - k * d[1])
    verts = P.vertices()
    if not verts:
        return None
    rays = P.recession_rays()
    corners = list(verts)
    for r in rays:
        corners += [(v[0] + r[0], v[1] + r[1]) for v in corners]
    lo = (math.floor(min(p[0] for p in corners)), math.floor(min(p[1] for p in corners)))
    hi = (math.ceil(max(p[0] for p in corners)), math.ceil(max(p[1] for p in corners)))
    best = None
    for p in lattice_points_in_box(lo, hi):
        if P.contains(p) and (best is None or _norm_key(p) < _norm_key(best)):
            best = p
    return best


def lp_max_margin(normals: Sequence[Vec], consts: Sequence[int], cap: Fraction = Fraction(1)) -> Optional[tuple[Fraction, QVec]]:
    """max t subject to <a_i, x> + c_i + t <= 0 and t <= cap (exact vertex enumeration).

    Returns (t*, x*) or None when infeasible. Requires the normals to span R^2.
    """
    planes = [((a[0], a[1], 1), Fraction(-c)) for a, c in zip(normals, consts)]
    planes.append(((0, 0, 1), Fraction(cap)))

    def feasible(p) -> bool:
        return all(sum(u * w for u, w in zip(a, p)) <= c for a, c in planes)

    best = None
    for tri in itertools.combinations(planes, 3):
        M = [list(map(Fraction, a)) + [c] for a, c in tri]
        sol = _solve3(M)
        if sol is None or not feasible(sol):
            continue
        if best is None or sol[2] > best[2] or (sol[2] == best[2] and sol < best):
            best = sol
    if best is None:
        return None
    return best[2], (best[0], best[1])


def _solve3(M: list[list[Fraction]]):
    m = [row[:] for row in M]
    for c in range(3):
        piv = next((i for i in range(c, 3) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        for i in range(3):
            if i != c and m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return tuple(m[i][3] / m[i][i] for i in range(3))


def convex_hull(points: Sequence[Vec]) -> list[Vec]:
    """Counter-clockwise hull vertices (monotone chain), collinear points dropped."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def half(seq):
        out: list[Vec] = []
        for p in seq:
            while len(out) >= 2 and det2((out[-1][0] - out[-2][0], out[-1][1] - out[-2][1]),
                                         (p[0] - out[-2][0], p[1] - out[-2][1])) <= 0:
                out.pop()
            out.append(p)
        return out

    lower, upper = half(pts), half(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return hull
