"""Truncated bivariate series on shifted cones and the operations on them."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from ..poly import RationalFunction, SparsePoly
from .arrangement import GaleArrangement, MinimalCell
from .geometry import Vec, convex_hull, det2, dot, inward_normals, primitive, solve2

__all__ = [
    "Cone",
    "TruncatedSeries",
    "ThetaOperator",
    "horn_coefficient",
    "horn_series",
    "expand_rational",
    "diagonal",
    "dilate_restrict",
    "apply_theta",
    "fs_series",
    "series_from_function",
    "QUADRANT",
]

Number = Union[int, Fraction]


class UnknownCoefficient(KeyError):
    """Requested coefficient lies in the cone but beyond the truncation."""


@dataclass(frozen=True)
class Cone:
    """shift + R>=0 mu1 + R>=0 mu2 with primitive integer rays and a rational shift."""

    shift: tuple[Fraction, Fraction]
    mu1: Vec
    mu2: Vec

    def __post_init__(self):
        object.__setattr__(self, "shift", (Fraction(self.shift[0]), Fraction(self.shift[1])))
        m1, m2 = primitive(self.mu1), primitive(self.mu2)
        if det2(m1, m2) == 0:
            raise ValueError("cone is not two-dimensional")
        object.__setattr__(self, "mu1", m1)
        object.__setattr__(self, "mu2", m2)

    @property
    def normals(self) -> tuple[Vec, Vec]:
        return inward_normals(self.mu1, self.mu2)

    def coords(self, m: Sequence) -> tuple[Fraction, Fraction]:
        n1, n2 = self.normals
        d = (m[0] - self.shift[0], m[1] - self.shift[1])
        return dot(n1, d), dot(n2, d)

    def contains(self, m: Sequence) -> bool:
        a, b = self.coords(m)
        return a >= 0 and b >= 0


QUADRANT = Cone((0, 0), (1, 0), (0, 1))


class TruncatedSeries:
    """Exact coefficients on {m : 0 <= <nu_k, m - shift> <= order}.

    Points of the region without a stored coefficient are zero; points outside
    the cone are zero; points inside the cone beyond the order are unknown.
    """

    __slots__ = ("cone", "order", "coeffs")

    def __init__(self, cone: Cone, order: int, coeffs: Optional[dict] = None):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.cone = cone
        self.order = order
        store: dict[Vec, Fraction] = {}
        for m, c in (coeffs or {}).items():
            c = Fraction(c)
            if c:
                m = (int(m[0]), int(m[1]))
                if not self.in_region(m):
                    raise ValueError(f"coefficient at {m} lies outside the truncation region")
                store[m] = c
        self.coeffs = store

    # -- region ---------------------------------------------------------------
    def in_region(self, m: Sequence) -> bool:
        a, b = self.cone.coords(m)
        return 0 <= a <= self.order and 0 <= b <= self.order

    def known(self, m: Sequence) -> bool:
        a, b = self.cone.coords(m)
        return a < 0 or b < 0 or (a <= self.order and b <= self.order)

    def region_points(self, order: Optional[int] = None) -> list[Vec]:
        return region_points(self.cone, self.order if order is None else order)

    def coeff(self, m: Sequence[int]) -> Fraction:
        m = (m[0], m[1])
        c = self.coeffs.get(m)
        if c is not None:
            return c
        if not self.known(m):
            raise UnknownCoefficient(m)
        return Fraction(0)

    def __getitem__(self, m) -> Fraction:
        return self.coeff(m)

    def items(self) -> list[tuple[Vec, Fraction]]:
        return sorted(self.coeffs.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.cone == other.cone and self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"TruncatedSeries(cone={self.cone}, order={self.order}, nonzero={len(self.coeffs)})"

    def map_coeffs(self, fn: Callable[[Vec, Fraction], Fraction]) -> "TruncatedSeries":
        return TruncatedSeries(self.cone, self.order, {m: fn(m, c) for m, c in self.coeffs.items()})

    def scaled(self, c: Number) -> "TruncatedSeries":
        return self.map_coeffs(lambda m, a: a * c)

    def sign_twist(self, s1: int, s2: int) -> "TruncatedSeries":
        """Series of f(s1 x1, s2 x2) for s_i = +-1."""
        return self.map_coeffs(lambda m, a: a * (s1 ** (m[0] % 2)) * (s2 ** (m[1] % 2)))

    def shifted(self, u: Vec) -> "TruncatedSeries":
        """Series of x^u f."""
        cone = Cone((self.cone.shift[0] + u[0], self.cone.shift[1] + u[1]), self.cone.mu1, self.cone.mu2)
        return TruncatedSeries(cone, self.order, {(m[0] + u[0], m[1] + u[1]): c for m, c in self.coeffs.items()})

    def restrict_order(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncation")
        s = TruncatedSeries(self.cone, order)
        s.coeffs = {m: c for m, c in self.coeffs.items() if s.in_region(m)}
        return s

    def to_json(self) -> dict:
        return {
            "shift": [_qstr(x) for x in self.cone.shift],
            "rays": [[str(x) for x in self.cone.mu1], [str(x) for x in self.cone.mu2]],
            "order": str(self.order),
            "coeffs": [[str(m[0]), str(m[1]), str(c.numerator), str(c.denominator)] for m, c in self.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        shift = tuple(Fraction(x) for x in data["shift"])
        rays = [tuple(int(x) for x in r) for r in data["rays"]]
        cone = Cone(shift, rays[0], rays[1])
        coeffs = {(int(a), int(b)): Fraction(int(n), int(d)) for a, b, n, d in data["coeffs"]}
        return cls(cone, int(data["order"]), coeffs)


def _qstr(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def region_points(cone: Cone, order: int) -> list[Vec]:
    n1, n2 = cone.normals
    w = cone.shift
    corners = []
    for a in (0, order):
        for b in (0, order):
            p = solve2(n1, a + dot(n1, w), n2, b + dot(n2, w))
            corners.append(p)
    lo = (math.ceil(min(p[0] for p in corners)), math.ceil(min(p[1] for p in corners)))
    hi = (math.floor(max(p[0] for p in corners)), math.floor(max(p[1] for p in corners)))
    out = []
    for x in range(lo[0], hi[0] + 1):
        for y in range(lo[1], hi[1] + 1):
            a, b = cone.coords((x, y))
            if 0 <= a <= order and 0 <= b <= order:
                out.append((x, y))
    return out


# -- Horn series -------------------------------------------------------------------

def _form_factor(l: int) -> Fraction:
    if l < 0:
        return Fraction((-1) ** (l % 2) * math.factorial(-l - 1))
    if l > 0:
        return Fraction(1, math.factorial(l))
    return Fraction(1)


def horn_coefficient(B: Sequence[Vec], k: Sequence[int], m: Sequence[int]) -> Fraction:
    """prod over negative forms of (-1)^l (-l-1)!  divided by  prod over positive forms of l!."""
    num, den = 1, 1
    for b, c in zip(B, k):
        l = b[0] * m[0] + b[1] * m[1] + c
        if l < 0:
            num *= math.factorial(-l - 1)
            if l % 2:
                num = -num
        elif l > 0:
            den *= math.factorial(l)
    return Fraction(num, den)


def _cone_of_cell(cell: MinimalCell) -> Cone:
    if cell.kind != "polygon" or len(cell.rays) != 2:
        raise ValueError("minimal cell has a recession cone of dimension < 2")
    mu1, mu2 = cell.rays
    n1, n2 = inward_normals(mu1, mu2)
    a = min(dot(n1, v) for v in cell.vertices)
    b = min(dot(n2, v) for v in cell.vertices)
    w = solve2(n1, a, n2, b)
    return Cone(w, mu1, mu2)


def horn_series(arr: GaleArrangement, region: Union[MinimalCell, Cone], order: int) -> TruncatedSeries:
    """Horn/canonical series of the arrangement, restricted to a cell or a cone."""
    if isinstance(region, MinimalCell):
        cone = _cone_of_cell(region)
        support = set(region.support)

        def inside(m):
            return arr.negative_support(m) == support
    else:
        cone = region

        def inside(m):
            return True
    coeffs = {}
    for m in region_points(cone, order):
        if inside(m):
            coeffs[m] = horn_coefficient(arr.B, arr.v, m)
    return TruncatedSeries(cone, order, coeffs)


def fs_series(s1: int, s2: int, order: int) -> TruncatedSeries:
    """(s1 m1 + s2 m2)! / ((s1 m1)! (s2 m2)!) on the first quadrant."""
    if s1 < 0 or s2 < 0:
        raise ValueError("s1, s2 must be nonnegative")
    coeffs = {}
    for m in region_points(QUADRANT, order):
        if s1 == 0 or s2 == 0:
            coeffs[m] = Fraction(1)
        else:
            a, b = s1 * m[0], s2 * m[1]
            coeffs[m] = Fraction(math.comb(a + b, a))
    return TruncatedSeries(QUADRANT, order, coeffs)


def series_from_function(fn: Callable[[int, int], Number], order: int, cone: Cone = QUADRANT) -> TruncatedSeries:
    return TruncatedSeries(cone, order, {m: Fraction(fn(m[0], m[1])) for m in region_points(cone, order)})


# -- expansion of rational functions -------------------------------------------------

def expand_rational(f: RationalFunction, vertex: Sequence[int], order: int) -> TruncatedSeries:
    """Laurent expansion of p/q from a vertex v0 of the Newton polygon of q.

    Writes q = c0 x^v0 (1 - qt) with qt supported in the cone spanned by the
    edges at v0 and solves a = p x^-v0 / c0 + qt * a over the region in order
    of increasing <nu1 + nu2, m>.
    """
    if f.nvars != 2:
        raise ValueError("expand_rational needs a bivariate rational function")
    p, q = f.num, f.den
    v0 = (int(vertex[0]), int(vertex[1]))
    supp = list(q.terms)
    hull = convex_hull(supp)
    if v0 not in hull:
        raise ValueError(f"{v0} is not a vertex of the Newton polygon of the denominator")
    if len(hull) == 1:
        mu1, mu2 = (1, 0), (0, 1)
    elif len(hull) == 2:
        other = hull[1] if hull[0] == v0 else hull[0]
        mu1 = primitive((other[0] - v0[0], other[1] - v0[1]))
        mu2 = (-mu1[1], mu1[0])
    else:
        i = hull.index(v0)
        nxt, prv = hull[(i + 1) % len(hull)], hull[i - 1]
        mu1 = primitive((nxt[0] - v0[0], nxt[1] - v0[1]))
        mu2 = primitive((prv[0] - v0[0], prv[1] - v0[1]))
    n1, n2 = inward_normals(mu1, mu2)
    c0 = q.terms[v0]
    pt = {(e[0] - v0[0], e[1] - v0[1]): Fraction(c, c0) for e, c in p.terms.items()}
    qt = {(e[0] - v0[0], e[1] - v0[1]): Fraction(-c, c0) for e, c in q.terms.items() if e != v0}
    if pt:
        a = min(dot(n1, e) for e in pt)
        b = min(dot(n2, e) for e in pt)
        w = solve2(n1, a, n2, b)
    else:
        w = (Fraction(0), Fraction(0))
    cone = Cone(w, mu1, mu2)
    pts = region_points(cone, order)
    lam = (n1[0] + n2[0], n1[1] + n2[1])
    pts.sort(key=lambda m: (dot(lam, m), m))
    coeffs: dict[Vec, Fraction] = {}
    qt_items = list(qt.items())
    for m in pts:
        val = pt.get(m, Fraction(0))
        for u, cu in qt_items:
            prev = coeffs.get((m[0] - u[0], m[1] - u[1]))
            if prev is not None:
                val += cu * prev
        if val:
            coeffs[m] = val
    return TruncatedSeries(cone, order, coeffs)


# -- transformations -------------------------------------------------------------------

def diagonal(s: TruncatedSeries, delta: Sequence[int]) -> list[Fraction]:
    """Coefficients a_{delta r}, r = 0, 1, ... while they are determined."""
    d1, d2 = int(delta[0]), int(delta[1])
    if d1 <= 0 or d2 <= 0 or math.gcd(d1, d2) != 1:
        raise ValueError("delta must be a coprime positive pair")
    out = []
    r = 0
    while True:
        m = (d1 * r, d2 * r)
        if not s.known(m):
            break
        if not s.in_region(m) and r > s.order:
            break
        out.append(s.coeff(m))
        r += 1
    return out


def dilate_restrict(
    s: TruncatedSeries,
    r: Sequence[int] = (1, 1),
    congruence: Optional[tuple[Sequence[int], int, int]] = None,
) -> TruncatedSeries:
    """Coefficient at m becomes a(r1 m1, r2 m2); optionally keep only c.m = rho (mod M).

    ``congruence`` is ``((c1, c2), M, rho)`` and is applied to the new indices.
    """
    r1, r2 = int(r[0]), int(r[1])
    if r1 <= 0 or r2 <= 0:
        raise ValueError("dilation factors must be positive")
    mu1 = primitive((r2 * s.cone.mu1[0], r1 * s.cone.mu1[1]))
    mu2 = primitive((r2 * s.cone.mu2[0], r1 * s.cone.mu2[1]))
    shift = (s.cone.shift[0] / r1, s.cone.shift[1] / r2)
    cone = Cone(shift, mu1, mu2)
    n1, n2 = s.cone.normals
    g1 = math.gcd(r1 * n1[0], r2 * n1[1])
    g2 = math.gcd(r1 * n2[0], r2 * n2[1])
    order = s.order // max(g1, g2)
    coeffs = {}
    for m in region_points(cone, order):
        if congruence is not None:
            c, mod, rho = congruence
            if (c[0] * m[0] + c[1] * m[1] - rho) % mod:
                continue
        coeffs[m] = s.coeff((r1 * m[0], r2 * m[1]))
    return TruncatedSeries(cone, order, coeffs)


@dataclass(frozen=True)
class ThetaOperator:
    """prod_j (<b_j, theta> + c_j) acting by x^m -> prod_j (<b_j, m> + c_j) x^m."""

    factors: tuple[tuple[Vec, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "factors", tuple(((int(b[0]), int(b[1])), int(c)) for b, c in self.factors)
        )

    def value(self, m: Sequence[int]) -> int:
        v = 1
        for b, c in self.factors:
            v *= b[0] * m[0] + b[1] * m[1] + c
        return v

    def __mul__(self, other: "ThetaOperator") -> "ThetaOperator":
        return ThetaOperator(self.factors + other.factors)

    def to_str(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for b, c in self.factors:
            terms = []
            for coef, name in ((b[0], "t1"), (b[1], "t2")):
                if coef:
                    terms.append(f"{coef}*{name}" if abs(coef) != 1 else ("-" if coef < 0 else "") + name)
            s = " + ".join(terms).replace("+ -", "- ") if terms else "0"
            if c:
                s += f" + {c}" if c > 0 else f" - {-c}"
            parts.append(f"({s})")
        return "*".join(parts)

    def to_json(self) -> list:
        return [[[str(b[0]), str(b[1])], str(c)] for b, c in self.factors]

    @classmethod
    def from_json(cls, data) -> "ThetaOperator":
        return cls(tuple(((int(b[0]), int(b[1])), int(c)) for b, c in data))


def apply_theta(P: ThetaOperator, s: TruncatedSeries) -> TruncatedSeries:
    return s.map_coeffs(lambda m, a: a * P.value(m))


def poly_from_coeffs(coeffs: dict[Vec, Fraction]) -> tuple[SparsePoly, int]:
    """Integer polynomial and common denominator for a finite coefficient map."""
    den = 1
    for c in coeffs.values():
        den = den * c.denominator // math.gcd(den, c.denominator)
    return SparsePoly(2, {m: int(c * den) for m, c in coeffs.items()}), den
