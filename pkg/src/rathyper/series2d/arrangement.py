"""Oriented line arrangements from Gale data: minimal cells and the Euler-Jacobi test."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..lattice import IntMatrix
from .geometry import Polyhedron2D, Vec, det2, lattice_witness, lp_max_margin, primitive

__all__ = ["GaleArrangement", "MinimalCell", "CellsResult", "minimal_cells", "euler_jacobi", "chambers"]


@dataclass(frozen=True)
class GaleArrangement:
    """Forms l_i(m) = <b_i, m> + v_i on Z^2."""

    B: tuple[Vec, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        B = tuple(tuple(int(x) for x in r) for r in self.B)
        v = tuple(int(x) for x in self.v)
        if any(len(r) != 2 for r in B):
            raise ValueError("Gale rows must have two entries")
        if len(B) != len(v):
            raise ValueError("need one offset per row")
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "v", v)

    @classmethod
    def from_matrix(cls, B: IntMatrix, v: Sequence[int]) -> "GaleArrangement":
        return cls(tuple(B.data), tuple(v))

    @property
    def n(self) -> int:
        return len(self.B)

    def regular(self) -> bool:
        return sum(b[0] for b in self.B) == 0 and sum(b[1] for b in self.B) == 0

    def forms(self, m: Sequence) -> list:
        return [b[0] * m[0] + b[1] * m[1] + c for b, c in zip(self.B, self.v)]

    def negative_support(self, m: Sequence[int]) -> frozenset:
        return frozenset(i for i, x in enumerate(self.forms(m)) if x < 0)

    def cell_polyhedron(self, support: Sequence[int]) -> Polyhedron2D:
        """Lattice points with negative support exactly ``support``: l_i <= -1 on it, l_j >= 0 off it."""
        S = set(support)
        ineqs = []
        for i, (b, c) in enumerate(zip(self.B, self.v)):
            if i in S:
                ineqs.append((b, Fraction(-1 - c)))  # <b,m> <= -1 - v
            else:
                ineqs.append(((-b[0], -b[1]), Fraction(c)))  # -<b,m> <= v
        return Polyhedron2D(tuple(ineqs))

    def default_radius(self) -> int:
        mv = max((abs(x) for x in self.v), default=0)
        mb = max((abs(x) for r in self.B for x in r), default=0)
        return max(1, 10 * mv + mb)


@dataclass(frozen=True)
class MinimalCell:
    support: tuple[int, ...]
    witness: Vec
    rays: tuple[Vec, ...]
    vertices: tuple[tuple[Fraction, Fraction], ...] = ()
    kind: str = "polygon"  # polygon (pointed) | strip | halfplane | plane

    @property
    def dimension_of_recession(self) -> int:
        if self.kind in ("strip",):
            return 1
        if self.kind in ("halfplane", "plane"):
            return 2
        return len(self.rays) if len(self.rays) < 2 else 2


@dataclass(frozen=True)
class CellsResult:
    cells: tuple[MinimalCell, ...]
    radius: int
    complete: bool
    outside_radius: tuple[tuple[int, ...], ...] = field(default=())

    @property
    def supports(self) -> list[frozenset]:
        return [frozenset(c.support) for c in self.cells]


def _describe(arr: GaleArrangement, support: tuple[int, ...]) -> Optional[MinimalCell]:
    P = arr.cell_polyhedron(support)
    w = lattice_witness(P)
    if w is None:
        return None
    rank = P.normal_rank()
    if rank == 2:
        rays = tuple(P.recession_rays())
        return MinimalCell(support, w, rays, tuple(P.vertices()), "polygon")
    if rank == 0:
        return MinimalCell(support, w, (), (), "plane")
    normals = [a for a, _ in P.ineqs if a != (0, 0)]
    g = primitive(normals[0])
    d = (-g[1], g[0])
    signs = {1 if (a[0] * g[0] + a[1] * g[1]) > 0 else -1 for a in normals}
    kind = "strip" if len(signs) == 2 else "halfplane"
    return MinimalCell(support, w, (d, (-d[0], -d[1])), (), kind)


def minimal_cells(arr: GaleArrangement, radius: Optional[int] = None) -> CellsResult:
    """All inclusion-minimal negative supports realized by lattice points.

    Every support is decided exactly (see ``lattice_witness``), so the answer
    does not depend on ``radius``; the radius is recorded, and supports whose
    nearest witness lies outside it are listed for transparency.
    """
    if radius is None:
        radius = arr.default_radius()
    found: list[MinimalCell] = []
    for size in range(arr.n + 1):
        for sub in itertools.combinations(range(arr.n), size):
            S = set(sub)
            if any(set(c.support) <= S for c in found):
                continue
            cell = _describe(arr, sub)
            if cell is not None:
                found.append(cell)
    found.sort(key=lambda c: (len(c.support), c.support))
    outside = tuple(c.support for c in found if max(abs(c.witness[0]), abs(c.witness[1])) > radius)
    return CellsResult(tuple(found), radius, True, outside)


def chambers(arr: GaleArrangement) -> list[MinimalCell]:
    """Every nonempty cell (minimal or not), for plotting dumps."""
    out = []
    for size in range(arr.n + 1):
        for sub in itertools.combinations(range(arr.n), size):
            cell = _describe(arr, sub)
            if cell is not None:
                out.append(cell)
    return out


def euler_jacobi(arr: GaleArrangement) -> tuple[bool, Optional[tuple[Fraction, Fraction]]]:
    """Is there a rational point where every form is strictly negative?"""
    normals = [b for b in arr.B if b != (0, 0)]
    consts_zero = [c for b, c in zip(arr.B, arr.v) if b == (0, 0)]
    if any(c >= 0 for c in consts_zero):
        return False, None
    if not normals:
        return True, (Fraction(0), Fraction(0))
    rank2 = any(det2(normals[0], b) != 0 for b in normals[1:])
    if rank2:
        pairs = [(b, c) for b, c in zip(arr.B, arr.v) if b != (0, 0)]
        res = lp_max_margin([b for b, _ in pairs], [c for _, c in pairs])
        if res is None or res[0] <= 0:
            return False, None
        return True, res[1]
    # all normals parallel to g: conditions on s = <g, x>
    g = primitive(normals[0])
    lo, hi = None, None
    for b, c in zip(arr.B, arr.v):
        if b == (0, 0):
            continue
        lam = b[0] // g[0] if g[0] else b[1] // g[1]
        bound = Fraction(-c, lam)  # lam*s + c < 0
        if lam > 0:
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = bound if lo is None else max(lo, bound)
    if lo is not None and hi is not None and lo >= hi:
        return False, None
    if lo is None and hi is None:
        s = Fraction(0)
    elif lo is None:
        s = hi - 1
    elif hi is None:
        s = lo + 1
    else:
        s = (lo + hi) / 2
    gg = g[0] * g[0] + g[1] * g[1]
    return True, (s * g[0] / gg, s * g[1] / gg)
