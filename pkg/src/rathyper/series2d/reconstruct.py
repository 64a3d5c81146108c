"""Rational reconstruction of truncated bivariate series by exact nullspaces."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from ..linalg import nullspace, primitive_integer_vector
from ..poly import RationalFunction, SparsePoly
from .series import TruncatedSeries, Vec

__all__ = ["Reconstruction", "reconstruct_rational", "reconstruct_auto", "InsufficientTruncation"]


class InsufficientTruncation(ValueError):
    pass


@dataclass(frozen=True)
class Reconstruction:
    function: RationalFunction
    dimension: int
    num_bound: tuple[int, int]
    den_bound: tuple[int, int]
    fit_dimension: int


def _box(bound: Sequence[int], offset: Sequence[int] = (0, 0)) -> list[Vec]:
    return [(offset[0] + i, offset[1] + j) for i in range(bound[0] + 1) for j in range(bound[1] + 1)]


def _equations(s: TruncatedSeries, num_box: list[Vec], den_box: list[Vec], order: int) -> list[list[Fraction]]:
    """Rows of (q * s - p)_m = 0 for every m where the product is determined at ``order``."""
    sub = s if order == s.order else s.restrict_order(order)
    nnum = len(num_box)
    num_index = {e: i for i, e in enumerate(num_box)}
    cands = set()
    for m0 in sub.region_points():
        for e in den_box:
            cands.add((m0[0] + e[0], m0[1] + e[1]))
    for e in num_box:
        cands.add(e)
    rows = []
    for m in sorted(cands):
        if not all(sub.known((m[0] - e[0], m[1] - e[1])) for e in den_box):
            continue
        row = [Fraction(0)] * (nnum + len(den_box))
        if m in num_index:
            row[num_index[m]] = Fraction(-1)
        nz = m in num_index
        for j, e in enumerate(den_box):
            c = sub.coeff((m[0] - e[0], m[1] - e[1]))
            if c:
                row[nnum + j] = c
                nz = True
        if nz:
            rows.append(row)
    return rows


def _numerator_determined(s: TruncatedSeries, num_box: list[Vec], den_box: list[Vec], order: int) -> bool:
    sub = s if order == s.order else s.restrict_order(order)
    return all(all(sub.known((m[0] - e[0], m[1] - e[1])) for e in den_box) for m in num_box)


def reconstruct_rational(
    s: TruncatedSeries,
    num_bound: Sequence[int],
    den_bound: Sequence[int],
    margin: int = 2,
    offset: Sequence[int] = (0, 0),
) -> Optional[Reconstruction]:
    """Find p/q with exponents in boxes [offset, offset + bound] and q*s = p on the truncation.

    The system is fitted on the region of order ``order - margin`` and the
    returned dimension is that of the solution space after also imposing the
    equations from the full region (the verified space). Returns ``None`` when
    that space is zero.
    """
    nb = (int(num_bound[0]), int(num_bound[1]))
    db = (int(den_bound[0]), int(den_bound[1]))
    if margin < 0:
        raise ValueError("margin must be nonnegative")
    need = max(nb + db) + margin
    if s.order < need:
        raise InsufficientTruncation(f"order {s.order} < bounds + margin = {need}")
    num_box = _box(nb, offset)
    den_box = _box(db)
    fit_order = s.order - margin
    if not _numerator_determined(s, num_box, den_box, fit_order):
        raise InsufficientTruncation("numerator box reaches beyond the fitted region")
    ncols = len(num_box) + len(den_box)
    fit_rows = _equations(s, num_box, den_box, fit_order)
    fit = nullspace(fit_rows, ncols)
    if not fit:
        return None
    rows = _equations(s, num_box, den_box, s.order) if margin else fit_rows
    full = nullspace(rows, ncols) if margin else fit
    if not full:
        return None
    # the sparsest basis vector with a nonzero denominator
    full.sort(key=lambda v: sum(1 for x in v if x))
    for v in full:
        vec = primitive_integer_vector(v)
        pnum = SparsePoly(2, {e: c for e, c in zip(num_box, vec[: len(num_box)]) if c})
        pden = SparsePoly(2, {e: c for e, c in zip(den_box, vec[len(num_box):]) if c})
        if not pden.is_zero():
            return Reconstruction(RationalFunction(pnum, pden), len(full), nb, db, len(fit))
    return None


def reconstruct_auto(
    s: TruncatedSeries,
    cap: int = 4,
    margin: Optional[int] = None,
    offset: Sequence[int] = (0, 0),
) -> Optional[Reconstruction]:
    """Increase square degree bounds (numerator d1, denominator d2) until a solution appears.

    Pairs are tried in order of (max(d1, d2), d1 + d2, d2); each uses a margin
    of at least bound + 2. Bounds that the truncation cannot support are skipped.
    """
    pairs = sorted(
        ((a, b) for a in range(cap + 1) for b in range(1, cap + 1)),
        key=lambda t: (max(t), sum(t), t[1]),
    )
    for a, b in pairs:
        mg = max(a, b) + 2 if margin is None else max(margin, max(a, b) + 2)
        try:
            res = reconstruct_rational(s, (a, a), (b, b), mg, offset)
        except InsufficientTruncation:
            continue
        if res is not None:
            return res
    return None
