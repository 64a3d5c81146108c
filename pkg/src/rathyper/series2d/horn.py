"""Rationality decision for bivariate Horn series.

The structural test pairs off opposite Gale rows; what is left must be empty
(Lawrence type) or three rows s1*nu1, s2*nu2, -(s1*nu1 + s2*nu2) along the
inward normals of the summation cone (Cayley type). On the first quadrant the
theta-operator identity P1 phi = c * P2 f_(s1,s2)(+-x1, +-x2) is then built
form by form and checked on a truncation; a closed form is produced by
rational reconstruction.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from ..configuration import reduced_gale
from ..lattice import IntMatrix
from ..poly import RationalFunction
from .arrangement import GaleArrangement
from .geometry import Vec, det2, dot
from .reconstruct import Reconstruction, reconstruct_auto
from .series import QUADRANT, Cone, ThetaOperator, TruncatedSeries, apply_theta, fs_series, horn_series

__all__ = ["HornVerdict", "horn_rationality", "theta_certificate", "fs_closed_form"]

RATIONAL_LAWRENCE = "RationalLawrence"
RATIONAL_CAYLEY = "RationalCayley"
NOT_RATIONAL = "NotRational"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ThetaCertificate:
    """P1 phi = scale * P2 f_(s1,s2)(signs[0] x1, signs[1] x2), verified up to ``order``."""

    P1: ThetaOperator
    P2: ThetaOperator
    signs: tuple[int, int]
    scale: Fraction
    order: int


@dataclass(frozen=True)
class HornVerdict:
    tag: str
    reason: str = ""
    s: Optional[tuple[int, int]] = None
    pairing: tuple[tuple[int, int], ...] = ()
    identity: Optional[ThetaCertificate] = None
    certificate: Optional[RationalFunction] = None  # closed form of f_(s1,s2)
    phi_closed_form: Optional[RationalFunction] = None
    details: dict = field(default_factory=dict)

    @property
    def rational(self) -> bool:
        return self.tag in (RATIONAL_LAWRENCE, RATIONAL_CAYLEY)


def _positive_multiple(b: Vec, nu: Vec) -> int:
    """s > 0 with b = s*nu, else 0."""
    if det2(b, nu) != 0:
        return 0
    s = dot(b, nu) // dot(nu, nu)
    return s if s > 0 and (s * nu[0], s * nu[1]) == tuple(b) else 0


def _values_meet(b: Vec, lo: int, hi: int) -> bool:
    """Does <b, m> take a value in [lo, hi] for some m in N^2?"""
    if lo > hi:
        return False
    b1, b2 = b
    if b1 == 0 and b2 == 0:
        return lo <= 0 <= hi
    if (b1 > 0 and b2 < 0) or (b1 < 0 and b2 > 0):
        g = math.gcd(b1, b2)
        return any(t % g == 0 for t in range(lo, hi + 1))
    if b1 <= 0 and b2 <= 0:
        b1, b2, lo, hi = -b1, -b2, -hi, -lo
    for t in range(max(lo, 0), hi + 1):
        if b1 == 0:
            if t % b2 == 0:
                return True
            continue
        for x in range(t // b1 + 1):
            rest = t - b1 * x
            if (b2 == 0 and rest == 0) or (b2 and rest % b2 == 0):
                return True
    return False


def _form_operators(b: Vec, k: int, k0: int) -> tuple[list, list]:
    """Factors for P1 (on phi) and P2 (on the reference series) of one form.

    Uses F(l) = (l + 1) F(l + 1), valid except at l = -1, for the Horn factor
    F. Where the shift passes through -1 the product vanishes; squaring it on
    one side makes both sides vanish on that band.
    """
    d = k - k0
    p1: list = []
    p2: list = []
    if d > 0:
        W = [(b, k0 + j) for j in range(1, d + 1)]
        if _values_meet(b, -d - k0, -1 - k0):
            p1 += W + W
            p2 += W
        else:
            p1 += W
    elif d < 0:
        V = [(b, k + j) for j in range(1, -d + 1)]
        if _values_meet(b, -k0, -d - 1 - k0):
            p1 += V
            p2 += V + V
        else:
            p2 += V
    return p1, p2


def _reference_offsets(rows: Sequence[Vec], pairing, triple: Optional[tuple[int, int, int]]) -> dict[int, int]:
    ref: dict[int, int] = {}
    for i, j in pairing:
        # the row inside the closed quadrant gets offset 0, its partner -1
        if rows[j][0] >= 0 and rows[j][1] >= 0 and not (rows[i][0] >= 0 and rows[i][1] >= 0):
            i, j = j, i
        ref[i], ref[j] = 0, -1
    if triple is not None:
        a, b, c = triple
        ref[a], ref[b], ref[c] = 0, 0, -1
    for i, r in enumerate(rows):
        if r == (0, 0):
            ref[i] = None  # constant factor, left alone
    return ref


def _match_scaled(lhs: TruncatedSeries, rhs: TruncatedSeries) -> Optional[Fraction]:
    """c with lhs = c * rhs on the truncation, or None."""
    pts = sorted(set(lhs.coeffs) | set(rhs.coeffs))
    c = None
    for m in pts:
        a, b = lhs.coeffs.get(m, Fraction(0)), rhs.coeffs.get(m, Fraction(0))
        if b == 0:
            if a != 0:
                return None
            continue
        if c is None:
            c = a / b
            if c == 0:
                return None
        elif a != c * b:
            return None
    return c if c is not None else Fraction(1)


def theta_certificate(
    rows: Sequence[Vec], k: Sequence[int], pairing, triple, s: tuple[int, int], order: int = 16
) -> Optional[ThetaCertificate]:
    """Build P1, P2 on the first quadrant and verify the identity up to ``order``."""
    ref = _reference_offsets(rows, pairing, triple)
    f1: list = []
    f2: list = []
    for i, (b, ki) in enumerate(zip(rows, k)):
        if ref.get(i) is None:
            continue
        p1, p2 = _form_operators(b, ki, ref[i])
        f1 += p1
        f2 += p2
    P1, P2 = ThetaOperator(tuple(f1)), ThetaOperator(tuple(f2))
    phi = horn_series(GaleArrangement(tuple(rows), tuple(k)), QUADRANT, order)
    lhs = apply_theta(P1, phi)
    base = apply_theta(P2, fs_series(s[0], s[1], order))
    for signs in ((1, 1), (-1, -1), (1, -1), (-1, 1)):
        c = _match_scaled(lhs, base.sign_twist(*signs))
        if c is not None:
            return ThetaCertificate(P1, P2, signs, c, order)
    return None


@lru_cache(maxsize=64)
def fs_closed_form(s1: int, s2: int, cap: int = 4) -> Optional[Reconstruction]:
    """Rational closed form of f_(s1,s2) by reconstruction from its own expansion."""
    return reconstruct_auto(fs_series(s1, s2, 2 * cap + 4), cap=cap)


def _structure(rows: list[Vec], cone: Cone):
    red, pairing = reduced_gale(IntMatrix(rows, cols=2))
    left = [i for i in range(len(rows)) if rows[i] != (0, 0) and all(i not in p for p in pairing)]
    if not left:
        return "lawrence", pairing, None, (0, 0), ""
    if len(left) != 3:
        return None, pairing, None, None, f"{len(left)} unpaired rows (need 0 or 3)"
    n1, n2 = cone.normals
    # s1 goes with the normal orthogonal to the second ray, as (1,0) on the quadrant
    for a in left:
        for b in left:
            if a == b:
                continue
            s1 = _positive_multiple(rows[a], n2)
            s2 = _positive_multiple(rows[b], n1)
            if s1 and s2:
                c = next(i for i in left if i not in (a, b))
                return "cayley", pairing, (a, b, c), (s1, s2), ""
    return None, pairing, None, None, "three unpaired rows are not positive multiples of the cone's inward normals"


def horn_rationality(
    B: Union[IntMatrix, Sequence[Sequence[int]]],
    k: Sequence[int],
    cone: Cone = QUADRANT,
    order: int = 16,
    cap: int = 3,
) -> HornVerdict:
    """Decide rationality of the Horn series with forms <b_i, m> + k_i summed over ``cone``.

    Returns NotRational when a necessary structural condition fails, a
    Rational verdict when the structure passes and either the series itself
    reconstructs or (first quadrant) the theta-operator identity with
    f_(s1,s2) holds on the truncation, and Inconclusive otherwise.
    """
    rows = [tuple(int(x) for x in r) for r in (B.data if isinstance(B, IntMatrix) else B)]
    k = tuple(int(x) for x in k)
    if any(len(r) != 2 for r in rows):
        raise ValueError("Horn data needs rows of length 2")
    if len(rows) != len(k):
        raise ValueError("need one offset per row")
    if sum(r[0] for r in rows) != 0 or sum(r[1] for r in rows) != 0:
        raise ValueError("rows must sum to zero")
    kind, pairing, triple, s, reason = _structure(rows, cone)
    pairing = tuple(pairing)
    if kind is None:
        return HornVerdict(NOT_RATIONAL, reason, pairing=pairing)
    tag = RATIONAL_LAWRENCE if kind == "lawrence" else RATIONAL_CAYLEY

    identity = None
    closed = None
    if cone == QUADRANT:
        identity = theta_certificate(rows, k, pairing, triple, s, order)
        if identity is not None:
            rec = fs_closed_form(*s)
            closed = rec.function if rec is not None else None

    phi = horn_series(GaleArrangement(tuple(rows), k), cone, max(order, 2 * cap + 4))
    off = (math.floor(cone.shift[0]), math.floor(cone.shift[1]))
    rec_phi = reconstruct_auto(phi, cap=cap, offset=off)
    phi_form = rec_phi.function if rec_phi is not None else None

    details = {"order": order, "cap": cap}
    if phi_form is not None or (identity is not None and closed is not None):
        return HornVerdict(tag, "", s, pairing, identity, closed, phi_form, details)
    why = "structure passes but no certificate within the reconstruction schedule"
    return HornVerdict(INCONCLUSIVE, why, s, pairing, identity, closed, None, details)
