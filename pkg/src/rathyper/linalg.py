"""Exact rational linear algebra: nullspaces with a modular pre-filter."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

from . import kernels

Number = Union[int, Fraction]


def integer_rows(rows: Sequence[Sequence[Number]]) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def rref(rows: Sequence[Sequence[Number]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _basis_from_rref(red: list[list[Fraction]], pivots: list[int], ncols: int) -> list[list[Fraction]]:
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        basis.append(v)
    return basis


def nullspace_exact(rows: Sequence[Sequence[Number]], ncols: int) -> list[list[Fraction]]:
    """Canonical (RREF-derived) basis of ``{v : rows @ v = 0}`` by plain elimination."""
    red, piv = rref(rows, ncols)
    return _basis_from_rref(red, piv, ncols)


def _annihilates(rows: Sequence[Sequence[int]], v: Sequence[Fraction]) -> bool:
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    iv = [int(x * den) for x in v]
    nz = [(j, x) for j, x in enumerate(iv) if x]
    return all(sum(r[j] * x for j, x in nz) == 0 for r in rows)


def nullspace(rows: Sequence[Sequence[Number]], ncols: int, prime: int = kernels.DEFAULT_PRIME) -> list[list[Fraction]]:
    """Exact nullspace basis over Q.

    A modular echelon pass picks a maximal independent row subset; the exact
    solve uses only those rows and the result is checked against every row.
    An unlucky prime triggers the plain exact elimination.
    """
    if not rows:
        return _basis_from_rref([], [], ncols)
    irows = integer_rows(rows)
    prows, _ = kernels.echelon_mod_p(irows, prime)
    if len(prows) == ncols:
        # full rank mod p implies full rank over Q
        return []
    sub = [irows[i] for i in prows]
    basis = nullspace_exact(sub, ncols)
    if all(_annihilates(irows, v) for v in basis):
        return basis
    return nullspace_exact(irows, ncols)


def rank(rows: Sequence[Sequence[Number]], ncols: int) -> int:
    return ncols - len(nullspace(rows, ncols))


def primitive_integer_vector(v: Sequence[Fraction]) -> list[int]:
    """Scale a rational vector to a primitive integer vector, first nonzero entry positive."""
    den = 1
    for x in v:
        den = den * x.denominator // math.gcd(den, x.denominator)
    iv = [int(x * den) for x in v]
    g = math.gcd(*iv)
    if g == 0:
        return iv
    first = next(x for x in iv if x)
    if first < 0:
        g = -g
    return [x // g for x in iv]
