"""Pure-Python modular echelon kernel (fallback for the compiled one)."""
from __future__ import annotations

from typing import Sequence

DEFAULT_PRIME = 2147483647


def echelon_mod_p(rows: Sequence[Sequence[int]], p: int = DEFAULT_PRIME) -> tuple[list[int], list[int]]:
    """Row echelon of an integer matrix modulo ``p``.

    Rows are processed in order; returns ``(pivot_rows, pivot_cols)`` where
    ``pivot_rows`` are the indices of rows independent of their predecessors.
    """
    if not rows:
        return [], []
    n = len(rows[0])
    basis: list[list[int]] = []
    pcols: list[int] = []
    prows: list[int] = []
    for idx, row in enumerate(rows):
        cur = [x % p for x in row]
        for b, pc in zip(basis, pcols):
            f = cur[pc]
            if f:
                cur = [(x - f * y) % p for x, y in zip(cur, b)]
        pc = next((j for j, x in enumerate(cur) if x), -1)
        if pc < 0:
            continue
        inv = pow(cur[pc], p - 2, p)
        basis.append([(x * inv) % p for x in cur])
        pcols.append(pc)
        prows.append(idx)
        if len(basis) == n:
            break
    return prows, pcols
