"""Lattice configurations, Cayley structures and the codimension-two classifier."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence

from .lattice import IntMatrix, integer_right_equivalent, kernel_basis, smith_invariants

__all__ = [
    "Configuration",
    "AnalysisReport",
    "CayleyStructure",
    "Classification",
    "analyze",
    "detect_cayley",
    "reduced_gale",
    "classify_stable_rational",
    "configuration_from_gale",
    "B1",
    "B2",
    "B3",
]

# reference configurations of the three univariate-algebraic shapes
B1 = IntMatrix([[1, 1], [-1, 0], [0, -1]])
B2 = IntMatrix([[2, 0], [0, 2], [-1, 0], [0, -1], [-1, -1]])
B3 = IntMatrix([[2, 2], [0, 1], [-1, -1], [-1, 0], [0, -2]])


@dataclass(frozen=True)
class Configuration:
    """A d x n integer matrix whose columns are the points.

    Repeated columns are allowed (the two-point-group conventions need
    them). Rank-deficient matrices are rejected.
    """

    A: IntMatrix
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.A.rows == 0 or self.A.cols == 0:
            raise ValueError("empty configuration")
        if self.A.rank != self.A.rows:
            raise ValueError(f"rank-deficient configuration: rank {self.A.rank} < {self.A.rows} rows")
        if self.labels is not None and len(self.labels) != self.A.cols:
            raise ValueError("label count does not match column count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], labels: Optional[Sequence[str]] = None) -> "Configuration":
        return cls(IntMatrix(rows), tuple(labels) if labels is not None else None)

    @property
    def d(self) -> int:
        return self.A.rows

    @property
    def n(self) -> int:
        return self.A.cols

    @property
    def codimension(self) -> int:
        return self.n - self.d

    @cached_property
    def gale(self) -> IntMatrix:
        """Canonical Gale dual (n x codim)."""
        return kernel_basis(self.A)

    def gale_rows(self) -> list[tuple[int, ...]]:
        return list(self.gale.data)


@dataclass(frozen=True)
class AnalysisReport:
    codimension: int
    regular: bool
    pyramid: bool
    lattice_index: int
    zero_rows: tuple[int, ...] = ()


def analyze(conf: Configuration) -> AnalysisReport:
    B = conf.gale
    rows = B.data
    k = B.cols
    regular = all(sum(r[j] for r in rows) == 0 for j in range(k))
    zero = tuple(i for i, r in enumerate(rows) if not any(r))
    index = 1
    for x in smith_invariants(conf.A):
        index *= x
    return AnalysisReport(conf.codimension, regular, bool(zero) and k > 0, index, zero if k else ())


@dataclass(frozen=True)
class CayleyStructure:
    s: int
    r: int
    groups: tuple[tuple[int, ...], ...]
    essential: bool
    lawrence: bool
    base_points: tuple[tuple[tuple[int, ...], ...], ...] = ()

    @property
    def group_sizes(self) -> tuple[int, ...]:
        return tuple(len(g) for g in self.groups)


def _zero_sum_subsets(rows: Sequence[tuple[int, ...]]) -> list[tuple[int, ...]]:
    n = len(rows)
    k = len(rows[0]) if rows else 0
    out = []
    for size in range(2, n + 1):
        for sub in itertools.combinations(range(n), size):
            if all(sum(rows[i][j] for i in sub) == 0 for j in range(k)):
                out.append(sub)
    out.sort()
    return out


def _exact_covers(n: int, subsets: list[tuple[int, ...]]):
    by_min: dict[int, list[tuple[int, ...]]] = {}
    for s in subsets:
        by_min.setdefault(s[0], []).append(s)

    def rec(used: frozenset, acc: list):
        if len(used) == n:
            yield list(acc)
            return
        first = min(set(range(n)) - used)
        for s in by_min.get(first, []):
            if used.isdisjoint(s):
                acc.append(s)
                yield from rec(used | set(s), acc)
                acc.pop()

    yield from rec(frozenset(), [])


def _difference_rank(A: IntMatrix, groups: Sequence[Sequence[int]]) -> int:
    vecs = []
    for g in groups:
        base = A.column(g[0])
        for j in g[1:]:
            vecs.append(tuple(a - b for a, b in zip(A.column(j), base)))
    if not vecs:
        return 0
    return IntMatrix(vecs, cols=A.rows).rank


def _is_essential(A: IntMatrix, groups: Sequence[Sequence[int]], r: int) -> bool:
    s = len(groups)
    if s != r + 1:
        return False
    for size in range(1, s):
        for I in itertools.combinations(range(s), size):
            if _difference_rank(A, [groups[i] for i in I]) < size:
                return False
    return True


def _base_points(A: IntMatrix, groups: Sequence[Sequence[int]]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    # pick rows of A completing the indicator rows to a basis of the row space
    n = A.cols
    span = [tuple(int(j in g) for j in range(n)) for g in groups]
    chosen = []
    for i in range(A.rows):
        cand = span + [A.row(i)]
        if IntMatrix(cand, cols=n).rank == len(cand):
            span = cand
            chosen.append(i)
    return tuple(tuple(tuple(A.data[i][j] for i in chosen) for j in g) for g in groups)


def detect_cayley(conf: Configuration) -> Optional[CayleyStructure]:
    """Find a Cayley splitting of the columns, up to rational row operations.

    A group of columns can carry an indicator row exactly when its Gale rows
    sum to zero. Among all exact covers the search prefers an essential one,
    then a Lawrence one, then the finest; ties go to the lexicographically
    first partition.
    """
    rows = conf.gale_rows()
    n = conf.n
    if conf.codimension == 0:
        return None
    subsets = _zero_sum_subsets(rows)
    best = None
    best_key = None
    for cover in _exact_covers(n, subsets):
        groups = tuple(tuple(g) for g in sorted(cover))
        s = len(groups)
        r = conf.d - s
        if r < 0:
            continue
        essential = _is_essential(conf.A, groups, r)
        lawrence = all(len(g) == 2 for g in groups)
        key = (essential, lawrence, s)
        if best_key is None or key > best_key:
            best_key = key
            best = (groups, s, r, essential, lawrence)
    if best is None:
        return None
    groups, s, r, essential, lawrence = best
    return CayleyStructure(s, r, groups, essential, lawrence, _base_points(conf.A, groups))


def reduced_gale(B: IntMatrix) -> tuple[IntMatrix, list[tuple[int, int]]]:
    """Remove zero rows and a maximum matching of opposite rows.

    Rows equal to ``v`` and ``-v`` form a complete bipartite graph, so a
    maximum matching pairs the k-th occurrence of ``v`` with the k-th
    occurrence of ``-v``; this makes the result canonical.
    """
    rows = B.data
    occ: dict[tuple[int, ...], list[int]] = {}
    for i, r in enumerate(rows):
        occ.setdefault(r, []).append(i)
    pairing: list[tuple[int, int]] = []
    matched: set[int] = set()
    for v, idx in occ.items():
        if not any(v):
            matched.update(idx)
            continue
        neg = tuple(-x for x in v)
        if v < neg or neg not in occ:
            continue
        for i, j in zip(idx, occ[neg]):
            pairing.append((min(i, j), max(i, j)))
            matched.update((i, j))
    pairing.sort()
    left = [rows[i] for i in range(len(rows)) if i not in matched]
    return IntMatrix(left, cols=B.cols), pairing


@dataclass(frozen=True)
class Classification:
    tag: str  # Pyramid | Lawrence | CayleyEssential | NoStableRational
    cayley: Optional[CayleyStructure] = None
    pairing: tuple[tuple[int, int], ...] = ()
    reduced: Optional[IntMatrix] = None
    zero_rows: tuple[int, ...] = ()
    equivalence: Optional[IntMatrix] = None
    details: dict = field(default_factory=dict)


def classify_stable_rational(conf: Configuration) -> Classification:
    """Decide which codimension-two shape admits stable rational solutions."""
    if conf.codimension != 2:
        raise ValueError(f"classification needs codimension 2, got {conf.codimension}")
    B = conf.gale
    zero = tuple(i for i, r in enumerate(B.data) if not any(r))
    if zero:
        return Classification("Pyramid", zero_rows=zero)
    red, pairing = reduced_gale(B)
    if red.rows == 0:
        return Classification("Lawrence", detect_cayley(conf), tuple(pairing), red)
    if red.rows == 3 and red.rank == 2 and all(sum(r[j] for r in red.data) == 0 for j in range(2)):
        eq = integer_right_equivalent(red, B1)
        cay = detect_cayley(conf)
        return Classification(
            "CayleyEssential", cay, tuple(pairing), red,
            equivalence=eq[0] if eq else None,
        )
    return Classification("NoStableRational", None, tuple(pairing), red)


def configuration_from_gale(B: IntMatrix) -> Configuration:
    """A configuration whose Gale dual spans the same lattice as the columns of ``B``."""
    K = kernel_basis(B.transpose())
    return Configuration(K.transpose())
