"""Integer matrices, Hermite/Smith normal forms and lattice kernels."""
from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

__all__ = [
    "IntMatrix",
    "hnf",
    "kernel_basis",
    "smith_invariants",
    "is_primitive",
    "is_unimodular",
    "integer_right_equivalent",
    "xgcd",
]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``a*x + b*y = g``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


class IntMatrix:
    """Immutable integer matrix stored row-major.

    Entries are Python ints so nothing ever overflows. ``rank`` is computed
    lazily and cached.
    """

    __slots__ = ("rows", "cols", "data", "_rank")

    def __init__(self, data: Iterable[Iterable[int]], cols: Optional[int] = None):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if cols is None:
            if not rows:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows[0])
        for row in rows:
            if len(row) != cols:
                raise ValueError("ragged matrix rows")
        self.rows = len(rows)
        self.cols = cols
        self.data = rows
        self._rank: Optional[int] = None

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int) -> "IntMatrix":
        return cls([[col[i] for col in columns] for i in range(nrows)], cols=len(columns))

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.data[i][j]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.cols == other.cols and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.cols, self.data))

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.data]!r})"

    def row(self, i: int) -> tuple[int, ...]:
        return self.data[i]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.columns(), cols=self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        ocols = other.columns()
        return IntMatrix(
            [[sum(a * b for a, b in zip(r, c)) for c in ocols] for r in self.data],
            cols=other.cols,
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = _rank(self.data, self.cols)
        return self._rank

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return _bareiss_det([list(r) for r in self.data])

    def select_rows(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix([self.data[i] for i in idx], cols=self.cols)

    def select_columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix([[r[j] for j in idx] for r in self.data], cols=len(idx))


def _rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(rank + 1, len(m)):
            if m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H = M @ U`` in column echelon
    form: pivots are positive and the entries to the left of a pivot lie in
    ``[0, pivot)``. Zero columns of ``H`` are at the right.
    """
    m, n = M.rows, M.cols
    H = [list(r) for r in M.data]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j: int, k: int, q: int) -> None:
        # column j -= q * column k
        if q:
            for r in H:
                r[j] -= q * r[k]
            for r in U:
                r[j] -= q * r[k]

    def swap(j: int, k: int) -> None:
        if j != k:
            for r in H:
                r[j], r[k] = r[k], r[j]
            for r in U:
                r[j], r[k] = r[k], r[j]

    def negate(j: int) -> None:
        for r in H:
            r[j] = -r[j]
        for r in U:
            r[j] = -r[j]

    pc = 0
    pivots: list[tuple[int, int]] = []
    for i in range(m):
        if pc == n:
            break
        while True:
            nz = [j for j in range(pc, n) if H[i][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(H[i][j]))
            swap(pc, jmin)
            if len(nz) == 1:
                break
            for j in range(pc + 1, n):
                if H[i][j]:
                    colop(j, pc, H[i][j] // H[i][pc])
        if H[i][pc] == 0:
            continue
        if H[i][pc] < 0:
            negate(pc)
        for j in range(pc):
            colop(j, pc, H[i][j] // H[i][pc])
        pivots.append((i, pc))
        pc += 1
    return IntMatrix(H, cols=n), IntMatrix(U, cols=n)


def kernel_basis(A: IntMatrix) -> IntMatrix:
    """Canonical basis of the integer kernel ``{v : A v = 0}`` as columns.

    The basis is the column Hermite form of the kernel lattice, so it is
    deterministic. Returns an ``n x 0`` matrix when the kernel is trivial.
    """
    H, U = hnf(A)
    n = A.cols
    zero_cols = [j for j in range(n) if all(H.data[i][j] == 0 for i in range(H.rows))]
    if not zero_cols:
        return IntMatrix([[] for _ in range(n)], cols=0)
    K = U.select_columns(zero_cols)
    Kh, _ = hnf(K)
    return Kh


def smith_invariants(M: IntMatrix) -> list[int]:
    """Nonzero invariant factors of ``M`` (in divisibility order)."""
    a = [list(r) for r in M.data]
    m, n = M.rows, M.cols
    out: list[int] = []
    t = 0
    while t < min(m, n):
        nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n) if a[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        a[t], a[pi] = a[pi], a[t]
        for r in a:
            r[t], r[pj] = r[pj], r[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    dirty = True
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for r in a:
                        r[j] -= q * r[t]
                if a[t][j]:
                    dirty = True
            if dirty:
                nz = [(abs(a[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                      if a[i][j] and (i == t or j == t)]
                _, pi, pj = min(nz)
                a[t], a[pi] = a[pi], a[t]
                for r in a:
                    r[t], r[pj] = r[pj], r[t]
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        out.append(abs(a[t][t]))
        t += 1
    return out


def is_primitive(B: IntMatrix) -> bool:
    """True when the columns of ``B`` span a saturated sublattice."""
    if B.cols == 0:
        return True
    inv = smith_invariants(B)
    return len(inv) == B.cols and all(x == 1 for x in inv)


def is_unimodular(U: IntMatrix) -> bool:
    return U.rows == U.cols and abs(U.det()) == 1


def _match_rows(target: Sequence[tuple[int, ...]], image: Sequence[tuple[int, ...]]) -> Optional[list[int]]:
    """perm with target[i] == image[perm[i]], or None."""
    pool: dict[tuple[int, ...], list[int]] = {}
    for j, r in enumerate(image):
        pool.setdefault(r, []).append(j)
    perm = []
    for r in target:
        idx = pool.get(r)
        if not idx:
            return None
        perm.append(idx.pop(0))
    return perm


def _complement(v: tuple[int, int]) -> tuple[int, int]:
    # w with det[[v],[w]] = 1 for primitive v
    g, x, y = xgcd(v[0], v[1])
    assert g == 1
    return (-y, x)


def _primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = math.gcd(*v)
    return tuple(x // g for x in v) if g else tuple(v)


def integer_right_equivalent(
    B: IntMatrix, C: IntMatrix, unimodular: bool = False, permute: bool = True
) -> Optional[tuple[IntMatrix, list[int]]]:
    """Find ``U`` (2x2, integer, nonsingular) and ``perm`` with ``B[i] = C[perm[i]] @ U``.

    With ``unimodular=True`` only ``|det U| = 1`` is accepted; with
    ``permute=False`` the row order must match as given. Returns ``None`` when
    no such pair exists.
    """
    if B.cols != 2 or C.cols != 2 or B.rows != C.rows:
        raise ValueError("expected two n x 2 matrices")
    rb, rc = B.rank, C.rank
    if rb != rc:
        return None
    brows, crows = list(B.data), list(C.data)

    def check(U: list[list[Fraction]]) -> Optional[tuple[IntMatrix, list[int]]]:
        if any(x.denominator != 1 for r in U for x in r):
            return None
        Ui = [[int(x) for x in r] for r in U]
        d = Ui[0][0] * Ui[1][1] - Ui[0][1] * Ui[1][0]
        if d == 0 or (unimodular and abs(d) != 1):
            return None
        image = [(c[0] * Ui[0][0] + c[1] * Ui[1][0], c[0] * Ui[0][1] + c[1] * Ui[1][1]) for c in crows]
        if permute:
            perm = _match_rows(brows, image)
        else:
            perm = list(range(len(brows))) if image == brows else None
        if perm is None:
            return None
        return IntMatrix(Ui), perm

    if rb == 0:
        return IntMatrix.identity(2), list(range(B.rows))

    if rb == 2:
        i0 = 0
        while brows[i0] == (0, 0):
            i0 += 1
        i1 = next(i for i in range(i0 + 1, B.rows)
                  if brows[i0][0] * brows[i][1] - brows[i0][1] * brows[i][0] != 0)
        cand = itertools.permutations(range(C.rows), 2) if permute else [(i0, i1)]
        for j0, j1 in cand:
            c0, c1 = crows[j0], crows[j1]
            det = c0[0] * c1[1] - c0[1] * c1[0]
            if det == 0:
                continue
            # U = [c0; c1]^{-1} [b0; b1]
            inv = [[Fraction(c1[1], det), Fraction(-c0[1], det)],
                   [Fraction(-c1[0], det), Fraction(c0[0], det)]]
            b0, b1 = brows[i0], brows[i1]
            U = [[inv[r][0] * b0[k] + inv[r][1] * b1[k] for k in range(2)] for r in range(2)]
            res = check(U)
            if res is not None:
                return res
        return None

    # rank one: B rows are lam_i * beta, C rows are kap_j * gamma
    beta = _primitive(next(r for r in brows if r != (0, 0)))
    gamma = _primitive(next(r for r in crows if r != (0, 0)))

    def scal(r: tuple[int, ...], d: tuple[int, ...]) -> int:
        return r[0] // d[0] if d[0] else r[1] // d[1]

    lam = [scal(r, beta) for r in brows]
    kap = [scal(r, gamma) for r in crows]
    ib = next(i for i, x in enumerate(lam) if x)
    for j, k in enumerate(kap):
        if not k or (not permute and j != ib) or lam[ib] % k:
            continue
        t = lam[ib] // k
        if unimodular and abs(t) != 1:
            continue
        G = [list(gamma), list(_complement(gamma))]
        T = [[t * beta[0], t * beta[1]], list(_complement(beta))]
        # U = G^{-1} T, det G = 1
        Ginv = [[G[1][1], -G[0][1]], [-G[1][0], G[0][0]]]
        U = [[Fraction(Ginv[r][0] * T[0][c] + Ginv[r][1] * T[1][c]) for c in range(2)] for r in range(2)]
        res = check(U)
        if res is not None:
            return res
    return None
