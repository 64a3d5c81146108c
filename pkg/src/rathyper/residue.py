"""Exact global residues in one variable over a field of rational functions.

Polynomials in ``t`` carry RationalFunction coefficients in the coefficient
variables z (or x). Sums of local residues over all roots of a squarefree
polynomial are computed as traces in the quotient algebra K[t]/(f), so no
root is ever constructed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .configuration import Configuration, detect_cayley
from .lattice import IntMatrix, hnf
from .poly import RationalFunction, SparsePoly, as_ratfun, ratfun_equal

__all__ = [
    "UniPoly",
    "ResidueSpec",
    "ToricResidue",
    "sylvester_resultant",
    "trace_residue_sum",
    "remainder_residue_sum",
    "toric_residue_r1",
    "residue_derivative_check",
    "residue_at_zero",
    "residue_at_infinity",
    "dehomogenize",
    "spec_from_configuration",
]

Coeff = Union[RationalFunction, SparsePoly, int, Fraction]


class UniPoly:
    """Polynomial in t with RationalFunction coefficients in ``nvars`` variables."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Sequence[Coeff]):
        cs = [as_ratfun(c, nvars) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.nvars = nvars
        self.coeffs = cs

    @classmethod
    def t(cls, nvars: int, k: int = 1) -> "UniPoly":
        return cls(nvars, [0] * k + [1])

    @classmethod
    def const(cls, nvars: int, c: Coeff) -> "UniPoly":
        return cls(nvars, [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> RationalFunction:
        return self.coeffs[-1]

    def coeff(self, k: int) -> RationalFunction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return RationalFunction.const(0, self.nvars)

    def _coerce(self, other) -> "UniPoly":
        return other if isinstance(other, UniPoly) else UniPoly(self.nvars, [other])

    def __add__(self, other) -> "UniPoly":
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return UniPoly(self.nvars, [self.coeff(k) + o.coeff(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.nvars, [-c for c in self.coeffs])

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "UniPoly":
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return UniPoly(self.nvars, [])
        out = [RationalFunction.const(0, self.nvars) for _ in range(self.degree + o.degree + 1)]
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return UniPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly.const(self.nvars, 1)
        for _ in range(k):
            out = out * self
        return out

    def shift(self, k: int) -> "UniPoly":
        """t^k * self for k >= 0."""
        return UniPoly(self.nvars, [0] * k + self.coeffs)

    def derivative(self) -> "UniPoly":
        return UniPoly(self.nvars, [c * k for k, c in enumerate(self.coeffs)][1:])

    def coeff_derivative(self, var: int) -> "UniPoly":
        return UniPoly(self.nvars, [c.derivative(var) for c in self.coeffs])

    def divmod(self, f: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if f.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        r = list(self.coeffs)
        q = [RationalFunction.const(0, self.nvars)] * max(0, len(r) - f.degree)
        inv = f.lc().inverse()
        for k in range(len(r) - 1, f.degree - 1, -1):
            c = r[k]
            if c.is_zero():
                continue
            m = c * inv
            q[k - f.degree] = m
            for j, fc in enumerate(f.coeffs):
                if not fc.is_zero():
                    r[k - f.degree + j] = r[k - f.degree + j] - m * fc
        return UniPoly(self.nvars, q), UniPoly(self.nvars, r[: f.degree])

    def __mod__(self, f: "UniPoly") -> "UniPoly":
        return self.divmod(f)[1]

    def extend_vars(self, extra: int) -> "UniPoly":
        return UniPoly(
            self.nvars + extra,
            [RationalFunction(c.num.extend_vars(extra), c.den.extend_vars(extra)) for c in self.coeffs],
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniPoly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            ratfun_equal(a, b) for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def to_str(self, names: Optional[Sequence[str]] = None) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            cs = c.to_str(names)
            parts.append(f"({cs})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"UniPoly({self.to_str()})"


def _zero(nvars: int) -> RationalFunction:
    return RationalFunction.const(0, nvars)


def determinant(M: Sequence[Sequence[RationalFunction]], nvars: int) -> RationalFunction:
    """Laplace expansion along rows with memoized column subsets (small sparse matrices)."""
    n = len(M)
    if n == 0:
        return RationalFunction.const(1, nvars)
    memo: dict[tuple[int, int], RationalFunction] = {}

    def rec_signed(row: int, mask: int) -> RationalFunction:
        if row == n:
            return RationalFunction.const(1, nvars)
        key = (row, mask)
        if key in memo:
            return memo[key]
        total = _zero(nvars)
        pos = 0  # sign comes from the position among still-free columns
        for c in range(n):
            if mask >> c & 1:
                continue
            e = M[row][c]
            if not e.is_zero():
                sub = rec_signed(row + 1, mask | (1 << c))
                if not sub.is_zero():
                    term = e * sub
                    total = total + term if pos % 2 == 0 else total - term
            pos += 1
        memo[key] = total
        return total

    return rec_signed(0, 0)


def adjugate(M: Sequence[Sequence[RationalFunction]], nvars: int) -> list[list[RationalFunction]]:
    n = len(M)
    adj = [[_zero(nvars) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[M[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            d = determinant(minor, nvars)
            adj[j][i] = d if (i + j) % 2 == 0 else -d
    return adj


def sylvester_resultant(f: UniPoly, g: UniPoly) -> RationalFunction:
    """Determinant of the Sylvester matrix of f and g."""
    m, n = f.degree, g.degree
    if f.is_zero() or g.is_zero():
        return _zero(f.nvars)
    if m == 0 and n == 0:
        raise ValueError("both polynomials are constant")
    size = m + n
    M = [[_zero(f.nvars) for _ in range(size)] for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(reversed(f.coeffs)):
            M[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(reversed(g.coeffs)):
            M[n + i][i + j] = c
    return determinant(M, f.nvars)


def multiplication_matrix(p: UniPoly, f: UniPoly) -> list[list[RationalFunction]]:
    """Matrix of multiplication by p on K[t]/(f) in the basis 1, t, ..., t^(n-1)."""
    n = f.degree
    col = p % f
    cols = []
    for _ in range(n):
        cols.append([col.coeff(k) for k in range(n)])
        col = col.shift(1) % f
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _trace_quotient(g: UniPoly, q: UniPoly, f: UniPoly) -> RationalFunction:
    """Sum over roots of f of g/q, i.e. Tr(M_g adj(M_q)) / det(M_q)."""
    nv = f.nvars
    Mq = multiplication_matrix(q, f)
    det = determinant(Mq, nv)
    if det.is_zero():
        raise ValueError("denominator vanishes at a root of f")
    adj = adjugate(Mq, nv)
    Mg = multiplication_matrix(g, f)
    n = f.degree
    tr = _zero(nv)
    for i in range(n):
        for k in range(n):
            if not Mg[i][k].is_zero() and not adj[k][i].is_zero():
                tr = tr + Mg[i][k] * adj[k][i]
    return tr / det


def is_squarefree(f: UniPoly) -> bool:
    if f.degree <= 1:
        return f.degree == 1
    return not sylvester_resultant(f, f.derivative()).is_zero()


def trace_residue_sum(
    g: UniPoly, f: UniPoly, denom: Optional[UniPoly] = None, t_power: int = 0
) -> RationalFunction:
    """Sum over the roots xi of f of t^t_power * g / (denom * f') at xi, by traces mod f."""
    if f.degree < 1:
        raise ValueError("f must have positive degree")
    if not is_squarefree(f):
        raise ValueError("f is not squarefree")
    if g.is_zero():
        return _zero(f.nvars)
    q = f.derivative()
    if denom is not None:
        q = q * denom
    if t_power >= 0:
        g = g.shift(t_power)
    else:
        q = q.shift(-t_power)
    return _trace_quotient(g, q, f)


def remainder_residue_sum(g: UniPoly, f: UniPoly) -> RationalFunction:
    """Same sum for polynomial g via the remainder: coefficient of t^(n-1) of g mod f over lc(f)."""
    r = g % f
    return r.coeff(f.degree - 1) / f.lc()


@dataclass(frozen=True)
class ResidueSpec:
    """Data of the integrand t^a / (f1^c1 f2^c2) dt/t."""

    f1: UniPoly
    f2: UniPoly
    c: tuple[int, int] = (1, 1)
    a: int = 1
    names: Optional[tuple[str, ...]] = None
    gale: Optional[IntMatrix] = None  # Gale basis used for dehomogenization

    def __post_init__(self):
        if self.f1.nvars != self.f2.nvars:
            raise ValueError("f1 and f2 live in different coefficient rings")
        if min(self.c) < 1:
            raise ValueError("c must be positive")
        object.__setattr__(self, "c", (int(self.c[0]), int(self.c[1])))
        object.__setattr__(self, "a", int(self.a))

    @property
    def nvars(self) -> int:
        return self.f1.nvars

    def support(self, i: int) -> list[int]:
        f = self.f1 if i == 1 else self.f2
        return [k for k, c in enumerate(f.coeffs) if not c.is_zero()]

    def is_interior(self) -> bool:
        s1, s2 = self.support(1), self.support(2)
        lo = self.c[0] * min(s1) + self.c[1] * min(s2)
        hi = self.c[0] * max(s1) + self.c[1] * max(s2)
        return lo < self.a < hi

    def with_(self, c: Optional[tuple[int, int]] = None, a: Optional[int] = None) -> "ResidueSpec":
        return ResidueSpec(self.f1, self.f2, c or self.c, self.a if a is None else a, self.names, self.gale)


def _root_sum(spec: ResidueSpec, j: int) -> RationalFunction:
    """Sum of residues of the integrand at the roots of f_j."""
    fj, fi = (spec.f1, spec.f2) if j == 1 else (spec.f2, spec.f1)
    cj, ci = (spec.c[0], spec.c[1]) if j == 1 else (spec.c[1], spec.c[0])
    nv = spec.nvars
    if cj == 1:
        return trace_residue_sum(UniPoly.const(nv, 1), fj, fi ** ci, spec.a - 1)
    # 1/f^c = (-1)^(c-1)/(c-1)! d^(c-1)/du^(c-1) 1/(f+u) at u = 0
    u = nv
    fj_u = fj.extend_vars(1) + UniPoly.const(nv + 1, RationalFunction.var(u, nv + 1))
    fi_u = fi.extend_vars(1)
    val = trace_residue_sum(UniPoly.const(nv + 1, 1), fj_u, fi_u ** ci, spec.a - 1)
    for _ in range(cj - 1):
        val = val.derivative(u)
    val = val * Fraction((-1) ** (cj - 1), math.factorial(cj - 1))
    return val.substitute(u, 0).drop_var(u)


def _simplify(F: RationalFunction, factors: Sequence[SparsePoly]) -> RationalFunction:
    for p in factors:
        if not p.is_constant() and not p.is_monomial():
            F = F.cancel_factor(p)
    return F


def _polys_of(x: RationalFunction) -> list[SparsePoly]:
    return [x.num] if x.den.is_constant() or x.den.is_monomial() else [x.num, x.den]


def _cancel_candidates(spec: ResidueSpec) -> list[SparsePoly]:
    cands: list[SparsePoly] = []
    for f in (spec.f1, spec.f2):
        if f.degree >= 2:
            cands += _polys_of(sylvester_resultant(f, f.derivative()))
    cands += _polys_of(sylvester_resultant(spec.f1, spec.f2))
    return cands


@dataclass(frozen=True)
class ToricResidue:
    value: RationalFunction  # (-1)^i R_i, taken from R_2 when they disagree
    R1: RationalFunction
    R2: RationalFunction
    interior: bool
    agree: Optional[bool]
    dehomogenized: Optional[RationalFunction] = None


def toric_residue_r1(spec: ResidueSpec, dehomogenize_with: Optional[IntMatrix] = None) -> ToricResidue:
    """R_1 (roots of f2) and R_2 (roots of f1); for interior a, -R_1 = R_2 is asserted."""
    cands = _cancel_candidates(spec)
    R1 = _simplify(_root_sum(spec, 2), cands)
    R2 = _simplify(_root_sum(spec, 1), cands)
    interior = spec.is_interior()
    agree = ratfun_equal(-R1, R2)
    if interior and not agree:
        raise ArithmeticError("(-1)^i R_i disagree for interior a")
    B = dehomogenize_with if dehomogenize_with is not None else spec.gale
    deh = dehomogenize(R2, B) if B is not None else None
    return ToricResidue(R2, R1, R2, interior, agree, deh)


def residue_derivative_check(spec: ResidueSpec, i: int, alpha: int) -> bool:
    """d R(c,a) / d u_(i,alpha) == -c_i R(c + e_i, a + alpha), u_(i,alpha) the t^alpha coefficient of f_i."""
    f = spec.f1 if i == 1 else spec.f2
    coef = f.coeff(alpha)
    if coef.is_zero():
        raise ValueError("f_i has no t^alpha term")
    if not (coef.den.is_constant() and coef.num.is_monomial() and sum(map(abs, coef.num.leading()[0])) == 1):
        raise ValueError("coefficient is not a single variable")
    var = next(k for k, e in enumerate(coef.num.leading()[0]) if e)
    lhs = toric_residue_r1(spec).value.derivative(var) * Fraction(1, coef.num.leading()[1])
    c = (spec.c[0] + 1, spec.c[1]) if i == 1 else (spec.c[0], spec.c[1] + 1)
    rhs = toric_residue_r1(spec.with_(c=c, a=spec.a + alpha)).value * (-spec.c[i - 1])
    return ratfun_equal(lhs, rhs)


def _series_coeff_inverse(D: UniPoly, k: int) -> RationalFunction:
    """[t^k] of 1/D as a power series; requires D(0) != 0."""
    if k < 0:
        return _zero(D.nvars)
    inv0 = D.coeff(0).inverse()
    out = [inv0]
    for j in range(1, k + 1):
        acc = _zero(D.nvars)
        for i in range(1, min(j, D.degree) + 1):
            if not D.coeff(i).is_zero():
                acc = acc + D.coeff(i) * out[j - i]
        out.append(-acc * inv0)
    return out[k]


def _integrand_denominator(spec: ResidueSpec) -> UniPoly:
    return (spec.f1 ** spec.c[0]) * (spec.f2 ** spec.c[1])


def residue_at_zero(spec: ResidueSpec) -> RationalFunction:
    """Res_{t=0} of t^(a-1) / D dt by coefficient extraction."""
    D = _integrand_denominator(spec)
    v = next(k for k, c in enumerate(D.coeffs) if not c.is_zero())
    Dt = UniPoly(D.nvars, D.coeffs[v:])
    return _series_coeff_inverse(Dt, v - spec.a)


def residue_at_infinity(spec: ResidueSpec) -> RationalFunction:
    """Res_{t=oo} of t^(a-1) / D dt, via t = 1/s."""
    D = _integrand_denominator(spec)
    rev = UniPoly(D.nvars, list(reversed(D.coeffs)))
    v = next(k for k, c in enumerate(rev.coeffs) if not c.is_zero())
    rev = UniPoly(D.nvars, rev.coeffs[v:])
    # h(1/s) (-1/s^2) = -s^(N - a - 1 - v) / rev(s)
    return -_series_coeff_inverse(rev, spec.a - D.degree + v)


def dehomogenize(F: RationalFunction, B: IntMatrix) -> RationalFunction:
    """Substitute z_i -> x^(C_i) where B^T C = I, so that z^(nu_j) = x_j for the columns nu_j of B."""
    if F.nvars != B.rows:
        raise ValueError("one Gale row per homogeneous variable required")
    Bt = B.transpose()
    H, U = hnf(Bt)
    k = Bt.rows
    L = [[H.data[i][j] for j in range(k)] for i in range(k)]
    if L != [[int(i == j) for j in range(k)] for i in range(k)]:
        # need the columns of B to span a saturated lattice with unimodular completion
        detL = 1
        for i in range(k):
            detL *= L[i][i]
        if abs(detL) != 1:
            raise ValueError("Gale rows do not generate Z^k; no integral dehomogenization")
    # C = U[:, :k] L^{-1}; L is unimodular lower triangular here
    Linv = _unimodular_lower_inverse(L)
    C = [[sum(U.data[i][t] * Linv[t][j] for t in range(k)) for j in range(k)] for i in range(B.rows)]
    return F.monomial_map(C, k)


def _unimodular_lower_inverse(L: list[list[int]]) -> list[list[int]]:
    k = len(L)
    inv = [[0] * k for _ in range(k)]
    for j in range(k):
        for i in range(k):
            s = (1 if i == j else 0) - sum(L[i][t] * inv[t][j] for t in range(i))
            inv[i][j] = s // L[i][i]
    return inv


def spec_from_configuration(conf: Configuration, c: tuple[int, int] = (1, 1), a: int = 1) -> ResidueSpec:
    """f1, f2 from a Cayley splitting with two groups over one exponent (r = 1).

    Column j contributes z_j t^e with e its exponent in the group; exponents
    are shifted so that each group starts at t^0.
    """
    cay = detect_cayley(conf)
    if cay is None or cay.s != 2 or cay.r != 1:
        raise ValueError("need a Cayley configuration with two groups and r = 1")
    nv = conf.n
    polys = []
    for group, pts in zip(cay.groups, cay.base_points):
        exps = [p[0] for p in pts]
        lo = min(exps)
        coeffs = [RationalFunction.const(0, nv) for _ in range(max(exps) - lo + 1)]
        for col, e in zip(group, exps):
            coeffs[e - lo] = coeffs[e - lo] + RationalFunction.var(col, nv)
        polys.append(UniPoly(nv, coeffs))
    names = tuple(f"z{j + 1}" for j in range(nv))
    return ResidueSpec(polys[0], polys[1], c, a, names, conf.gale)
