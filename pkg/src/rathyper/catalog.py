"""Named worked examples and their end-to-end checks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .configuration import B2, B3, Configuration, classify_stable_rational
from .lattice import IntMatrix, integer_right_equivalent, kernel_basis
from .poly import RationalFunction, SparsePoly, equal_up_to_monomial, ratfun_equal
from .ratio1d import FactorialRatioSpec, classify_univariate
from .residue import residue_derivative_check, spec_from_configuration, toric_residue_r1
from .series2d import (
    Cone,
    GaleArrangement,
    TruncatedSeries,
    euler_jacobi,
    expand_rational,
    fs_series,
    horn_rationality,
    horn_series,
    minimal_cells,
    reconstruct_auto,
    reconstruct_rational,
    series_from_function,
)

RUNNING_A = IntMatrix([[1, 1, 0, 0, 0], [0, 0, 1, 1, 1], [0, 1, 0, 2, 1]])
RUNNING_B = IntMatrix([[-1, 1], [1, -1], [1, 0], [0, 1], [-1, -1]])
RUNNING_V = (-1, 0, 0, 0, -1)
# 0-based supports of the four minimal cells
RUNNING_SUPPORTS = {frozenset({0, 4}), frozenset({1, 4}), frozenset({1, 2}), frozenset({0, 3})}

LAWRENCE_BLOCK = IntMatrix([[1, 1, 0, 0], [0, 0, 1, 1]])

GESSEL_A = IntMatrix([[1, 1, 1, 0, 0], [0, 0, 0, 1, 1], [0, 1, 2, 0, 3]])
GESSEL_BHAT = IntMatrix([[-1, -1], [-1, 2], [2, -1], [1, 0], [-1, 0]])
GESSEL_V = (-1, 0, 0, 0, -1)
GESSEL_CONE = Cone((0, 0), (2, 1), (1, 2))

U2_HORN = ((-2, 0), (0, -2), (1, 0), (0, 1), (1, 1))
U2_K = (-1, -1, 0, 0, 0)

HEIGHT2_SPEC = FactorialRatioSpec((2, 4), (1, 1, 2, 2))
HEIGHT2_HORN = ((-1, -1), (-2, -2), (1, 0), (2, 0), (0, 1), (0, 2))


def _x() -> tuple[SparsePoly, SparsePoly]:
    return SparsePoly.var(0, 2), SparsePoly.var(1, 2)


def one_over_1mx() -> RationalFunction:
    x1, x2 = _x()
    return RationalFunction(SparsePoly.const(1, 2), 1 - x1 - x2)


def fs22_closed_form() -> RationalFunction:
    x1, x2 = _x()
    return RationalFunction(1 - x1 - x2, 1 - 2 * x1 - 2 * x2 - 2 * x1 * x2 + x1 ** 2 + x2 ** 2)


def f0_closed_form() -> RationalFunction:
    x1, x2 = _x()
    return RationalFunction(SparsePoly.const(1, 2), (1 - x1) * (1 - x2))


def gessel_function() -> RationalFunction:
    x1, x2 = _x()
    return RationalFunction(1 - x1 * x2, 1 - x1 * x2 ** 2 - 3 * x1 * x2 - x1 ** 2 * x2)


def prop75_matrix(s1: int, s2: int) -> IntMatrix:
    return IntMatrix([
        [1, 1, 1, 0, 0, 0, 0],
        [0, 0, 0, 1, 1, 0, 0],
        [0, 0, 0, 0, 0, 1, 1],
        [1, 0, 0, 0, s1, 0, 0],
        [0, 1, 0, 0, 0, 0, s2],
    ])


def u2_coefficient(m: int, n: int) -> Fraction:
    return Fraction(math.factorial(2 * m) * math.factorial(2 * n),
                    math.factorial(m) * math.factorial(n) * math.factorial(m + n))


def u3_coefficient(m: int, n: int) -> Fraction:
    return Fraction(math.factorial(2 * m + 2 * n) * math.factorial(n),
                    math.factorial(m) * math.factorial(2 * n) * math.factorial(m + n))


def u2_series(order: int) -> TruncatedSeries:
    return series_from_function(u2_coefficient, order)


def u3_series(order: int) -> TruncatedSeries:
    return series_from_function(u3_coefficient, order)


def gessel_series(order: int) -> TruncatedSeries:
    """binom(m1 + m2, 2 m1 - m2) on the cone 2 m1 >= m2, 2 m2 >= m1."""
    return series_from_function(lambda a, b: math.comb(a + b, 2 * a - b), order, GESSEL_CONE)


def running_identity(box: int = 20) -> bool:
    """Difference of the two first-quadrant minimal-cell series equals the expansion of 1/(1-x1-x2)."""
    arr = GaleArrangement.from_matrix(RUNNING_B, RUNNING_V)
    cells = {frozenset(c.support): c for c in minimal_cells(arr).cells}
    s1 = horn_series(arr, cells[frozenset({0, 4})], 2 * box)
    s2 = horn_series(arr, cells[frozenset({1, 4})], 2 * box)
    e = expand_rational(one_over_1mx(), (0, 0), box - 1)
    pts = [(i, j) for i in range(box) for j in range(box)]
    return all(e[m] == s1[m] - s2[m] for m in pts)


def u2_recursion_holds(bound: int = 50, shifted: bool = False) -> bool:
    """4A(m,n) = A(m+1,n) + A(m,n+1) for m, n <= bound.

    ``shifted=True`` tests the index-shifted variant 4A(m+1,n+1) = A(m+1,n) + A(m,n+1)
    instead, which already fails at m = n = 0.
    """
    A = u2_coefficient
    s = 1 if shifted else 0
    return all(4 * A(m + s, n + s) == A(m + 1, n) + A(m, n + 1) for m in range(bound + 1) for n in range(bound + 1))


def boundary_sqrt_check(coeffs: list[Fraction]) -> bool:
    """g^2 (1 - 4t) = 1 on the truncation, for g with the given coefficients."""
    N = len(coeffs)
    sq = [sum(coeffs[i] * coeffs[k - i] for i in range(k + 1)) for k in range(N)]
    prod = [sq[k] - (4 * sq[k - 1] if k else 0) for k in range(N)]
    return prod[0] == 1 and all(c == 0 for c in prod[1:])


def _central_binomial(k: int) -> int:
    return math.comb(2 * k, k)


def u2_closed_form_holds(N: int = 20) -> bool:
    """(x + y - 4xy) u2 = x/sqrt(1-4x) + y/sqrt(1-4y) on m, n <= N."""
    A = u2_coefficient

    def a(m, n):
        return A(m, n) if m >= 0 and n >= 0 else 0

    for m in range(N + 1):
        for n in range(N + 1):
            lhs = a(m - 1, n) + a(m, n - 1) - 4 * a(m - 1, n - 1)
            rhs = (_central_binomial(m - 1) if n == 0 and m >= 1 else 0) + (_central_binomial(n - 1) if m == 0 and n >= 1 else 0)
            if lhs != rhs:
                return False
    return True


def _sqrt_1m4t(k: int) -> Fraction:
    """k-th coefficient of sqrt(1 - 4t)."""
    return Fraction(-math.comb(2 * k, k), 2 * k - 1)


def u3_closed_form_holds(N: int = 20) -> bool:
    """(1 - 4x - y) u3 = sqrt(1 - 4x) on m, n <= N."""
    A = u3_coefficient

    def a(m, n):
        return A(m, n) if m >= 0 and n >= 0 else 0

    for m in range(N + 1):
        for n in range(N + 1):
            lhs = a(m, n) - 4 * a(m - 1, n) - a(m, n - 1)
            if lhs != (_sqrt_1m4t(m) if n == 0 else 0):
                return False
    return True


def u3_alternative_form_holds(N: int = 6) -> bool:
    """(x + 4y - xy) u3 = x/sqrt(1-4x) + y/(1-y); false already on the y-axis."""
    A = u3_coefficient

    def a(m, n):
        return A(m, n) if m >= 0 and n >= 0 else 0

    for m in range(N + 1):
        for n in range(N + 1):
            lhs = a(m - 1, n) + 4 * a(m, n - 1) - a(m - 1, n - 1)
            rhs = (_central_binomial(m - 1) if n == 0 and m >= 1 else 0) + (1 if m == 0 and n >= 1 else 0)
            if lhs != rhs:
                return False
    return True


def reconstruction_fails(s: TruncatedSeries, cap: int = 4) -> bool:
    """No (numerator, denominator) box up to degree ``cap`` fits the truncation."""
    for a in range(cap + 1):
        for b in range(1, cap + 1):
            margin = s.order - max(a, b)
            if margin < 1:
                continue
            if reconstruct_rational(s, (a, a), (b, b), margin=min(margin, max(a, b) + 2)) is not None:
                return False
    return True


@dataclass
class ExampleReport:
    name: str
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        return {
            "example": self.name,
            "pass": self.passed,
            "checks": {k: v for k, v in sorted(self.checks.items())},
            "details": {k: v for k, v in sorted(self.details.items())},
        }


def _running() -> ExampleReport:
    rep = ExampleReport("running")
    conf = Configuration(RUNNING_A)
    rep.checks["classification"] = classify_stable_rational(conf).tag == "CayleyEssential"
    K = kernel_basis(RUNNING_A)
    rep.checks["gale-equivalence"] = integer_right_equivalent(K, RUNNING_B, unimodular=True, permute=False) is not None
    arr = GaleArrangement.from_matrix(RUNNING_B, RUNNING_V)
    cells = minimal_cells(arr)
    rep.checks["minimal-cells"] = set(cells.supports) == RUNNING_SUPPORTS
    ok, w = euler_jacobi(arr)
    rep.checks["euler-jacobi"] = ok and w is not None and all(x < 0 for x in arr.forms(w))
    rep.checks["series-identity"] = running_identity(20)
    spec = spec_from_configuration(conf)
    res = toric_residue_r1(spec, RUNNING_B)
    z = [SparsePoly.var(i, 5) for i in range(5)]
    disc = z[0] * z[1] * z[4] - z[1] ** 2 * z[2] - z[0] ** 2 * z[3]
    rep.checks["residue-denominator"] = res.value.den == disc or res.value.den == -disc
    rep.checks["residue-agreement"] = bool(res.agree)
    rep.checks["dehomogenization"] = equal_up_to_monomial(res.dehomogenized, one_over_1mx()) is not None
    rep.checks["derivative-identity"] = all(
        residue_derivative_check(spec, i, al) for i, al in ((1, 0), (1, 1), (2, 0), (2, 1), (2, 2))
    )
    rep.details["residue"] = res.value.to_str(spec.names)
    rep.details["dehomogenized"] = res.dehomogenized.to_str()
    return rep


def _gessel() -> ExampleReport:
    rep = ExampleReport("gessel")
    g = gessel_function()
    e = expand_rational(g, (0, 0), 20)
    ref = gessel_series(20)
    rep.checks["expansion"] = all(e[m] == c for m, c in ref.items()) and set(e.coeffs) <= set(ref.coeffs)
    rec = reconstruct_auto(gessel_series(16))
    rep.checks["reconstruction"] = rec is not None and ratfun_equal(rec.function, g)
    rep.checks["unique"] = rec is not None and rec.dimension == 1
    # Horn series of the enlarged Gale data with offsets v is gessel(x1, -x2)
    arr = GaleArrangement.from_matrix(GESSEL_BHAT, GESSEL_V)
    h = horn_series(arr, GESSEL_CONE, 16)
    rep.checks["horn-series"] = all(h[m] == c * (-1) ** m[1] for m, c in gessel_series(16).items())
    spec = spec_from_configuration(Configuration(GESSEL_A), a=3)
    res = toric_residue_r1(spec, GESSEL_BHAT)
    x1, x2 = SparsePoly.var(0, 2), SparsePoly.var(1, 2)
    twisted = RationalFunction(1 + x1 * x2, 1 - x1 * x2 ** 2 + 3 * x1 * x2 + x1 ** 2 * x2)
    rep.checks["residue"] = bool(res.agree) and equal_up_to_monomial(res.dehomogenized, twisted) is not None
    rep.checks["sublattice"] = _gessel_sublattice_ok(12)
    rep.details["reconstructed"] = rec.function.to_str() if rec else ""
    rep.details["dehomogenized-residue"] = res.dehomogenized.to_str()
    return rep


def _gessel_sublattice_ok(N: int) -> bool:
    """With m1' = 2m1 - m2, m2' = 2m2 - m1 the coefficients are binom(m1' + m2', m1'), on m1' = m2' mod 3."""
    s = gessel_series(3 * N)
    for a in range(N + 1):
        for b in range(N + 1):
            if (a - b) % 3:
                continue
            m1, m2 = (2 * a + b) // 3, (a + 2 * b) // 3
            if s[(m1, m2)] != math.comb(a + b, a):
                return False
    return True


def _fs(name: str, s1: int, s2: int, expected: RationalFunction, bound: int) -> ExampleReport:
    rep = ExampleReport(name)
    s = fs_series(s1, s2, 2 * bound + 6)
    rec = reconstruct_rational(s, (bound, bound), (bound, bound), bound + 2)
    rep.checks["reconstruction"] = rec is not None and ratfun_equal(rec.function, expected)
    rep.checks["unique"] = rec is not None and rec.dimension == 1
    e = expand_rational(expected, (0, 0), 12)
    rep.checks["expansion"] = all(e[m] == c for m, c in fs_series(s1, s2, 12).items())
    if rec is not None:
        rep.details["reconstructed"] = rec.function.to_str()
    return rep


def _lawrence_f0() -> ExampleReport:
    rep = _fs("lawrence-f0", 0, 0, f0_closed_form(), 1)
    v = horn_rationality(((1, 0), (-1, 0), (0, 1), (0, -1)), (0, 0, 0, 0))
    rep.checks["horn-rational"] = v.tag == "RationalLawrence" and v.certificate is not None and ratfun_equal(
        v.certificate, f0_closed_form())
    rep.checks["lawrence-classification"] = classify_stable_rational(Configuration(LAWRENCE_BLOCK)).tag == "Lawrence"
    return rep


def _u2() -> ExampleReport:
    rep = ExampleReport("u2-recursion")
    rep.checks["recursion"] = u2_recursion_holds(50)
    rep.details["shifted-recursion"] = str(u2_recursion_holds(50, shifted=True)).lower()
    rep.checks["boundary"] = boundary_sqrt_check([u2_coefficient(k, 0) for k in range(60)])
    rep.checks["closed-form"] = u2_closed_form_holds(20)
    rep.checks["not-reconstructible"] = reconstruction_fails(u2_series(14))
    rep.checks["horn-not-rational"] = horn_rationality(B2, (0,) * 5).tag == "NotRational" and \
        horn_rationality(U2_HORN, U2_K).tag == "NotRational"
    return rep


def _u3() -> ExampleReport:
    rep = ExampleReport("u3-series")
    rep.checks["closed-form"] = u3_closed_form_holds(20)
    rep.details["closed-form"] = "sqrt(1-4*x)/(1-4*x-y)"
    rep.details["alternative-form-holds"] = str(u3_alternative_form_holds()).lower()
    rep.checks["not-reconstructible"] = reconstruction_fails(u3_series(14))
    rep.checks["horn-not-rational"] = horn_rationality(B3, (0,) * 5).tag == "NotRational"
    return rep


def _height2() -> ExampleReport:
    rep = ExampleReport("height2-nonrational")
    cls = classify_univariate(HEIGHT2_SPEC)
    rep.checks["height"] = HEIGHT2_SPEC.height == 2
    rep.checks["not-algebraic"] = cls.tag == "NotAlgebraic"
    v = horn_rationality(HEIGHT2_HORN, (0, 0, 0, 0, 0, 0))
    rep.checks["horn-not-rational"] = v.tag == "NotRational"
    rep.details["class"] = cls.tag
    rep.details["horn-reason"] = v.reason
    return rep


EXAMPLES: dict[str, Callable[[], ExampleReport]] = {
    "running": _running,
    "gessel": _gessel,
    "fs11": lambda: _fs("fs11", 1, 1, one_over_1mx(), 1),
    "fs22": lambda: _fs("fs22", 2, 2, fs22_closed_form(), 2),
    "lawrence-f0": _lawrence_f0,
    "u2-recursion": _u2,
    "u3-series": _u3,
    "height2-nonrational": _height2,
}


def verify_example(name: str) -> ExampleReport:
    if name not in EXAMPLES:
        raise KeyError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")
    return EXAMPLES[name]()
