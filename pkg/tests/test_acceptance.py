"""Acceptance criteria, one test each, with wall-clock limits.

Each test emits a single ``PASS``/``FAIL`` line; pytest repeats them all in
the terminal summary. Run with ``pytest tests/test_acceptance.py -v`` or
``python3 tests/test_acceptance.py``.
"""
import math
import random
import sys
import time
from fractions import Fraction

import pytest

from rathyper.catalog import (
    GESSEL_BHAT,
    GESSEL_CONE,
    GESSEL_V,
    HEIGHT2_SPEC,
    LAWRENCE_BLOCK,
    RUNNING_A,
    RUNNING_B,
    RUNNING_SUPPORTS,
    RUNNING_V,
    f0_closed_form,
    fs22_closed_form,
    gessel_function,
    gessel_series,
    one_over_1mx,
    reconstruction_fails,
    running_identity,
    u2_coefficient,
    u2_recursion_holds,
    u2_series,
    u3_series,
)
from rathyper.configuration import B2, B3, Configuration, classify_stable_rational, configuration_from_gale
from rathyper.lattice import IntMatrix, integer_right_equivalent, kernel_basis
from rathyper.poly import RationalFunction, SparsePoly, equal_up_to_monomial, ratfun_equal
from rathyper.ratio1d import (
    classify_univariate,
    family_spec,
    is_integral,
    landau_profile,
    valuation_check,
)
from rathyper.residue import (
    ResidueSpec,
    UniPoly,
    is_squarefree,
    residue_at_infinity,
    residue_at_zero,
    residue_derivative_check,
    spec_from_configuration,
    sylvester_resultant,
    toric_residue_r1,
)
from rathyper.series2d import (
    GaleArrangement,
    diagonal,
    dilate_restrict,
    euler_jacobi,
    expand_rational,
    fs_series,
    horn_coefficient,
    horn_rationality,
    horn_series,
    minimal_cells,
    reconstruct_auto,
    series_from_function,
)


# collected for the terminal summary (see conftest.py)
LINES: list[str] = []


def report(n: int, title: str, ok: bool, elapsed: float, limit: float, note: str = "") -> None:
    status = "PASS" if ok and elapsed < limit else "FAIL"
    extra = f" [{note}]" if note else ""
    line = f"{status} criterion {n:>2}: {title} ({elapsed:.2f}s, limit {limit:g}s){extra}"
    LINES.append(line)
    print(line)


def timed(fn):
    t = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t


# 1 -------------------------------------------------------------------------------

def test_criterion_01_gale_dual():
    def run():
        K = kernel_basis(RUNNING_A)
        res = integer_right_equivalent(K, RUNNING_B, unimodular=True)
        return res is not None and abs(res[0].det()) == 1

    ok, dt = timed(run)
    report(1, "Gale dual of the running matrix is unimodularly equivalent to the reference basis", ok, dt, 1)
    assert ok and dt < 1


# 2 -------------------------------------------------------------------------------

def test_criterion_02_classification():
    results = []
    for A, tag in ((RUNNING_A, "CayleyEssential"), (LAWRENCE_BLOCK, "Lawrence"),
                   (configuration_from_gale(B2).A, "NoStableRational")):
        got, dt = timed(lambda: classify_stable_rational(Configuration(A)).tag)
        results.append((got == tag, dt))
    ok = all(r[0] for r in results)
    worst = max(r[1] for r in results)
    report(2, "classification: CayleyEssential / Lawrence / NoStableRational", ok, worst, 1)
    assert ok and worst < 1


# 3 -------------------------------------------------------------------------------

def test_criterion_03_minimal_cells():
    def run():
        arr = GaleArrangement.from_matrix(RUNNING_B, RUNNING_V)
        res = minimal_cells(arr)
        ok_cells = set(res.supports) == RUNNING_SUPPORTS and len(res.cells) == 4
        ej, w = euler_jacobi(arr)
        return ok_cells and ej and w is not None and all(v < 0 for v in arr.forms(w))

    ok, dt = timed(run)
    report(3, "four minimal cells and a verified Euler-Jacobi witness", ok, dt, 1)
    assert ok and dt < 1


# 4 -------------------------------------------------------------------------------

def test_criterion_04_series_identity():
    ok, dt = timed(lambda: running_identity(20))
    report(4, "difference of two cell series equals 1/(1-x1-x2) on a 20x20 box", ok, dt, 5)
    assert ok and dt < 5


# 5 -------------------------------------------------------------------------------

def _phi_printed() -> RationalFunction:
    x1, x2 = SparsePoly.var(0, 2), SparsePoly.var(1, 2)
    return RationalFunction(1 - x1 * x2, 1 + x1 * x2 ** 2 - 3 * x1 * x2 + x1 ** 2 * x2)


def test_criterion_05_closed_forms():
    def run():
        checks = {}
        cases = {
            "fs11": (fs_series(1, 1, 12), one_over_1mx()),
            "fs22": (fs_series(2, 2, 12), fs22_closed_form()),
            "lawrence": (fs_series(0, 0, 12), f0_closed_form()),
            "cone": (gessel_series(16), gessel_function()),
            "cone-signed": (gessel_series(16).sign_twist(-1, -1), _phi_printed()),
        }
        for name, (s, expected) in cases.items():
            assert s.order <= 40
            rec = reconstruct_auto(s, cap=3)
            checks[name] = rec is not None and max(rec.num_bound + rec.den_bound) <= 3 and ratfun_equal(
                rec.function, expected)
        return checks

    checks, dt = timed(run)
    ok = all(checks.values())
    bad = ",".join(k for k, v in checks.items() if not v)
    report(5, "closed forms of fs11, fs22, the Lawrence product and the cone series", ok, dt, 30, bad)
    assert ok and dt < 30


# 6 -------------------------------------------------------------------------------

def _negative_controls() -> dict:
    return {
        "u2-no-fit": reconstruction_fails(u2_series(14), cap=4),
        "u3-no-fit": reconstruction_fails(u3_series(14), cap=4),
        "b2-not-rational": horn_rationality(B2, (0,) * 5).tag == "NotRational",
        "b3-not-rational": horn_rationality(B3, (0,) * 5).tag == "NotRational",
        "u2-recursion-unshifted": u2_recursion_holds(50),
    }


def test_criterion_06_negative_controls():
    checks, dt = timed(_negative_controls)
    ok = all(checks.values())
    report(6, "u2/u3 negative controls and the recursion 4A(m,n)=A(m+1,n)+A(m,n+1)", ok, dt, 30)
    assert ok and dt < 30


@pytest.mark.xfail(strict=True, reason="the index-shifted recursion is false already at m=n=0 (8 != 4)")
def test_criterion_06_shifted_recursion_as_stated():
    ok, dt = timed(lambda: u2_recursion_holds(50, shifted=True))
    A = u2_coefficient
    note = f"4A(1,1)={4 * A(1, 1)} vs A(1,0)+A(0,1)={A(1, 0) + A(0, 1)}"
    report(6, "recursion 4A(m+1,n+1)=A(m+1,n)+A(m,n+1) for m,n<=50", ok, dt, 30, note)
    assert ok


# 7 -------------------------------------------------------------------------------

PRIMES_50 = [p for p in range(2, 51) if all(p % d for d in range(2, int(p ** 0.5) + 1))]


def test_criterion_07_landau_suite():
    def run():
        checks = {"families": True, "valuations": True, "height2": False}
        specs = []
        for s in range(2, 13):
            for a in range(1, s):
                b = s - a
                if math.gcd(a, b) != 1:
                    continue
                for fam in (1, 2, 3):
                    spec = family_spec(fam, a, b)
                    cls = classify_univariate(spec)
                    tag_ok = cls.tag.startswith("AlgebraicFamily") and (
                        (fam, a, b) in cls.matches or (fam, b, a) in cls.matches)
                    if not (is_integral(spec) and cls.height == 1 and tag_ok):
                        checks["families"] = False
                    specs.append(spec)
        specs.append(HEIGHT2_SPEC)
        for spec in specs:
            prof = landau_profile(spec)
            for p in PRIMES_50:
                for n in range(101):
                    if not valuation_check(spec, p, n, prof):
                        checks["valuations"] = False
        checks["height2"] = classify_univariate(HEIGHT2_SPEC).tag == "NotAlgebraic"
        return checks

    checks, dt = timed(run)
    ok = all(checks.values())
    report(7, "Landau families, valuation identity for primes <= 50 and n <= 100, height-2 spec", ok, dt, 60,
           ",".join(k for k, v in checks.items() if not v))
    assert ok and dt < 60


# 8 -------------------------------------------------------------------------------

def test_criterion_08_residues():
    def run():
        spec = spec_from_configuration(Configuration(RUNNING_A))
        res = toric_residue_r1(spec, RUNNING_B)
        z = [SparsePoly.var(i, 5) for i in range(5)]
        disc = z[0] * z[1] * z[4] - z[1] ** 2 * z[2] - z[0] ** 2 * z[3]
        return {
            "denominator": res.value.den in (disc, -disc),
            "dehomogenized": equal_up_to_monomial(res.dehomogenized, one_over_1mx()) is not None,
            "agreement": bool(res.agree),
            "derivatives": all(residue_derivative_check(spec, i, al)
                               for i, al in ((1, 0), (1, 1), (2, 0), (2, 1), (2, 2))),
        }

    checks, dt = timed(run)
    ok = all(checks.values())
    report(8, "residue denominator, dehomogenization, agreement and derivative identity", ok, dt, 60,
           ",".join(k for k, v in checks.items() if not v))
    assert ok and dt < 60


# 9 -------------------------------------------------------------------------------

def test_criterion_09_uniqueness():
    def run():
        arr = GaleArrangement.from_matrix(RUNNING_B, RUNNING_V)
        cells = {frozenset(c.support): c for c in minimal_cells(arr).cells}
        s1 = horn_series(arr, cells[frozenset({0, 4})], 16)
        s2 = horn_series(arr, cells[frozenset({1, 4})], 16)
        diff = series_from_function(lambda a, b: s1[(a, b)] - s2[(a, b)], 12)
        r1 = reconstruct_auto(diff, cap=3)
        cone = horn_series(GaleArrangement.from_matrix(GESSEL_BHAT, GESSEL_V), GESSEL_CONE, 16)
        r2 = reconstruct_auto(cone, cap=3)
        return r1 is not None and r1.dimension == 1 and r2 is not None and r2.dimension == 1

    ok, dt = timed(run)
    report(9, "verified reconstruction spaces are one-dimensional", ok, dt, 30)
    assert ok and dt < 30


# 10 ------------------------------------------------------------------------------

def _prop_recurrences(rng: random.Random) -> bool:
    for _ in range(100):
        rows = [(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(3)]
        rows.append((-sum(r[0] for r in rows), -sum(r[1] for r in rows)))
        k = [rng.randint(-3, 3) for _ in rows]
        for _ in range(5):
            m = (rng.randint(-4, 4), rng.randint(-4, 4))
            j = rng.randint(0, 1)
            ls = [b[0] * m[0] + b[1] * m[1] + c for b, c in zip(rows, k)]
            if any((l < 0) != (l + b[j] < 0) for l, b in zip(ls, rows)):
                continue
            m1 = (m[0] + (j == 0), m[1] + (j == 1))
            ratio = Fraction(1)
            for l, b in zip(ls, rows):
                l1 = l + b[j]
                if l >= 0:
                    ratio *= Fraction(math.factorial(l), math.factorial(l1))
                else:
                    ratio *= Fraction((-1) ** abs(l1 - l) * math.factorial(-l1 - 1), math.factorial(-l - 1))
            if horn_coefficient(rows, k, m1) != horn_coefficient(rows, k, m) * ratio:
                return False
    return True


def _prop_convolution(rng: random.Random) -> bool:
    for _ in range(100):
        num = SparsePoly(2, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-4, 4) for _ in range(3)})
        den = SparsePoly(2, {(0, 0): rng.choice([-2, -1, 1, 2])} | {
            (rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-4, 4) for _ in range(2)})
        if den.is_zero():
            continue
        f = RationalFunction(num, den)
        from rathyper.series2d.geometry import convex_hull

        v = rng.choice(convex_hull(list(f.den.terms)))
        s = expand_rational(f, v, 6)
        for m in s.region_points():
            if all(s.known((m[0] - e[0], m[1] - e[1])) for e in f.den.terms):
                val = sum(c * s[(m[0] - e[0], m[1] - e[1])] for e, c in f.den.terms.items())
                if val != f.num.terms.get(m, 0):
                    return False
    return True


def _prop_closure(rng: random.Random) -> bool:
    def poly(deg):
        while True:
            cs = [rng.randint(-5, 5) for _ in range(deg)] + [rng.choice([-2, -1, 1, 2])]
            if cs[0] == 0:
                continue
            f = UniPoly(0, [RationalFunction.const(c, 0) for c in cs])
            if is_squarefree(f):
                return f

    done = 0
    while done < 100:
        f1, f2 = poly(rng.randint(1, 3)), poly(rng.randint(1, 3))
        if sylvester_resultant(f1, f2).is_zero():
            continue
        spec = ResidueSpec(f1, f2, (rng.randint(1, 2), rng.randint(1, 2)), rng.randint(-1, 6))
        res = toric_residue_r1(spec)
        if not (res.R1 + res.R2 + residue_at_zero(spec) + residue_at_infinity(spec)).is_zero():
            return False
        done += 1
    return True


def _prop_dilation(rng: random.Random) -> bool:
    for _ in range(100):
        table = {(rng.randint(0, 12), rng.randint(0, 12)): rng.randint(-9, 9) for _ in range(30)}
        s = series_from_function(lambda a, b: table.get((a, b), a * b - 3), 12)
        r = rng.randint(1, 3)
        lhs = diagonal(dilate_restrict(s, (r, r)), (1, 1))
        if lhs != diagonal(s, (1, 1))[::r][: len(lhs)]:
            return False
    return True


def _prop_classification(rng: random.Random) -> bool:
    corpus = [(RUNNING_A, "CayleyEssential"), (LAWRENCE_BLOCK, "Lawrence"),
              (configuration_from_gale(B2).A, "NoStableRational"), (configuration_from_gale(B3).A, "NoStableRational")]
    for _ in range(100):
        A, tag = rng.choice(corpus)
        d = A.rows
        G = [[int(i == j) for j in range(d)] for i in range(d)]
        for _ in range(4):
            i, j = rng.sample(range(d), 2) if d > 1 else (0, 0)
            c = rng.randint(-3, 3)
            if i != j:
                G[i] = [x + c * y for x, y in zip(G[i], G[j])]
        perm = list(range(A.cols))
        rng.shuffle(perm)
        A2 = (IntMatrix(G) @ A).select_columns(perm)
        if classify_stable_rational(Configuration(A2)).tag != tag:
            return False
    return True


def test_criterion_10_property_suites():
    rng = random.Random(20261015)

    def run():
        return {
            "recurrences": _prop_recurrences(rng),
            "convolution": _prop_convolution(rng),
            "residue-closure": _prop_closure(rng),
            "dilation-diagonal": _prop_dilation(rng),
            "classification-invariance": _prop_classification(rng),
        }

    checks, dt = timed(run)
    ok = all(checks.values())
    report(10, "property suites on 100 random instances each", ok, dt, 300,
           ",".join(k for k, v in checks.items() if not v))
    assert ok and dt < 300


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
