"""Univariate factorial ratios: terms, Landau step function, integrality and families."""
from __future__ import annotations

import bisect
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

__all__ = [
    "FactorialRatioSpec",
    "LandauProfile",
    "UnivariateClass",
    "ratio_term",
    "landau_profile",
    "is_integral",
    "classify_univariate",
    "hyper_params",
    "valuation_check",
    "legendre_valuation",
    "family_spec",
    "FAMILIES",
]


@dataclass(frozen=True)
class FactorialRatioSpec:
    """A_n = prod (p_i n + k_i)! / prod (q_j n)!"""

    p: tuple[int, ...]
    q: tuple[int, ...]
    k: tuple[int, ...] = ()

    def __post_init__(self):
        p = tuple(int(x) for x in self.p)
        q = tuple(int(x) for x in self.q)
        k = tuple(int(x) for x in self.k) if self.k else (0,) * len(p)
        if any(x <= 0 for x in p + q):
            raise ValueError("p and q entries must be positive integers")
        if len(k) != len(p):
            raise ValueError("need one shift per p entry")
        if any(x < 0 for x in k):
            raise ValueError("shifts must be natural numbers")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "k", k)

    @classmethod
    def make(cls, p: Sequence[int], q: Sequence[int], k: Sequence[int] = ()) -> "FactorialRatioSpec":
        return cls(tuple(p), tuple(q), tuple(k))

    @property
    def balanced(self) -> bool:
        return sum(self.p) == sum(self.q)

    @property
    def height(self) -> int:
        return len(self.q) - len(self.p)

    @property
    def shifted(self) -> bool:
        return any(self.k)

    def central(self) -> "FactorialRatioSpec":
        return FactorialRatioSpec(self.p, self.q)

    def canceled(self) -> "FactorialRatioSpec":
        """Drop shifts and remove entries common to p and q."""
        cp, cq = Counter(self.p), Counter(self.q)
        common = cp & cq
        cp -= common
        cq -= common
        return FactorialRatioSpec(tuple(sorted(cp.elements())), tuple(sorted(cq.elements())))

    def normalized(self) -> "FactorialRatioSpec":
        """Divide all entries by their gcd (shifts dropped)."""
        g = math.gcd(*self.p, *self.q) if (self.p or self.q) else 1
        return FactorialRatioSpec(tuple(sorted(x // g for x in self.p)), tuple(sorted(x // g for x in self.q)))

    def is_empty(self) -> bool:
        return not self.p and not self.q

    def to_json(self) -> dict:
        return {"p": [str(x) for x in self.p], "q": [str(x) for x in self.q], "k": [str(x) for x in self.k]}


def _require_balanced(spec: FactorialRatioSpec) -> None:
    if not spec.balanced:
        raise ValueError(f"unbalanced spec: sum p = {sum(spec.p)} != sum q = {sum(spec.q)}")


def ratio_term(spec: FactorialRatioSpec, n: int) -> Fraction:
    if n < 0:
        raise ValueError("n must be nonnegative")
    num = 1
    for p, k in zip(spec.p, spec.k):
        num *= math.factorial(p * n + k)
    den = 1
    for q in spec.q:
        den *= math.factorial(q * n)
    return Fraction(num, den)


@dataclass(frozen=True)
class LandauProfile:
    """Exact step function on [0,1): value ``values[i]`` on ``[breakpoints[i], breakpoints[i+1])``."""

    breakpoints: tuple[Fraction, ...]
    values: tuple[int, ...]
    height: int

    def value(self, x) -> int:
        x = Fraction(x)
        x -= math.floor(x)
        i = bisect.bisect_right(self.breakpoints, x) - 1
        return self.values[i]

    def left_limit(self, x) -> int:
        """Limit from the left at ``x`` (for x = 1 this is the value near 1)."""
        x = Fraction(x)
        x -= math.floor(x)
        if x == 0:
            return self.values[-1]
        i = bisect.bisect_left(self.breakpoints, x) - 1
        return self.values[i]

    def minimum(self) -> int:
        return min(self.values)

    def intervals(self) -> list[tuple[Fraction, Fraction, int]]:
        ends = list(self.breakpoints[1:]) + [Fraction(1)]
        return list(zip(self.breakpoints, ends, self.values))


def _landau_raw(p: Sequence[int], q: Sequence[int], x: Fraction) -> int:
    # balanced: sum {q x} - sum {p x} = sum floor(p x) - sum floor(q x)
    return sum(math.floor(a * x) for a in p) - sum(math.floor(b * x) for b in q)


def landau_profile(spec: FactorialRatioSpec) -> LandauProfile:
    _require_balanced(spec)
    pts = {Fraction(0)}
    for m in spec.p + spec.q:
        pts.update(Fraction(l, m) for l in range(m))
    pts = sorted(pts)
    bps: list[Fraction] = []
    vals: list[int] = []
    for x in pts:
        v = _landau_raw(spec.p, spec.q, x)
        if vals and vals[-1] == v:
            continue
        bps.append(x)
        vals.append(v)
    return LandauProfile(tuple(bps), tuple(vals), spec.height)


def is_integral(spec: FactorialRatioSpec) -> bool:
    """Landau criterion: all A_n are integers iff the step function is nonnegative."""
    if spec.shifted:
        raise ValueError("integrality criterion applies to unshifted specs")
    return landau_profile(spec).minimum() >= 0


def family_spec(family: int, a: int, b: int) -> FactorialRatioSpec:
    """The three infinite families of integral height-one ratios."""
    if family == 1:
        return FactorialRatioSpec((a + b,), (a, b))
    if family == 2:
        return FactorialRatioSpec((2 * (a + b), b), (a + b, 2 * b, a))
    if family == 3:
        return FactorialRatioSpec((2 * a, 2 * b), (a, b, a + b))
    raise ValueError("family must be 1, 2 or 3")


FAMILIES = (1, 2, 3)
_SYMMETRIC = {1: True, 2: False, 3: True}


@dataclass(frozen=True)
class UnivariateClass:
    tag: str  # Rational | AlgebraicFamily1..3 | AlgebraicSporadicCandidate | NotAlgebraic
    a: Optional[int] = None
    b: Optional[int] = None
    height: int = 0
    integral: Optional[bool] = None
    matches: tuple[tuple[int, int, int], ...] = ()

    @property
    def short(self) -> str:
        return {
            "Rational": "rational",
            "AlgebraicFamily1": "family1",
            "AlgebraicFamily2": "family2",
            "AlgebraicFamily3": "family3",
            "AlgebraicSporadicCandidate": "sporadic-candidate",
            "NotAlgebraic": "not-algebraic",
        }[self.tag]


def _family_matches(target: FactorialRatioSpec) -> list[tuple[int, int, int]]:
    key = (target.p, target.q)
    bound = max(target.p + target.q)
    out = []
    for fam in FAMILIES:
        for a in range(1, bound + 1):
            for b in range(1, bound + 1):
                if math.gcd(a, b) != 1 or (_SYMMETRIC[fam] and a > b):
                    continue
                cand = family_spec(fam, a, b).canceled().normalized()
                if (cand.p, cand.q) == key:
                    out.append((fam, a, b))
    return out


def classify_univariate(spec: FactorialRatioSpec) -> UnivariateClass:
    """Rational / algebraic family / sporadic candidate / not algebraic."""
    _require_balanced(spec)
    red = spec.canceled()
    d = spec.height
    if red.is_empty():
        return UnivariateClass("Rational", height=d, integral=True)
    integral = landau_profile(red).minimum() >= 0
    if d == 1 and integral:
        norm = red.normalized()
        matches = _family_matches(norm)
        if matches:
            fam, a, b = matches[0]
            return UnivariateClass(f"AlgebraicFamily{fam}", a, b, d, True, tuple(matches))
        return UnivariateClass("AlgebraicSporadicCandidate", height=d, integral=True)
    return UnivariateClass("NotAlgebraic", height=d, integral=integral)


def hyper_params(spec: FactorialRatioSpec) -> tuple[list[Fraction], list[Fraction], Fraction]:
    """Pochhammer parameters and scale: A_n = prod (alpha)_n / prod (beta)_n * kappa^n."""
    _require_balanced(spec)
    red = spec.canceled()
    alphas = Counter(Fraction(l, p) for p in red.p for l in range(1, p + 1))
    betas = Counter(Fraction(l, q) for q in red.q for l in range(1, q + 1))
    common = alphas & betas
    alphas -= common
    betas -= common
    kappa = Fraction(1)
    for p in red.p:
        kappa *= Fraction(p) ** p
    for q in red.q:
        kappa /= Fraction(q) ** q
    return sorted(alphas.elements()), sorted(betas.elements()), kappa


def legendre_valuation(m: int, prime: int) -> int:
    """Exponent of ``prime`` in ``m!``."""
    v, pk = 0, prime
    while pk <= m:
        v += m // pk
        pk *= prime
    return v


def valuation_check(spec: FactorialRatioSpec, prime: int, n: int, profile: Optional[LandauProfile] = None) -> bool:
    """Compare v_prime(A_n) with the sum of Landau values at n / prime^nu."""
    if spec.shifted:
        raise ValueError("valuation identity applies to unshifted specs")
    if profile is None:
        profile = landau_profile(spec)
    lhs = sum(legendre_valuation(p * n, prime) for p in spec.p) - sum(legendre_valuation(q * n, prime) for q in spec.q)
    top = max(spec.p + spec.q, default=1) * n
    rhs, pk = 0, prime
    while pk <= top:
        rhs += profile.value(Fraction(n, pk))
        pk *= prime
    return lhs == rhs
