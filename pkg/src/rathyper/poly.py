"""Sparse Laurent polynomials with integer coefficients and rational functions.

Terms are kept in a dict keyed by exponent tuples. Rational functions are
never reduced by a multivariate gcd: only integer content and monomial
factors of the denominator are normalized, and equality is decided by
cross-multiplication.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

__all__ = ["SparsePoly", "RationalFunction", "ratfun_equal", "as_ratfun", "equal_up_to_monomial"]

Exp = tuple[int, ...]


def _add_exp(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


class SparsePoly:
    """Laurent polynomial in ``nvars`` variables over the integers."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Mapping[Exp, int]] = None):
        self.nvars = nvars
        clean: dict[Exp, int] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError("exponent length does not match variable count")
                if c:
                    clean[tuple(e)] = int(c)
        self.terms = clean

    @classmethod
    def _raw(cls, nvars: int, terms: dict[Exp, int]) -> "SparsePoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        return p

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "SparsePoly":
        return cls._raw(nvars, {})

    @classmethod
    def const(cls, c: int, nvars: int) -> "SparsePoly":
        return cls._raw(nvars, {(0,) * nvars: int(c)} if c else {})

    @classmethod
    def var(cls, i: int, nvars: int) -> "SparsePoly":
        e = [0] * nvars
        e[i] = 1
        return cls._raw(nvars, {tuple(e): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], coeff: int = 1) -> "SparsePoly":
        return cls._raw(len(exp), {tuple(exp): int(coeff)} if coeff else {})

    # -- basic queries -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not any(next(iter(self.terms))))

    def constant_value(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def sorted_terms(self) -> list[tuple[Exp, int]]:
        """Terms in descending lexicographic order of exponents."""
        return sorted(self.terms.items(), reverse=True)

    def leading(self) -> tuple[Exp, int]:
        e = max(self.terms)
        return e, self.terms[e]

    def content(self) -> int:
        """Positive gcd of the coefficients (0 for the zero polynomial)."""
        return math.gcd(*self.terms.values()) if self.terms else 0

    def min_exponents(self) -> Exp:
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self) -> Exp:
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def degree(self, i: int) -> int:
        return max(e[i] for e in self.terms) if self.terms else -1

    def total_degree(self) -> int:
        return max(sum(e) for e in self.terms) if self.terms else -1

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            return self.terms == ({(0,) * self.nvars: other} if other else {})
        if not isinstance(other, SparsePoly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"SparsePoly({self.nvars}, {dict(self.sorted_terms())!r})"

    # -- arithmetic ------------------------------------------------------------
    def _coerce(self, other: Union["SparsePoly", int]) -> "SparsePoly":
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return SparsePoly.const(other, self.nvars)
        raise TypeError(f"cannot combine SparsePoly with {type(other).__name__}")

    def __add__(self, other):
        if isinstance(other, (RationalFunction, Fraction)):
            return NotImplemented
        o = self._coerce(other)
        t = dict(self.terms)
        for e, c in o.terms.items():
            v = t.get(e, 0) + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return SparsePoly._raw(self.nvars, t)

    __radd__ = __add__

    def __neg__(self) -> "SparsePoly":
        return SparsePoly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (RationalFunction, Fraction)):
            return NotImplemented
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (RationalFunction, Fraction)):
            return NotImplemented
        if isinstance(other, int):
            if other == 0:
                return SparsePoly.zero(self.nvars)
            return SparsePoly._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        o = self._coerce(other)
        if len(o.terms) < len(self.terms):
            a, b = o.terms, self.terms
        else:
            a, b = self.terms, o.terms
        t: dict[Exp, int] = {}
        get = t.get
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                t[e] = get(e, 0) + ca * cb
        return SparsePoly._raw(self.nvars, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SparsePoly":
        if k < 0:
            if self.is_monomial():
                (e, c), = self.terms.items()
                if abs(c) != 1:
                    raise ValueError("negative power of a non-unit monomial")
                return SparsePoly._raw(self.nvars, {tuple(-k * x for x in e): c ** (-k)})
            raise ValueError("negative power of a non-monomial")
        result = SparsePoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def mul_monomial(self, exp: Sequence[int], coeff: int = 1) -> "SparsePoly":
        return SparsePoly._raw(
            self.nvars, {_add_exp(e, tuple(exp)): c * coeff for e, c in self.terms.items()} if coeff else {}
        )

    def scale_down(self, g: int) -> "SparsePoly":
        """Divide all coefficients by ``g`` (must divide exactly)."""
        out = {}
        for e, c in self.terms.items():
            q, r = divmod(c, g)
            if r:
                raise ArithmeticError("inexact integer division")
            out[e] = q
        return SparsePoly._raw(self.nvars, out)

    def derivative(self, i: int) -> "SparsePoly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return SparsePoly._raw(self.nvars, out)

    def evaluate(self, point: Sequence[Union[int, Fraction]]) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            v = Fraction(c)
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def substitute(self, i: int, value: int) -> "SparsePoly":
        """Set variable ``i`` to an integer (variable stays, with exponent 0)."""
        out: dict[Exp, int] = {}
        for e, c in self.terms.items():
            if e[i] < 0 and value == 0:
                raise ZeroDivisionError("negative exponent at zero")
            ne = list(e)
            ne[i] = 0
            ne = tuple(ne)
            v = c * (Fraction(value) ** e[i] if e[i] < 0 else value ** e[i])
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ArithmeticError("substitution leaves the integers")
                v = int(v)
            out[ne] = out.get(ne, 0) + v
        return SparsePoly._raw(self.nvars, {e: c for e, c in out.items() if c})

    def monomial_map(self, images: Sequence[Sequence[int]], new_nvars: int) -> "SparsePoly":
        """Substitute ``z_j -> x^{images[j]}`` (Laurent monomials)."""
        out: dict[Exp, int] = {}
        for e, c in self.terms.items():
            ne = [0] * new_nvars
            for k, img in zip(e, images):
                if k:
                    for t in range(new_nvars):
                        ne[t] += k * img[t]
            key = tuple(ne)
            out[key] = out.get(key, 0) + c
        return SparsePoly._raw(new_nvars, {e: c for e, c in out.items() if c})

    def extend_vars(self, extra: int) -> "SparsePoly":
        pad = (0,) * extra
        return SparsePoly._raw(self.nvars + extra, {e + pad: c for e, c in self.terms.items()})

    def drop_var(self, i: int) -> "SparsePoly":
        """Remove variable ``i``; it must not occur."""
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                raise ValueError("variable still occurs")
            out[e[:i] + e[i + 1:]] = c
        return SparsePoly._raw(self.nvars - 1, out)

    def divexact(self, other: "SparsePoly") -> Optional["SparsePoly"]:
        """Exact quotient ``self / other`` in the Laurent ring, or ``None``."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return SparsePoly.zero(self.nvars)
        # shift both into the polynomial ring with no monomial content
        so = other.min_exponents()
        ss = self.min_exponents()
        d = other.mul_monomial(tuple(-x for x in so))
        rem = dict(self.mul_monomial(tuple(-x for x in ss)).terms)
        lt, lc = d.leading()
        dterms = list(d.terms.items())
        quot: dict[Exp, int] = {}
        while rem:
            m = max(rem)
            c = rem[m]
            if any(a < b for a, b in zip(m, lt)):
                return None
            q, r = divmod(c, lc)
            if r:
                return None
            qe = tuple(a - b for a, b in zip(m, lt))
            quot[qe] = q
            for e, dc in dterms:
                k = _add_exp(qe, e)
                v = rem.get(k, 0) - q * dc
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        shift = tuple(a - b for a, b in zip(ss, so))
        return SparsePoly._raw(self.nvars, quot).mul_monomial(shift)

    # -- formatting ----------------------------------------------------------
    def to_str(self, names: Optional[Sequence[str]] = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (n if k == 1 else f"{n}^{k}") if k >= 0 else f"{n}^({k})"
                for n, k in zip(names, e) if k
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    def __str__(self) -> str:
        return self.to_str()

    def to_json(self) -> list:
        return [[[str(x) for x in e], str(c)] for e, c in self.sorted_terms()]

    @classmethod
    def from_json(cls, nvars: int, data: Iterable) -> "SparsePoly":
        return cls(nvars, {tuple(int(x) for x in e): int(c) for e, c in data})


class RationalFunction:
    """Quotient of two ``SparsePoly`` values, compared by cross-multiplication.

    On construction the common integer content is removed, the denominator
    loses its monomial factor (moved into the Laurent numerator) and its
    lexicographically leading coefficient is made positive.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SparsePoly, den: Optional[SparsePoly] = None, _normalize: bool = True):
        if den is None:
            den = SparsePoly.const(1, num.nvars)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.nvars != den.nvars:
            raise ValueError("variable count mismatch")
        if _normalize:
            num, den = _normalize_pair(num, den)
        self.num = num
        self.den = den

    @property
    def nvars(self) -> int:
        return self.num.nvars

    @classmethod
    def const(cls, c: Union[int, Fraction], nvars: int) -> "RationalFunction":
        c = Fraction(c)
        return cls(SparsePoly.const(c.numerator, nvars), SparsePoly.const(c.denominator, nvars))

    @classmethod
    def var(cls, i: int, nvars: int) -> "RationalFunction":
        return cls(SparsePoly.var(i, nvars))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant() and abs(self.den.constant_value()) == 1

    def _coerce(self, other) -> "RationalFunction":
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, SparsePoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction.const(other, self.nvars)
        raise TypeError(f"cannot combine RationalFunction with {type(other).__name__}")

    def __add__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if o.num.is_zero():
            return self
        if self.num.is_zero():
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _normalize=False)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RationalFunction":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RationalFunction":
        o = self._coerce(other)
        if self.num.is_zero() or o.num.is_zero():
            return RationalFunction(SparsePoly.zero(self.nvars))
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other) -> "RationalFunction":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k)

    def derivative(self, i: int) -> "RationalFunction":
        n, d = self.num, self.den
        dn, dd = n.derivative(i), d.derivative(i)
        if dd.is_zero():
            return RationalFunction(dn, d)
        return RationalFunction(dn * d - n * dd, d * d)

    def evaluate(self, point: Sequence[Union[int, Fraction]]) -> Fraction:
        return self.num.evaluate(point) / self.den.evaluate(point)

    def substitute(self, i: int, value: int) -> "RationalFunction":
        return RationalFunction(self.num.substitute(i, value), self.den.substitute(i, value))

    def monomial_map(self, images: Sequence[Sequence[int]], new_nvars: int) -> "RationalFunction":
        return RationalFunction(self.num.monomial_map(images, new_nvars), self.den.monomial_map(images, new_nvars))

    def drop_var(self, i: int) -> "RationalFunction":
        return RationalFunction(self.num.drop_var(i), self.den.drop_var(i))

    def cancel_factor(self, factor: SparsePoly) -> "RationalFunction":
        """Remove common powers of ``factor`` from numerator and denominator."""
        n, d = self.num, self.den
        while True:
            qn = n.divexact(factor)
            if qn is None:
                break
            qd = d.divexact(factor)
            if qd is None:
                break
            n, d = qn, qd
        return RationalFunction(n, d)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction, SparsePoly)):
            other = self._coerce(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return ratfun_equal(self, other)

    __hash__ = None  # equality is semantic

    def __repr__(self) -> str:
        return f"RationalFunction({self.num!r}, {self.den!r})"

    def to_str(self, names: Optional[Sequence[str]] = None) -> str:
        if self.den == 1:
            return self.num.to_str(names)
        return f"({self.num.to_str(names)})/({self.den.to_str(names)})"

    def __str__(self) -> str:
        return self.to_str()

    def to_json(self, names: Optional[Sequence[str]] = None) -> dict:
        out = {"nvars": str(self.nvars), "num": self.num.to_json(), "den": self.den.to_json()}
        if names is not None:
            out["vars"] = list(names)
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "RationalFunction":
        n = int(data["nvars"])
        return cls(SparsePoly.from_json(n, data["num"]), SparsePoly.from_json(n, data["den"]))


def _normalize_pair(num: SparsePoly, den: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    # monomial part of the denominator goes to the numerator
    shift = den.min_exponents()
    if any(shift):
        neg = tuple(-x for x in shift)
        den = den.mul_monomial(neg)
        num = num.mul_monomial(neg)
    if num.is_zero():
        return num, SparsePoly.const(1, den.nvars)
    g = math.gcd(num.content(), den.content())
    if den.leading()[1] < 0:
        g = -g
    if g != 1:
        num, den = num.scale_down(g), den.scale_down(g)
    return num, den


def as_ratfun(x, nvars: int) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, SparsePoly):
        return RationalFunction(x)
    return RationalFunction.const(x, nvars)


def ratfun_equal(f: RationalFunction, g: RationalFunction) -> bool:
    """True iff ``num(f)*den(g) == num(g)*den(f)``."""
    if f.nvars != g.nvars:
        return False
    if f.den == g.den:
        return f.num == g.num
    return f.num * g.den == g.num * f.den


def equal_up_to_monomial(f: RationalFunction, g: RationalFunction) -> Optional[tuple[int, Exp]]:
    """(sign, e) with f = sign * x^e * g, or None."""
    if f.nvars != g.nvars:
        return None
    if f.is_zero() or g.is_zero():
        return (1, (0,) * f.nvars) if f.is_zero() and g.is_zero() else None
    P = f.num * g.den
    Q = g.num * f.den
    (ep, cp), (eq, cq) = P.leading(), Q.leading()
    if cp != cq and cp != -cq:
        return None
    e = tuple(a - b for a, b in zip(ep, eq))
    sign = 1 if cp == cq else -1
    if P == Q.mul_monomial(e, sign):
        return sign, e
    return None
