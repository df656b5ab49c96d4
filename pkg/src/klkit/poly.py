"""Exact one-variable polynomials and Laurent polynomials over the integers.

Coefficients are Python ints, so nothing ever overflows. Both types are
immutable values; the variable name only matters when printing.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class DegreeBoundError(ValueError):
    """A polynomial is too large for the requested degree twist."""


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _format_terms(pairs: Iterable[tuple[int, int]], var: str) -> str:
    parts = []
    for k, c in pairs:
        if c == 0:
            continue
        if k == 0:
            mono = str(abs(c))
        else:
            base = var if k == 1 else f"{var}^{k}"
            mono = base if abs(c) == 1 else f"{abs(c)}*{base}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, mono))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, mono in parts[1:]:
        text += f" {sign} {mono}"
    return text


class IntPoly:
    """Polynomial with integer coefficients, ``coeffs[k]`` is the coefficient of degree k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPoly:
        if degree < 0:
            raise ValueError("negative degree")
        return cls([0] * degree + [coeff])

    @classmethod
    def constant(cls, c: int) -> IntPoly:
        return cls([c])

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for zero."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, LaurentPoly):
            return LaurentPoly.from_intpoly(self) + other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> IntPoly:
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, LaurentPoly):
            return LaurentPoly.from_intpoly(self) * other
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPoly:
        if n < 0:
            raise ValueError("negative power")
        result, base = IntPoly([1]), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> IntPoly:
        return IntPoly(c * a for a in self.coeffs)

    def shift(self, k: int) -> IntPoly:
        """Multiply by the monomial of degree k (k >= 0)."""
        if k < 0:
            raise ValueError("use LaurentPoly for negative shifts")
        if not self.coeffs:
            return self
        return IntPoly((0,) * k + self.coeffs)

    def __call__(self, value):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _trim([other])
        if isinstance(other, LaurentPoly):
            return other == self
        return NotImplemented

    def __hash__(self):
        return hash(("IntPoly", self.coeffs))

    def format(self, var: str = "q") -> str:
        return _format_terms(enumerate(self.coeffs), var)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj) -> IntPoly:
        if isinstance(obj, dict):
            if obj.get("minDeg", 0) != 0:
                return LaurentPoly.from_json(obj).to_intpoly()
            obj = obj["coeffs"]
        return cls(int(c) for c in obj)


def _coerce(other):
    if isinstance(other, (IntPoly, LaurentPoly)):
        return other
    if isinstance(other, int):
        return IntPoly([other])
    return NotImplemented


class LaurentPoly:
    """Laurent polynomial ``sum coeffs[k] * var**(min_deg + k)``."""

    __slots__ = ("min_deg", "coeffs")

    def __init__(self, min_deg: int = 0, coeffs: Sequence[int] = ()):
        cs = [int(c) for c in coeffs]
        lo = 0
        while lo < len(cs) and cs[lo] == 0:
            lo += 1
        cs = list(_trim(cs[lo:]))
        object.__setattr__(self, "min_deg", int(min_deg) + lo if cs else 0)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def from_intpoly(cls, p: IntPoly) -> LaurentPoly:
        return cls(0, p.coeffs)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> LaurentPoly:
        return cls(degree, [coeff])

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> LaurentPoly:
        terms = {k: c for k, c in terms.items() if c}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls(lo, [terms.get(k, 0) for k in range(lo, hi + 1)])

    def terms(self) -> dict[int, int]:
        return {self.min_deg + k: c for k, c in enumerate(self.coeffs) if c}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def max_deg(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no degree")
        return self.min_deg + len(self.coeffs) - 1

    def coefficient(self, k: int) -> int:
        i = k - self.min_deg
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def is_polynomial(self) -> bool:
        return self.is_zero() or self.min_deg >= 0

    def to_intpoly(self) -> IntPoly:
        if not self.is_polynomial():
            raise ValueError(f"{self} has negative exponents")
        if self.is_zero():
            return IntPoly()
        return IntPoly((0,) * self.min_deg + self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, IntPoly):
            other = LaurentPoly.from_intpoly(other)
        out = self.terms()
        for k, c in other.terms().items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly.from_terms(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.min_deg, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if isinstance(other, IntPoly):
            other = LaurentPoly.from_intpoly(other)
        if self.is_zero() or other.is_zero():
            return LaurentPoly()
        prod = IntPoly(self.coeffs) * IntPoly(other.coeffs)
        return LaurentPoly(self.min_deg + other.min_deg, prod.coeffs)

    __rmul__ = __mul__

    def scale(self, c: int) -> LaurentPoly:
        return LaurentPoly(self.min_deg, [c * a for a in self.coeffs])

    def shift(self, k: int) -> LaurentPoly:
        return LaurentPoly(self.min_deg + k, self.coeffs) if self.coeffs else self

    def bar(self) -> LaurentPoly:
        """Substitute var -> var**-1."""
        if self.is_zero():
            return self
        return LaurentPoly(-self.max_deg, self.coeffs[::-1])

    def __call__(self, value):
        from fractions import Fraction

        total = 0
        for k, c in self.terms().items():
            total += c * (Fraction(value) ** k if k < 0 else value ** k)
        if isinstance(total, Fraction) and total.denominator == 1:
            return int(total)
        return total

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return (self.min_deg, self.coeffs) == (other.min_deg, other.coeffs)
        if isinstance(other, (IntPoly, int)):
            return self == LaurentPoly.from_intpoly(_coerce(other))
        return NotImplemented

    def __hash__(self):
        if self.is_polynomial():
            return hash(self.to_intpoly())
        return hash(("LaurentPoly", self.min_deg, self.coeffs))

    def format(self, var: str = "t") -> str:
        return _format_terms(sorted(self.terms().items()), var)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LaurentPoly({self.min_deg}, {list(self.coeffs)})"

    def to_json(self) -> dict:
        return {"minDeg": self.min_deg, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj) -> LaurentPoly:
        return cls(int(obj.get("minDeg", 0)), [int(c) for c in obj["coeffs"]])


def eval_int(p: IntPoly | LaurentPoly, n: int):
    return p(n)


def twist_kl(p: IntPoly, d: int) -> IntPoly:
    """Return ``t**d * p(t**-2)``: the coefficient of q^m moves to degree d - 2m."""
    if p.is_zero():
        return IntPoly()
    if d < 0 or 2 * p.degree > d:
        raise DegreeBoundError(f"cannot twist {p.format('q')} by t^{d}: 2*deg > {d}")
    out = [0] * (d + 1)
    for m, c in enumerate(p.coeffs):
        out[d - 2 * m] = c
    return IntPoly(out)


def untwist_kl(a: IntPoly | LaurentPoly, d: int) -> IntPoly:
    """Inverse of :func:`twist_kl`; raises if ``a`` is not of the twisted shape."""
    if isinstance(a, IntPoly):
        a = LaurentPoly.from_intpoly(a)
    out: dict[int, int] = {}
    for k, c in a.terms().items():
        if (d - k) % 2 or k > d:
            raise DegreeBoundError(f"exponent {k} incompatible with twist by t^{d}")
        out[(d - k) // 2] = c
    return IntPoly(out.get(m, 0) for m in range(max(out, default=-1) + 1))


def bar_involution(p: LaurentPoly | IntPoly) -> LaurentPoly:
    if isinstance(p, IntPoly):
        p = LaurentPoly.from_intpoly(p)
    return p.bar()
