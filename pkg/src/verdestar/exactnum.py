"""Exact arithmetic over the Gaussian rationals Q(i).

Three value types live here:

* :class:`Scalar` -- a complex number with :class:`fractions.Fraction` parts.
* :class:`Poly` -- a dense univariate polynomial with Scalar coefficients.
* :class:`RatFun` -- a reduced quotient of two polys with a monic denominator.

Everything is immutable and every operation is exact.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union


class DivisionByZero(ZeroDivisionError):
    pass


class VariableMismatch(ValueError):
    pass


class ZeroDenominator(ZeroDivisionError):
    pass


class PoleAtPoint(ArithmeticError):
    pass


class ScalarParseError(ValueError):
    pass


Number = Union[int, Fraction, "Scalar"]


class Scalar:
    """Gaussian rational ``re + im*i``."""

    __slots__ = ("_re", "_im")

    def __init__(self, re: int | Fraction | str = 0, im: int | Fraction | str = 0) -> None:
        # Fraction normalizes (coprime, positive denominator) on its own.
        object.__setattr__(self, "_re", _frac(re))
        object.__setattr__(self, "_im", _frac(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @property
    def re(self) -> Fraction:
        return self._re

    @property
    def im(self) -> Fraction:
        return self._im

    @classmethod
    def coerce(cls, value: Number) -> Scalar:
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        if isinstance(value, str):
            return cls.parse(value)
        raise TypeError(f"cannot convert {type(value).__name__} to Scalar")

    @classmethod
    def parse(cls, text: str) -> Scalar:
        """Parse ``p/q``, ``r/s*i``, ``p/q+r/s*i`` (also ``r/s i`` and bare ``i``).

        Decimal literals are rejected so that no inexact input slips through.
        """
        return _parse_scalar(text)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, RatFun) or isinstance(other, Poly):
            return NotImplemented
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self._re + o._re, self._im + o._im)

    __radd__ = __add__

    def __neg__(self) -> Scalar:
        return Scalar(-self._re, -self._im)

    def __pos__(self) -> Scalar:
        return self

    def __sub__(self, other):
        if isinstance(other, (RatFun, Poly)):
            return NotImplemented
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return Scalar(self._re - o._re, self._im - o._im)

    def __rsub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (RatFun, Poly)):
            return NotImplemented
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._im and not o._im:
            return Scalar(self._re * o._re)
        return Scalar(
            self._re * o._re - self._im * o._im,
            self._re * o._im + self._im * o._re,
        )

    __rmul__ = __mul__

    def inverse(self) -> Scalar:
        if not self:
            raise DivisionByZero("division by zero Scalar")
        if not self._im:
            return Scalar(1 / self._re)
        n = self._re * self._re + self._im * self._im
        return Scalar(self._re / n, -self._im / n)

    def __truediv__(self, other):
        if isinstance(other, (RatFun, Poly)):
            return NotImplemented
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> Scalar:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> Scalar:
        return Scalar(self._re, -self._im)

    def abs2(self) -> Fraction:
        return self._re * self._re + self._im * self._im

    # predicates -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._re) or bool(self._im)

    def is_real(self) -> bool:
        return not self._im

    def is_integer(self) -> bool:
        return not self._im and self._re.denominator == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, Scalar):
            return self._re == other._re and self._im == other._im
        if isinstance(other, (int, Fraction)):
            return not self._im and self._re == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self._im:
            return hash(self._re)
        return hash((self._re, self._im))

    def __repr__(self) -> str:
        return f"Scalar({self})"

    def __str__(self) -> str:
        return format_scalar(self)


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        if "." in v or "e" in v.lower():
            raise ScalarParseError(f"decimal literal not accepted: {v!r}")
        return Fraction(v)
    raise TypeError(f"expected an exact rational, got {type(v).__name__}")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def format_scalar(z: Scalar) -> str:
    """Render as ``p/q``, ``r/s*i`` or ``p/q+r/s*i``."""
    re_, im = z.re, z.im
    if not im:
        return str(re_)
    if im == 1:
        ipart = "i"
    elif im == -1:
        ipart = "-i"
    else:
        ipart = f"{im}*i"
    if not re_:
        return ipart
    sign = "" if ipart.startswith("-") else "+"
    return f"{re_}{sign}{ipart}"


_RAT = r"\d+(?:/\d+)?"
_TERM = re.compile(
    rf"\s*([+-]?)\s*(?:({_RAT})\s*(\*?\s*i)?|(i))\s*",
)


def _parse_scalar(text: str) -> Scalar:
    src = text.strip()
    if not src:
        raise ScalarParseError("empty number literal")
    if re.search(r"\d\.\d|\.\d|\d\.|[eE]\d", src):
        raise ScalarParseError(f"decimal literal not accepted: {text!r}")
    pos = 0
    re_part = Fraction(0)
    im_part = Fraction(0)
    first = True
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ScalarParseError(f"malformed number literal: {text!r}")
        sign, rat, imag_suffix, bare_i = m.groups()
        if not first and not sign:
            raise ScalarParseError(f"malformed number literal: {text!r}")
        s = -1 if sign == "-" else 1
        if rat is not None and re.search(r"/\s*0+\s*$", rat):
            raise ScalarParseError(f"zero denominator in {text!r}")
        if bare_i:
            im_part += s
        elif imag_suffix:
            im_part += s * Fraction(rat)
        else:
            re_part += s * Fraction(rat)
        first = False
        pos = m.end()
    return Scalar(re_part, im_part)


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

NEG_INF = -math.inf


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` multiplies ``var**i``."""

    __slots__ = ("_c", "_var")

    def __init__(self, coeffs: Iterable[Number] = (), var: str = "x") -> None:
        c = [Scalar.coerce(a) for a in coeffs]
        while c and not c[-1]:
            c.pop()
        object.__setattr__(self, "_c", tuple(c))
        object.__setattr__(self, "_var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def _raw(cls, coeffs: list[Scalar], var: str) -> Poly:
        while coeffs and not coeffs[-1]:
            coeffs.pop()
        p = object.__new__(cls)
        object.__setattr__(p, "_c", tuple(coeffs))
        object.__setattr__(p, "_var", var)
        return p

    @classmethod
    def gen(cls, var: str = "x") -> Poly:
        return cls._raw([ZERO, ONE], var)

    @classmethod
    def const(cls, c: Number, var: str = "x") -> Poly:
        return cls._raw([Scalar.coerce(c)], var)

    @classmethod
    def monomial(cls, n: int, c: Number = 1, var: str = "x") -> Poly:
        return cls._raw([ZERO] * n + [Scalar.coerce(c)], var)

    @property
    def coeffs(self) -> tuple[Scalar, ...]:
        return self._c

    @property
    def var(self) -> str:
        return self._var

    @property
    def degree(self) -> int | float:
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self._c) - 1 if self._c else NEG_INF

    def coeff(self, i: int) -> Scalar:
        return self._c[i] if 0 <= i < len(self._c) else ZERO

    def lead(self) -> Scalar:
        return self._c[-1] if self._c else ZERO

    def is_zero(self) -> bool:
        return not self._c

    def is_monic(self) -> bool:
        return bool(self._c) and self._c[-1] == ONE

    def __bool__(self) -> bool:
        return bool(self._c)

    def __call__(self, at: Number) -> Scalar:
        return self.evaluate(at)

    def evaluate(self, at):
        """Horner evaluation; ``at`` may be a Scalar or anything ring-like."""
        if not isinstance(at, (Scalar, Poly, RatFun)):
            at = Scalar.coerce(at)
        acc = ZERO
        for c in reversed(self._c):
            acc = acc * at + c
        return acc

    def _lift(self, other) -> Poly:
        if isinstance(other, Poly):
            if other._var != self._var and other.degree > 0 and self.degree > 0:
                raise VariableMismatch(f"{self._var} vs {other._var}")
            return other
        return Poly.const(Scalar.coerce(other), self._var)

    def _out_var(self, other: Poly) -> str:
        if self.degree > 0 or other.degree <= 0:
            return self._var
        return other._var

    def __add__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(out, self._out_var(o))

    __radd__ = __add__

    def __neg__(self) -> Poly:
        return Poly._raw([-c for c in self._c], self._var)

    def __sub__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RatFun):
            return NotImplemented
        if not isinstance(other, Poly):
            try:
                s = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
            if not s:
                return Poly._raw([], self._var)
            return Poly._raw([c * s for c in self._c], self._var)
        o = self._lift(other)
        if not self._c or not o._c:
            return Poly._raw([], self._out_var(o))
        out = [ZERO] * (len(self._c) + len(o._c) - 1)
        for i, a in enumerate(self._c):
            if not a:
                continue
            for j, b in enumerate(o._c):
                if b:
                    out[i + j] = out[i + j] + a * b
        return Poly._raw(out, self._out_var(o))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = Poly.const(ONE, self._var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        if isinstance(other, (Poly, RatFun)):
            return NotImplemented
        return self * Scalar.coerce(other).inverse()

    def divmod(self, other: Poly) -> tuple[Poly, Poly]:
        o = self._lift(other)
        if not o._c:
            raise DivisionByZero("polynomial division by zero")
        rem = list(self._c)
        dq = len(rem) - len(o._c)
        if dq < 0:
            return Poly._raw([], self._var), self
        inv_lead = o._c[-1].inverse()
        quot = [ZERO] * (dq + 1)
        for i in range(dq, -1, -1):
            c = rem[i + len(o._c) - 1]
            if not c:
                continue
            f = c * inv_lead
            quot[i] = f
            for j, b in enumerate(o._c):
                if b:
                    rem[i + j] = rem[i + j] - f * b
        return Poly._raw(quot, self._var), Poly._raw(rem[: len(o._c) - 1], self._var)

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        return self.divmod(other)

    def __floordiv__(self, other: Poly) -> Poly:
        return self.divmod(other)[0]

    def __mod__(self, other: Poly) -> Poly:
        return self.divmod(other)[1]

    def monic(self) -> Poly:
        if not self._c:
            return self
        return self * self._c[-1].inverse()

    def valuation(self) -> int:
        """Lowest power with a nonzero coefficient (0 for the zero poly)."""
        for i, c in enumerate(self._c):
            if c:
                return i
        return 0

    def shift_down(self, n: int) -> Poly:
        """Divide by ``var**n``; the low coefficients must be zero."""
        assert all(not c for c in self._c[:n])
        return Poly._raw(list(self._c[n:]), self._var)

    def compose(self, inner):
        """``self(inner)`` for a Poly/RatFun/Scalar ``inner``."""
        return self.evaluate(inner)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._c == other._c and (self._var == other._var or self.degree <= 0)
        if isinstance(other, (int, Fraction, Scalar)):
            return self.degree <= 0 and self.coeff(0) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self._c, self._var if self.degree > 0 else ""))

    def __repr__(self) -> str:
        return f"Poly({self}, var={self._var!r})"

    def __str__(self) -> str:
        return format_poly(self)


def format_poly(p: Poly) -> str:
    """Human form such as ``x^2 - 3x + 1``; non-real coefficients are bracketed."""
    if p.is_zero():
        return "0"
    parts: list[tuple[str, str]] = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        if c.is_real():
            sign = "-" if c.re < 0 else "+"
            mag = abs(c.re)
            body = "" if (mag == 1 and i > 0) else str(mag)
        else:
            sign = "+"
            body = f"({format_scalar(c)})"
        if i == 0:
            mono = ""
        elif i == 1:
            mono = p.var
        else:
            mono = f"{p.var}^{i}"
        parts.append((sign, body + mono))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm (zero if both are zero)."""
    # Powers of the variable are split off first; q-data carries large ones.
    va, vb = a.valuation(), b.valuation()
    if a.is_zero():
        return b.monic()
    if b.is_zero():
        return a.monic()
    common = min(va, vb)
    a, b = a.shift_down(va).monic(), b.shift_down(vb).monic()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic() * Poly.monomial(common, 1, a.var)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RatFun:
    """Quotient ``num/den`` kept with gcd(num, den) = 1 and monic ``den``."""

    __slots__ = ("_num", "_den")

    def __init__(self, num, den=None, var: str | None = None) -> None:
        v = var or (num.var if isinstance(num, Poly) else den.var if isinstance(den, Poly) else "s")
        n = num if isinstance(num, Poly) else Poly.const(Scalar.coerce(num), v)
        if den is None:
            d = Poly.const(ONE, n.var if n.degree > 0 else v)
        else:
            d = den if isinstance(den, Poly) else Poly.const(Scalar.coerce(den), v)
        n, d = _reduce(n, d)
        object.__setattr__(self, "_num", n)
        object.__setattr__(self, "_den", d)

    def __setattr__(self, name, value):
        raise AttributeError("RatFun is immutable")

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> RatFun:
        r = object.__new__(cls)
        object.__setattr__(r, "_num", num)
        object.__setattr__(r, "_den", den)
        return r

    @classmethod
    def gen(cls, var: str = "s") -> RatFun:
        return cls._raw(Poly.gen(var), Poly.const(ONE, var))

    @classmethod
    def const(cls, c: Number, var: str = "s") -> RatFun:
        return cls._raw(Poly.const(Scalar.coerce(c), var), Poly.const(ONE, var))

    @property
    def num(self) -> Poly:
        return self._num

    @property
    def den(self) -> Poly:
        return self._den

    @property
    def var(self) -> str:
        if self._num.degree > 0:
            return self._num.var
        return self._den.var

    def is_zero(self) -> bool:
        return self._num.is_zero()

    def __bool__(self) -> bool:
        return not self._num.is_zero()

    def _lift(self, other) -> RatFun:
        if isinstance(other, RatFun):
            return other
        if isinstance(other, Poly):
            return RatFun._raw(other, Poly.const(ONE, other.var))
        return RatFun.const(Scalar.coerce(other), self.var)

    def __add__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if self._den == o._den:
            return RatFun(self._num + o._num, self._den)
        return RatFun(self._num * o._den + o._num * self._den, self._den * o._den)

    __radd__ = __add__

    def __neg__(self) -> RatFun:
        return RatFun._raw(-self._num, self._den)

    def __sub__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        if o._den.degree == 0 and self._den.degree == 0:
            return RatFun._raw_normalized(self._num * o._num, self._den * o._den)
        # cross-cancel before multiplying to keep degrees small
        g1 = poly_gcd(self._num, o._den)
        g2 = poly_gcd(o._num, self._den)
        n = (self._num // g1) * (o._num // g2)
        d = (self._den // g2) * (o._den // g1)
        return RatFun._raw_normalized(n, d)

    __rmul__ = __mul__

    @classmethod
    def _raw_normalized(cls, n: Poly, d: Poly) -> RatFun:
        if n.is_zero():
            return cls._raw(n, Poly.const(ONE, d.var))
        lc = d.lead().inverse()
        return cls._raw(n * lc, d * lc)

    def inverse(self) -> RatFun:
        if self._num.is_zero():
            raise DivisionByZero("inverse of zero rational function")
        return RatFun._raw_normalized(self._den, self._num)

    def __truediv__(self, other):
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __pow__(self, n: int) -> RatFun:
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        return RatFun._raw(self._num**n, self._den**n)

    def evaluate(self, at: Number) -> Scalar:
        return ratfun_eval(self, at)

    __call__ = evaluate

    def __eq__(self, other) -> bool:
        try:
            o = self._lift(other)
        except TypeError:
            return NotImplemented
        return self._num * o._den == o._num * self._den

    def __hash__(self) -> int:
        return hash((self._num, self._den))

    def __repr__(self) -> str:
        return f"RatFun({self})"

    def __str__(self) -> str:
        if self._den.degree == 0:
            return format_poly(self._num)
        return f"({format_poly(self._num)})/({format_poly(self._den)})"


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_zero():
        raise ZeroDenominator("rational function with zero denominator")
    if num.is_zero():
        return num, Poly.const(ONE, den.var)
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, den = num // g, den // g
    lc = den.lead().inverse()
    return num * lc, den * lc


def ratfun_reduce(num: Poly, den: Poly) -> RatFun:
    return RatFun(num, den)


def ratfun_eval(f: RatFun, at: Number) -> Scalar:
    """Value of the reduced function at ``at``; raises PoleAtPoint on a pole."""
    a = Scalar.coerce(at)
    d = f.den.evaluate(a)
    if not d:
        raise PoleAtPoint(f"denominator vanishes at {a}")
    return f.num.evaluate(a) / d


def scalar_arith(a: Number, b: Number, op: str) -> Scalar:
    x, y = Scalar.coerce(a), Scalar.coerce(b)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def poly_arith(p: Poly, q: Poly, op: str) -> Poly:
    if p.var != q.var:
        raise VariableMismatch(f"{p.var} vs {q.var}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def pochhammer(a, k: int):
    """Rising factorial ``(a)_k``; works for any ring element ``a``."""
    out = ONE
    for j in range(k):
        out = out * (a + j)
    return out


def prod(items: Sequence, start=None):
    out = ONE if start is None else start
    for it in items:
        out = out * it
    return out
