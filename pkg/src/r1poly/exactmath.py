"""Exact scalar, polynomial, and truncated-power-series arithmetic.

Every quantity in this package is an exact rational number; there is no
floating point anywhere.  The scalar type is ``fractions.Fraction`` (aliased
``Scalar``), which is always stored normalized (gcd 1, positive denominator)
and serializes as a decimal string ``"p/q"`` or ``"p"``.

Three container types are built on top of it:

``Poly``
    Dense univariate polynomial, coefficients indexed by power of x,
    lowest power first.  Degrees stay small here, so dense is the right
    shape.

``Series``
    Truncated power series with an explicit truncation order carried on
    every value.  Mixing two orders truncates to the minimum, so a result
    never silently claims more precision than its inputs had.

``SymPoly``
    Sparse multivariate polynomial in the indexed symbols b_i, a_i, lam_i,
    with ring operations only (no division).  Monomial counts explode with
    path counts, so this one is sparse.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

Scalar = Fraction

ScalarLike = Union[Fraction, int]


def as_scalar(value: ScalarLike) -> Scalar:
    """Coerce an int or Fraction to Scalar."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def parse_scalar(text: str) -> Scalar:
    """Parse the wire form "p/q" or "p" (decimal integer strings)."""
    return Fraction(text.strip())


def format_scalar(value: Scalar) -> str:
    """Wire form: "p/q", or just "p" when the denominator is 1."""
    return str(value)


def pochhammer(a: ScalarLike, n: int) -> Scalar:
    """Rising factorial (a)_n = a(a+1)...(a+n-1); empty product is 1."""
    if n < 0:
        raise ValueError("pochhammer needs n >= 0")
    a = as_scalar(a)
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def qpochhammer(a: ScalarLike, q: ScalarLike, n: int) -> Scalar:
    """q-shifted factorial (a;q)_n = (1-a)(1-aq)...(1-aq^{n-1})."""
    if n < 0:
        raise ValueError("qpochhammer needs n >= 0")
    a = as_scalar(a)
    q = as_scalar(q)
    out = Fraction(1)
    power = Fraction(1)
    for _ in range(n):
        out *= 1 - a * power
        power *= q
    return out


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind, by the standard recurrence."""
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    row = [1]  # S(0, 0)
    for m in range(1, n + 1):
        new = [0] * (m + 1)
        for j in range(1, m + 1):
            below = row[j] if j < len(row) else 0
            new[j] = j * below + row[j - 1]
        row = new
    return row[k]


class Poly:
    """Dense univariate polynomial over Scalar, lowest power first.

    Immutable; the stored coefficient list never has a trailing zero, so the
    zero polynomial is the empty tuple and ``degree`` of zero is -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[ScalarLike] = ()):
        cs = [as_scalar(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @staticmethod
    def const(c: ScalarLike) -> "Poly":
        return Poly([c])

    @staticmethod
    def x(power: int = 1) -> "Poly":
        return Poly([0] * power + [1])

    @staticmethod
    def linear(a1: ScalarLike, a0: ScalarLike) -> "Poly":
        """The polynomial a1*x + a0."""
        return Poly([a0, a1])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, k: int) -> Scalar:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def leading(self) -> Scalar:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other) -> "Poly":
        other = _coerce_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return -(self - other)

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = as_scalar(other)
            return Poly([c * a for a in self.coeffs])
        if not isinstance(other, Poly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def reversed(self, n: int | None = None) -> "Poly":
        """Coefficient reversal x^n * p(1/x); n defaults to deg p."""
        if n is None:
            n = max(self.degree, 0)
        if n < self.degree:
            raise ValueError("reversal length below degree")
        padded = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return Poly(reversed(padded))

    def __call__(self, x: ScalarLike) -> Scalar:
        x = as_scalar(x)
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(format_scalar(c))
            else:
                xk = "x" if k == 1 else f"x^{k}"
                if c == 1:
                    parts.append(xk)
                elif c == -1:
                    parts.append(f"-{xk}")
                else:
                    parts.append(f"{format_scalar(c)}*{xk}")
        return " + ".join(parts).replace("+ -", "- ")


def _coerce_poly(value) -> "Poly":
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    return NotImplemented


def poly_divrem(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    """Euclidean division: p = q*quot + rem with deg rem < deg q."""
    if q.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p.coeffs)
    dq = q.degree
    lead = q.leading()
    if len(rem) <= dq:
        return Poly(), p
    quot = [Fraction(0)] * (len(rem) - dq)
    for k in range(len(rem) - 1, dq - 1, -1):
        c = rem[k] / lead
        if c == 0:
            continue
        quot[k - dq] = c
        for j in range(dq + 1):
            rem[k - dq + j] -= c * q.coeffs[j]
    return Poly(quot), Poly(rem[:dq])


class Series:
    """Power series truncated at an explicit order N (coefficients 0..N).

    All arithmetic truncates; combining two series keeps the smaller order.
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[ScalarLike], order: int | None = None):
        cs = [as_scalar(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("series order must be >= 0")
        cs = cs[: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @staticmethod
    def from_poly(p: Poly, order: int) -> "Series":
        return Series(p.coeffs, order)

    def __getitem__(self, k: int) -> Scalar:
        if k > self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def truncate(self, order: int) -> "Series":
        if order >= self.order:
            return self
        return Series(self.coeffs, order)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def _binop(self, other, op) -> "Series":
        if isinstance(other, (int, Fraction)):
            other = Series([other], self.order)
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        return Series([op(self.coeffs[k], other.coeffs[k]) for k in range(n + 1)], n)

    def __add__(self, other):
        return self._binop(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = as_scalar(other)
            return Series([c * a for a in self.coeffs], self.order)
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.order, other.order)
        out = [Fraction(0)] * (n + 1)
        for i in range(n + 1):
            a = self.coeffs[i]
            if a == 0:
                continue
            for j in range(n + 1 - i):
                out[i + j] += a * other.coeffs[j]
        return Series(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        """Multiplicative inverse; requires a nonzero constant term."""
        if self.coeffs[0] == 0:
            raise ZeroDivisionError("series has no inverse: constant term is 0")
        c0 = self.coeffs[0]
        out = [Fraction(1) / c0]
        for k in range(1, self.order + 1):
            acc = Fraction(0)
            for j in range(1, k + 1):
                acc += self.coeffs[j] * out[k - j]
            out.append(-acc / c0)
        return Series(out, self.order)

    def __repr__(self) -> str:
        return f"Series({list(self.coeffs)!r}, order={self.order})"


def series_from_rational(num: Poly, den: Poly, order: int) -> Series:
    """Expand num/den as a power series through x^order; needs den(0) != 0."""
    if den.is_zero() or den[0] == 0:
        raise ZeroDivisionError("rational function has a pole at 0, cannot expand")
    d0 = den[0]
    out = []
    for k in range(order + 1):
        acc = num[k]
        for j in range(1, min(k, den.degree) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / d0)
    return Series(out, order)


# Symbols are (kind, index) pairs; kinds are the three coefficient streams.
SYM_KINDS = ("b", "a", "lam")

Symbol = tuple[str, int]
Monomial = tuple[Symbol, ...]


def _sym_key(sym: Symbol):
    return (sym[1], SYM_KINDS.index(sym[0]))


def _mono_sort_key(mono: Monomial):
    return (sum(1 for _ in mono), tuple(_sym_key(s) for s in mono))


class SymPoly:
    """Sparse polynomial in the indexed symbols b_i, a_i, lam_i over Scalar.

    A monomial is a sorted tuple of symbols (with repetition); the terms map
    never stores a zero coefficient.  Only ring operations are provided:
    + and * (no division), plus evaluation by substituting scalars.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Monomial, ScalarLike] | None = None):
        clean: dict[Monomial, Scalar] = {}
        for mono, coeff in (terms or {}).items():
            c = as_scalar(coeff)
            if c == 0:
                continue
            key = tuple(sorted(mono, key=_sym_key))
            clean[key] = clean.get(key, Fraction(0)) + c
            if clean[key] == 0:
                del clean[key]
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("SymPoly is immutable")

    @staticmethod
    def const(c: ScalarLike) -> "SymPoly":
        return SymPoly({(): c})

    @staticmethod
    def symbol(kind: str, index: int) -> "SymPoly":
        if kind not in SYM_KINDS:
            raise ValueError(f"unknown symbol kind {kind!r}")
        return SymPoly({((kind, index),): 1})

    @staticmethod
    def b(i: int) -> "SymPoly":
        return SymPoly.symbol("b", i)

    @staticmethod
    def a(i: int) -> "SymPoly":
        return SymPoly.symbol("a", i)

    @staticmethod
    def lam(i: int) -> "SymPoly":
        return SymPoly.symbol("lam", i)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        other = _coerce_sympoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "SymPoly":
        other = _coerce_sympoly(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + c
            if out[mono] == 0:
                del out[mono]
        return SymPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        return SymPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "SymPoly":
        other = _coerce_sympoly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SymPoly":
        return -(self - other)

    def __mul__(self, other) -> "SymPoly":
        other = _coerce_sympoly(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Monomial, Scalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(sorted(m1 + m2, key=_sym_key))
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2
                if out[mono] == 0:
                    del out[mono]
        return SymPoly(out)

    __rmul__ = __mul__

    def evaluate(self, assign: Callable[[str, int], ScalarLike]) -> Scalar:
        """Substitute scalars for symbols; assign(kind, index) -> Scalar."""
        total = Fraction(0)
        for mono, coeff in self.terms.items():
            prod = coeff
            for kind, idx in mono:
                prod *= as_scalar(assign(kind, idx))
            total += prod
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=_mono_sort_key):
            coeff = self.terms[mono]
            factors = []
            i = 0
            while i < len(mono):
                j = i
                while j < len(mono) and mono[j] == mono[i]:
                    j += 1
                kind, idx = mono[i]
                name = f"{kind}{idx}"
                factors.append(name if j - i == 1 else f"{name}^{j - i}")
                i = j
            if not factors:
                parts.append(format_scalar(coeff))
            elif coeff == 1:
                parts.append("*".join(factors))
            elif coeff == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(format_scalar(coeff) + "*" + "*".join(factors))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"SymPoly({self})"


def _coerce_sympoly(value) -> "SymPoly":
    if isinstance(value, SymPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return SymPoly.const(value)
    return NotImplemented


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)
