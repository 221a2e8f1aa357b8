"""Exact arithmetic in the bead ring Z[t, t^-1].

Beads are stored sparsely as ``{exponent: coefficient}`` with zero
coefficients pruned.  :func:`lp_exp_substitute` turns a bead into a
truncated power series in the hair variable ``h`` via ``t = exp(h)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import factorial, gcd
from typing import Iterable, Mapping, Union

__all__ = [
    "LaurentPoly",
    "HairSeries",
    "lp_add",
    "lp_mul",
    "lp_exp_substitute",
    "parse_laurent",
    "ZERO",
    "ONE",
    "T",
    "T_MINUS_ONE",
]


class LaurentPoly:
    """An element of Z[t, t^-1].  Immutable and hashable."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, coefficients: Union[Mapping[int, int], int, None] = None):
        if coefficients is None:
            coefficients = {}
        elif isinstance(coefficients, int):
            coefficients = {0: coefficients}
        terms = []
        for k, c in coefficients.items():
            if not isinstance(k, int) or not isinstance(c, int):
                raise TypeError("exponents and coefficients must be int")
            if c:
                terms.append((k, c))
        terms.sort()
        self._terms: tuple[tuple[int, int], ...] = tuple(terms)
        self._hash = hash(self._terms)

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        """``(exponent, coefficient)`` pairs in ascending exponent order."""
        return self._terms

    def coefficients(self) -> dict[int, int]:
        return dict(self._terms)

    def coefficient(self, exponent: int) -> int:
        for k, c in self._terms:
            if k == exponent:
                return c
        return 0

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == ((0, 1),)

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for _, c in self._terms:
            g = gcd(g, c)
        return g

    def normalized(self) -> tuple[int, "LaurentPoly"]:
        """Split off integer content: ``self == scale * primitive``.

        The primitive part has gcd 1 and a positive top coefficient, so
        ``1 - t`` normalizes to ``(-1, t - 1)``.
        """
        if not self._terms:
            return 0, self
        g = self.content()
        if self._terms[-1][1] < 0:
            g = -g
        return g, LaurentPoly({k: c // g for k, c in self._terms})

    def evaluate(self, t):
        """Evaluate at a number; use a Fraction for negative exponents."""
        return sum(c * t**k for k, c in self._terms)

    def conjugate(self) -> "LaurentPoly":
        """Substitute t -> t^-1."""
        return LaurentPoly({-k: c for k, c in self._terms})

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return lp_add(self, other)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -c for k, c in self._terms})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return lp_add(self, -other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return lp_add(other, -self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return lp_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if len(self._terms) != 1 or abs(self._terms[0][1]) != 1:
                raise ValueError("only units of Z[t, t^-1] can be inverted")
            k, c = self._terms[0]
            return LaurentPoly({-k * -n: c ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __str__(self) -> str:
        return format_laurent(self)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_laurent(self)!r})"


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly(x)
    return NotImplemented


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    acc = dict(a.terms)
    for k, c in b.terms:
        acc[k] = acc.get(k, 0) + c
    return LaurentPoly(acc)


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    acc: dict[int, int] = {}
    for i, x in a.terms:
        for j, y in b.terms:
            acc[i + j] = acc.get(i + j, 0) + x * y
    return LaurentPoly(acc)


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
T = LaurentPoly({1: 1})
T_MINUS_ONE = LaurentPoly({0: -1, 1: 1})


class HairSeries:
    """Power series in ``h`` with exact rational coefficients, truncated
    above ``truncation_degree``."""

    __slots__ = ("_coeffs", "truncation_degree")

    def __init__(self, coefficients: Mapping[int, Fraction], truncation_degree: int):
        if truncation_degree < 0:
            raise ValueError("truncation_degree must be >= 0")
        self.truncation_degree = truncation_degree
        self._coeffs = {
            m: Fraction(c)
            for m, c in coefficients.items()
            if c and 0 <= m <= truncation_degree
        }

    def coefficient(self, m: int) -> Fraction:
        return self._coeffs.get(m, Fraction(0))

    def coefficients(self) -> dict[int, Fraction]:
        return dict(sorted(self._coeffs.items()))

    def at_zero(self) -> Fraction:
        return self.coefficient(0)

    def truncate(self, d: int) -> "HairSeries":
        return HairSeries(self._coeffs, min(d, self.truncation_degree))

    def __mul__(self, other: "HairSeries") -> "HairSeries":
        d = min(self.truncation_degree, other.truncation_degree)
        acc: dict[int, Fraction] = {}
        for i, x in self._coeffs.items():
            for j, y in other._coeffs.items():
                if i + j <= d:
                    acc[i + j] = acc.get(i + j, Fraction(0)) + x * y
        return HairSeries(acc, d)

    def __add__(self, other: "HairSeries") -> "HairSeries":
        d = min(self.truncation_degree, other.truncation_degree)
        acc = dict(self._coeffs)
        for j, y in other._coeffs.items():
            acc[j] = acc.get(j, Fraction(0)) + y
        return HairSeries(acc, d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HairSeries):
            return NotImplemented
        return (
            self.truncation_degree == other.truncation_degree
            and self._coeffs == other._coeffs
        )

    def __repr__(self) -> str:
        body = " + ".join(f"({c})*h^{m}" for m, c in sorted(self._coeffs.items())) or "0"
        return f"HairSeries({body}; O(h^{self.truncation_degree + 1}))"


def lp_exp_substitute(p: LaurentPoly, d: int) -> HairSeries:
    """Return ``p(exp(h))`` truncated at ``h^d``.

    ``t^k`` contributes ``k^m / m!`` to the coefficient of ``h^m``.
    """
    if d < 0:
        raise ValueError("truncation degree must be >= 0")
    coeffs = {}
    for m in range(d + 1):
        num = sum(c * k**m for k, c in p.terms)
        if num:
            coeffs[m] = Fraction(num, factorial(m))
    return HairSeries(coeffs, d)


# -- text form -----------------------------------------------------------

_TERM_RE = re.compile(
    r"""
    (?P<sign>[+-])?
    (?:
        (?P<coef>\d+)(?:\*?(?P<t1>t)(?:(?:\^|\*\*)\(?(?P<e1>[+-]?\d+)\)?)?)?
      | (?P<t2>t)(?:(?:\^|\*\*)\(?(?P<e2>[+-]?\d+)\)?)?
    )
    """,
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse expressions such as ``1``, ``t-1``, ``3*t-3``, ``t^-2``.

    Whitespace is ignored.  Raises ``ValueError`` on anything else.
    """
    s = "".join(text.split())
    if not s:
        raise ValueError("empty Laurent expression")
    acc: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError(f"cannot parse Laurent expression {text!r} at offset {pos}")
        if pos > 0 and m.group("sign") is None:
            raise ValueError(f"missing operator in {text!r} at offset {pos}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            coef = int(m.group("coef"))
            if m.group("t1"):
                exp = int(m.group("e1")) if m.group("e1") is not None else 1
            else:
                exp = 0
        else:
            coef = 1
            exp = int(m.group("e2")) if m.group("e2") is not None else 1
        acc[exp] = acc.get(exp, 0) + sign * coef
        pos = m.end()
    return LaurentPoly(acc)


def format_laurent(p: LaurentPoly) -> str:
    """Canonical text: ascending exponent, no spaces (``t-1`` -> ``-1+t``)."""
    if not p.terms:
        return "0"
    parts = []
    for k, c in p.terms:
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "t" if k == 1 else f"t^{k}"
            body = var if mag == 1 else f"{mag}*{var}"
        if parts:
            parts.append(("-" if c < 0 else "+") + body)
        else:
            parts.append(("-" if c < 0 else "") + body)
    return "".join(parts)


def from_iterable(pairs: Iterable[tuple[int, int]]) -> LaurentPoly:
    acc: dict[int, int] = {}
    for k, c in pairs:
        acc[k] = acc.get(k, 0) + c
    return LaurentPoly(acc)
