"""Exact Laurent polynomials in ``v`` with integer coefficients.

Kazhdan-Lusztig polynomials live in ``Z[q]`` with ``q = v^2``; they are
exposed through :class:`KLPoly`, a thin view that indexes coefficients by
powers of ``q`` and renders as ``"1 + q"``.

>>> p = LaurentPoly({-4: 1, -2: -1})
>>> str(p), str(p.bar())
('v^-4 - v^-2', '-v^2 + v^4')
>>> residue_v0(LaurentPoly({-1: 1, -3: 1}))
1
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping

__all__ = [
    "LaurentPoly",
    "KLPoly",
    "V",
    "ONE",
    "ZERO",
    "bar",
    "residue_v0",
    "negative_part",
    "InexactDivision",
]


class InexactDivision(ArithmeticError):
    """Raised when an exact Laurent division leaves a remainder."""


class LaurentPoly:
    """Sparse element of ``Z[v, v^-1]``.

    Terms are stored as an exponent -> coefficient mapping with zero
    coefficients dropped, so the zero polynomial has empty support.
    Instances are immutable and hashable.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for e, c in items:
            if c:
                acc[e] = acc.get(e, 0) + c
        self._terms = {e: c for e, c in sorted(acc.items()) if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[int, int]) -> LaurentPoly:
        # caller guarantees: no zero coefficients
        obj = object.__new__(cls)
        obj._terms = dict(sorted(terms.items()))
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls._raw({exponent: coeff} if coeff else {})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls.monomial(0, c)

    # -- inspection --------------------------------------------------------

    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exponent: int) -> int:
        return self._terms.get(exponent, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        """Largest exponent of ``v``; raises on the zero polynomial."""
        if not self._terms:
            raise ValueError("degree of the zero polynomial")
        return max(self._terms)

    def low_degree(self) -> int:
        if not self._terms:
            raise ValueError("low degree of the zero polynomial")
        return min(self._terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()})
        other = _coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials have Laurent inverses")
            ((e, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only unit monomials have Laurent inverses")
            return LaurentPoly._raw({e * n: c ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``v^k``."""
        if not k:
            return self
        return LaurentPoly._raw({e + k: c for e, c in self._terms.items()})

    def divexact(self, divisor: LaurentPoly) -> LaurentPoly:
        """Exact quotient ``self / divisor``; :class:`InexactDivision` otherwise."""
        divisor = _coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero Laurent polynomial")
        rem = dict(self._terms)
        dtop = divisor.degree()
        dlow = divisor.low_degree()
        lead = divisor._terms[dtop]
        quot: dict[int, int] = {}
        while rem:
            top = max(rem)
            if top - dtop < min(rem) - dlow:
                raise InexactDivision(f"{self} is not divisible by {divisor}")
            c, r = divmod(rem[top], lead)
            if r:
                raise InexactDivision(f"{self} is not divisible by {divisor}")
            shift = top - dtop
            quot[shift] = c
            for e, dc in divisor._terms.items():
                s = rem.get(e + shift, 0) - c * dc
                if s:
                    rem[e + shift] = s
                else:
                    rem.pop(e + shift, None)
        return LaurentPoly._raw(quot)

    # -- involutions and extraction ---------------------------------------

    def bar(self) -> LaurentPoly:
        return LaurentPoly._raw({-e: c for e, c in self._terms.items()})

    def residue_v0(self) -> int:
        return self._terms.get(-1, 0)

    def negative_part(self) -> LaurentPoly:
        return LaurentPoly._raw({e: c for e, c in self._terms.items() if e < 0})

    def evaluate(self, v):
        return sum(c * v**e for e, c in self._terms.items())

    # -- comparison, hashing, rendering -------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return _render(self._terms.items(), "v")

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of ``str``: accepts e.g. ``"-v^-2 + 3v + 1"``."""
        return cls(_parse(text, "v"))


class KLPoly:
    """A polynomial in ``q = v^2`` with integer coefficients.

    ``coeffs[k]`` is the coefficient of ``q^k``; trailing zeros are stripped.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and not c[-1]:
            c.pop()
        self.coeffs = tuple(c)

    def degree(self) -> int:
        """Degree in ``q``; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly({2 * k: c for k, c in enumerate(self.coeffs)})

    def at_v_squared(self) -> LaurentPoly:
        return self.to_laurent()

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == ((other,) if other else ())
        if isinstance(other, KLPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"KLPoly({self})"

    def __str__(self):
        return _render(enumerate(self.coeffs), "q")

    @classmethod
    def parse(cls, text: str) -> KLPoly:
        terms = dict(_parse(text, "q"))
        if any(e < 0 for e in terms):
            raise ValueError(f"negative power of q in {text!r}")
        top = max(terms, default=-1)
        return cls(terms.get(k, 0) for k in range(top + 1))


def _coerce(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    return NotImplemented


def _render(items, var: str) -> str:
    parts = []
    for e, c in items:
        if not c:
            continue
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(?:([a-z])(?:\^(-?\d+))?)?")


def _parse(text: str, var: str) -> list[tuple[int, int]]:
    s = text.replace(" ", "").replace("*", "")
    if s in ("", "0"):
        return []
    out = []
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse {text!r}")
        sign, digits, name, exp = m.groups()
        if name is not None and name != var:
            raise ValueError(f"unexpected variable {name!r} in {text!r}")
        if not digits and name is None:
            raise ValueError(f"cannot parse {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        e = 0 if name is None else (int(exp) if exp is not None else 1)
        out.append((e, c))
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"cannot parse {text!r}")
    return out


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
V = LaurentPoly.monomial(1)


def bar(p: LaurentPoly) -> LaurentPoly:
    """The ring involution ``v -> v^-1``."""
    return p.bar()


def residue_v0(p: LaurentPoly) -> int:
    """Coefficient of ``v^-1``."""
    return p.residue_v0()


def negative_part(p: LaurentPoly) -> LaurentPoly:
    """Sum of the terms of strictly negative exponent."""
    return p.negative_part()
