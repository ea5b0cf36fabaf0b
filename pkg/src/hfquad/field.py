"""Exact arithmetic in quadratic fields Q(sqrt d).

Elements are stored in the integral basis {1, w} of the maximal order, where
w = (1 + sqrt d)/2 if d = 1 (mod 4) and w = sqrt d otherwise.  In both cases
w satisfies w^2 = t*w + n with (t, n) = (1, (d-1)/4) or (0, d).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import isqrt

from sympy import factorint

__all__ = [
    "QuadraticField",
    "FieldElement",
    "UnitGroupData",
    "make_field",
    "parse_element",
    "fundamental_unit",
    "torsion_units",
    "unit_group",
    "is_squarefree",
    "CF_ITERATION_CAP",
]

CF_ITERATION_CAP = 10**6


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in factorint(abs(n)).values())


@dataclass(frozen=True)
class QuadraticField:
    d: int

    def __post_init__(self):
        if self.d in (0, 1):
            raise ValueError(f"d={self.d} does not define a quadratic field")
        if not is_squarefree(self.d):
            raise ValueError(f"d={self.d} is not squarefree")

    @property
    def t(self) -> int:
        """Trace of w."""
        return 1 if self.d % 4 == 1 else 0

    @property
    def n(self) -> int:
        """w^2 = t*w + n."""
        return (self.d - 1) // 4 if self.d % 4 == 1 else self.d

    @property
    def D(self) -> int:
        return self.d if self.d % 4 == 1 else 4 * self.d

    @property
    def omega_kind(self) -> str:
        return "(1+sqrt(d))/2" if self.d % 4 == 1 else "sqrt(d)"

    @property
    def is_real(self) -> bool:
        return self.d > 0

    def __call__(self, a: int, b: int = 0) -> "FieldElement":
        return FieldElement(self, int(a), int(b))

    def __repr__(self):
        return f"QuadraticField(d={self.d})"


def make_field(d: int) -> QuadraticField:
    return QuadraticField(int(d))


@dataclass(frozen=True)
class FieldElement:
    """a + b*w in the maximal order (integral elements only)."""

    field: QuadraticField = dc_field(repr=False)
    a: int
    b: int

    def _check(self, other):
        if isinstance(other, int):
            return FieldElement(self.field, other, 0)
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("operands belong to different fields")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, -self.a, -self.b)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        K = self.field
        a, b, c, e = self.a, self.b, other.a, other.b
        return FieldElement(K, a * c + b * e * K.n, a * e + b * c + b * e * K.t)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not integral in general")
        result = FieldElement(self.field, 1, 0)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "FieldElement":
        return FieldElement(self.field, self.a + self.b * self.field.t, -self.b)

    def norm(self) -> int:
        K = self.field
        return self.a * self.a + self.a * self.b * K.t - self.b * self.b * K.n

    def trace(self) -> int:
        return 2 * self.a + self.b * self.field.t

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def divide(self, other: "FieldElement") -> "FieldElement | None":
        """Exact quotient self/other if it is integral, else None."""
        other = self._check(other)
        m = other.norm()
        if m == 0:
            raise ZeroDivisionError("division by zero element")
        num = self * other.conj()
        if num.a % m or num.b % m:
            return None
        return FieldElement(self.field, num.a // m, num.b // m)

    def sign(self) -> int:
        """Sign of the real embedding with sqrt(d) > 0 (real fields only).

        Writes 2x = tr + b*sqrt(d) and compares squares, no floats.
        """
        if not self.field.is_real:
            raise ValueError("sign is only defined in real quadratic fields")
        A = self.trace()
        B = self.b
        d = self.field.d
        if B == 0:
            return (A > 0) - (A < 0)
        if A == 0 or (A > 0) == (B > 0):
            return 1 if B > 0 else -1
        # opposite signs: compare A^2 with B^2 d
        if A * A > B * B * d:
            return 1 if A > 0 else -1
        return 1 if B > 0 else -1

    def dominates_conjugate(self) -> bool:
        """|x| >= |conj x| in the real embedding.

        x - conj(x) = b*sqrt(d) and x + conj(x) = trace, so
        x^2 - conj(x)^2 = b*sqrt(d)*trace.
        """
        return self.b * self.trace() >= 0

    def key(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __str__(self):
        return f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*w"

    def __repr__(self):
        return f"FieldElement(d={self.field.d}, {self})"


_ELEMENT_RE = re.compile(r"^\s*([+-]?\d+)\s*([+-])\s*(\d+)\s*\*\s*w\s*$")


def parse_element(K: QuadraticField, text: str) -> FieldElement:
    """Parse 'a+b*w' (also a bare integer) into an element of K."""
    m = _ELEMENT_RE.match(text)
    if m:
        a = int(m.group(1))
        b = int(m.group(3)) * (1 if m.group(2) == "+" else -1)
        return K(a, b)
    s = text.strip()
    if re.fullmatch(r"[+-]?\d+", s):
        return K(int(s), 0)
    raise ValueError(f"cannot parse element {text!r}; expected 'a+b*w'")


@dataclass(frozen=True)
class UnitGroupData:
    torsion_order: int
    fundamental_unit: FieldElement | None


def torsion_units(K: QuadraticField) -> list[FieldElement]:
    if K.is_real:
        return [K(1), K(-1)]
    units = []
    for b in range(-2, 3):
        for a in range(-2, 3):
            if K(a, b).norm() == 1:
                units.append(K(a, b))
    return units


def _cf_setup(K: QuadraticField) -> tuple[int, int]:
    # w = (P0 + sqrt d)/Q0 with Q0 | d - P0^2
    return (1, 2) if K.t == 1 else (0, 1)


def fundamental_unit(K: QuadraticField, cap: int = CF_ITERATION_CAP) -> FieldElement:
    """Least unit > 1, from the continued fraction of w.

    Every unit eps > 1 is (p - q*t) + q*w for a convergent p/q of w, and the
    first convergent giving norm +-1 yields the fundamental one.
    """
    if not K.is_real:
        raise ValueError("imaginary field has no fundamental unit")
    d = K.d
    s = isqrt(d)
    P, Q = _cf_setup(K)
    p_prev, p = 0, 1
    q_prev, q = 1, 0
    for _ in range(cap):
        a = (P + s) // Q
        p_prev, p = p, a * p + p_prev
        q_prev, q = q, a * q + q_prev
        eps = K(p - q * K.t, q)
        if abs(eps.norm()) == 1 and eps.key() not in ((1, 0), (-1, 0)):
            return eps
        P = a * Q - P
        Q = (d - P * P) // Q
    raise RuntimeError(f"continued fraction for d={d} exceeded {cap} partial quotients")


@lru_cache(maxsize=None)
def unit_group(K: QuadraticField) -> UnitGroupData:
    tors = torsion_units(K)
    return UnitGroupData(len(tors), fundamental_unit(K) if K.is_real else None)
