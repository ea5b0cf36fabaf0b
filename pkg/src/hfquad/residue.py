"""Finite rings O_K/mO_K and their unit groups."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from math import gcd

from sympy import factorint

from .field import FieldElement, QuadraticField, unit_group, torsion_units
from .ideals import kronecker

__all__ = [
    "ENUMERATION_CAP",
    "ResidueRing",
    "ResidueElem",
    "reduce",
    "unit_group_order",
    "unit_count_formula",
    "global_unit_image",
    "closure",
]

ENUMERATION_CAP = 60


@dataclass(frozen=True)
class ResidueRing:
    field: QuadraticField
    m: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError("modulus must be at least 2")

    def __call__(self, a: int, b: int = 0) -> "ResidueElem":
        return ResidueElem(self, a % self.m, b % self.m)

    def one(self) -> "ResidueElem":
        return self(1, 0)

    def elements(self, cap: int | None = ENUMERATION_CAP):
        if cap is not None and self.m > cap:
            raise ValueError(f"modulus {self.m} exceeds enumeration cap {cap}")
        for a in range(self.m):
            for b in range(self.m):
                yield ResidueElem(self, a, b)

    def units(self, cap: int | None = ENUMERATION_CAP) -> list["ResidueElem"]:
        return [x for x in self.elements(cap) if x.is_unit()]

    def integers(self) -> list["ResidueElem"]:
        """Image of Z, i.e. of the order Z + mO_K."""
        return [self(a, 0) for a in range(self.m)]

    def integer_units(self) -> list["ResidueElem"]:
        return [self(a, 0) for a in range(self.m) if gcd(a, self.m) == 1]


@dataclass(frozen=True)
class ResidueElem:
    ring: ResidueRing = dc_field(repr=False)
    a: int
    b: int

    def __mul__(self, other: "ResidueElem") -> "ResidueElem":
        K = self.ring.field
        m = self.ring.m
        a, b, c, e = self.a, self.b, other.a, other.b
        return ResidueElem(self.ring, (a * c + b * e * K.n) % m, (a * e + b * c + b * e * K.t) % m)

    def __add__(self, other: "ResidueElem") -> "ResidueElem":
        m = self.ring.m
        return ResidueElem(self.ring, (self.a + other.a) % m, (self.b + other.b) % m)

    def __pow__(self, k: int) -> "ResidueElem":
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def norm(self) -> int:
        K = self.ring.field
        return (self.a * self.a + self.a * self.b * K.t - self.b * self.b * K.n) % self.ring.m

    def is_unit(self) -> bool:
        return gcd(self.norm(), self.ring.m) == 1

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def in_integers(self) -> bool:
        """Lies in the image of Z (the subring (Z + mO_K)/mO_K)."""
        return self.b == 0

    def key(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __str__(self):
        return f"{self.a}+{self.b}*w mod {self.ring.m}"


def reduce(x: FieldElement, m: int) -> ResidueElem:
    return ResidueRing(x.field, m)(x.a, x.b)


def unit_count_formula(K: QuadraticField, m: int) -> int:
    """m^2 prod_{p | m} (1 - 1/p)(1 - chi(p)/p), in integers."""
    out = m * m
    for p in factorint(m):
        out = out // (p * p) * (p - 1) * (p - kronecker(K.D, p))
    return out


def unit_group_order(ring: ResidueRing, *, enumerate_: bool | None = None) -> int:
    """|(O_K/m)^x|; by the Euler product, cross-checked by enumeration when small."""
    n = unit_count_formula(ring.field, ring.m)
    if enumerate_ is None:
        enumerate_ = ring.m <= ENUMERATION_CAP
    if enumerate_:
        counted = len(ring.units(cap=None))
        if counted != n:
            raise AssertionError(f"unit count mismatch mod {ring.m}: {counted} != {n}")
    return n


def closure(gens: list[ResidueElem]) -> list[ResidueElem]:
    """Multiplicative closure of a set of units (a finite subgroup)."""
    if not gens:
        raise ValueError("need at least one generator")
    ring = gens[0].ring
    seen = {ring.one().key(): ring.one()}
    frontier = [ring.one()]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y.key() not in seen:
                    seen[y.key()] = y
                    nxt.append(y)
        frontier = nxt
    return sorted(seen.values(), key=lambda e: e.key())


@lru_cache(maxsize=None)
def _global_unit_image(K: QuadraticField, m: int) -> tuple[ResidueElem, ...]:
    ring = ResidueRing(K, m)
    gens = [ring(u.a, u.b) for u in torsion_units(K)]
    eps = unit_group(K).fundamental_unit
    if eps is not None:
        gens.append(ring(eps.a, eps.b))
    return tuple(closure(gens))


def global_unit_image(ring: ResidueRing) -> list[ResidueElem]:
    """The subgroup of (O_K/m)^x generated by the reductions of O_K^x."""
    return list(_global_unit_image(ring.field, ring.m))
