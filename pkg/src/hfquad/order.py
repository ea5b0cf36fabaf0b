"""The order O = Z + f*O_K of conductor f in a quadratic field.

A few identifications are used throughout:

* O/fO_K is the image of Z in O_K/fO_K, so |(O/f)^x| = phi(f).
* A prime ideal of O not containing the conductor extends to a unique prime of
  O_K, so "every prime of O is inert in O_K" only needs checking for the
  rational primes p | f, where it means p is inert in K.
* Membership in O and in O_p depends only on residues modulo the conductor.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from sympy import factorint, totient

from .field import CF_ITERATION_CAP, FieldElement, QuadraticField, make_field, torsion_units, unit_group
from .ideals import Splitting, class_number, splitting_type
from .residue import (
    ENUMERATION_CAP,
    ResidueRing,
    global_unit_image,
    unit_count_formula,
    unit_group_order,
)

__all__ = [
    "QuadraticOrder",
    "Component",
    "PicardData",
    "SaturationResult",
    "make_order",
    "parse_order",
    "components",
    "unit_index",
    "order_unit",
    "picard_order",
    "spec_map_bijective",
    "saturated",
    "saturated_direct",
    "seminormal",
    "seminormal_by_definition",
    "power_in_order",
]


@dataclass(frozen=True)
class QuadraticOrder:
    field: QuadraticField
    f: int

    def __post_init__(self):
        if self.f < 1:
            raise ValueError("conductor must be a positive integer")

    @property
    def d(self) -> int:
        return self.field.d

    @property
    def is_maximal(self) -> bool:
        return self.f == 1

    def contains(self, x: FieldElement) -> bool:
        return x.b % self.f == 0

    def in_reg(self, x: FieldElement) -> bool:
        """x in Reg(O): invertible modulo the conductor (O/f = Z/f)."""
        if not self.contains(x):
            raise ValueError(f"{x} is not in the order of conductor {self.f}")
        return gcd(x.a, self.f) == 1

    def conductor_primes(self) -> dict[int, int]:
        return dict(sorted(factorint(self.f).items())) if self.f > 1 else {}

    def __str__(self):
        return f"d={self.d},f={self.f}"


def make_order(d: int, f: int = 1) -> QuadraticOrder:
    return QuadraticOrder(make_field(d), int(f))


def parse_order(text: str) -> QuadraticOrder:
    """Parse 'd=<int>,f=<int>'."""
    parts = dict(p.split("=", 1) for p in text.replace(" ", "").split(","))
    try:
        return make_order(int(parts["d"]), int(parts.get("f", 1)))
    except KeyError as exc:
        raise ValueError(f"cannot parse order {text!r}; expected 'd=<int>,f=<int>'") from exc


@dataclass(frozen=True)
class Component:
    p: int
    k: int  # exponent of p in f
    order: QuadraticOrder


def components(order: QuadraticOrder) -> list[Component]:
    """Irreducible components Z + p^k O_K, one per prime power p^k || f."""
    if order.f == 1:
        raise ValueError("maximal order has no components")
    return [Component(p, k, QuadraticOrder(order.field, p**k)) for p, k in order.conductor_primes().items()]


@lru_cache(maxsize=None)
def _unit_index(K: QuadraticField, f: int, cap: int) -> tuple[int, int]:
    """(index [O_K^x : O^x], exponent m with eps^m generating O^x mod torsion)."""
    if f == 1:
        return 1, 1
    in_order = [u for u in torsion_units(K) if u.b % f == 0]
    torsion_ratio = len(torsion_units(K)) // len(in_order)
    if not K.is_real:
        return torsion_ratio, 1
    eps = unit_group(K).fundamental_unit
    ring = ResidueRing(K, f)
    e = ring(eps.a, eps.b)
    y = e
    for m in range(1, cap + 1):
        if y.b == 0:
            return torsion_ratio * m, m
        y = y * e
    raise RuntimeError(f"no power eps^m in the order below m={cap}")


def unit_index(order: QuadraticOrder, cap: int = CF_ITERATION_CAP) -> int:
    return _unit_index(order.field, order.f, cap)[0]


def order_unit(order: QuadraticOrder) -> FieldElement | None:
    """Fundamental unit eta of O (real fields): eps^m for the least m with eps^m in O."""
    K = order.field
    if not K.is_real:
        return None
    m = _unit_index(K, order.f, CF_ITERATION_CAP)[1]
    return unit_group(K).fundamental_unit ** m


@dataclass(frozen=True)
class PicardData:
    h: int
    unit_index: int
    s: int
    pic_order: int
    residue_units: int  # |(O_K/f)^x|
    phi_f: int  # |(O/f)^x|


def picard_order(order: QuadraticOrder, *, enumerate_units: bool | None = None) -> PicardData:
    """|Pic(O)| = s*|Pic(O_K)| with s = |(O_K/f)^x| / (phi(f) [O_K^x : O^x])."""
    h = class_number(order.field).h
    ui = unit_index(order)
    if order.f == 1:
        return PicardData(h, 1, 1, h, 1, 1)
    ring = ResidueRing(order.field, order.f)
    if enumerate_units is False:
        nu = unit_count_formula(order.field, order.f)
    elif enumerate_units:
        nu = len(ring.units(cap=None))
    else:
        nu = unit_group_order(ring)
    phi = int(totient(order.f))
    if nu % (phi * ui):
        raise AssertionError(f"{order}: unit index does not divide the residue quotient")
    s = nu // (phi * ui)
    return PicardData(h, ui, s, s * h, nu, phi)


def spec_map_bijective(order: QuadraticOrder) -> bool:
    return all(splitting_type(order.field, p).variant is not Splitting.SPLIT for p in order.conductor_primes())


def _all_inert(order: QuadraticOrder) -> bool:
    return all(splitting_type(order.field, p).variant is Splitting.INERT for p in order.conductor_primes())


def saturated_direct(order: QuadraticOrder, cap: int = ENUMERATION_CAP) -> bool:
    """O*O_K^x = O_K checked on residues: each class mod f has a unit multiple in Z/f."""
    if order.f == 1:
        return True
    ring = ResidueRing(order.field, order.f)
    G = global_unit_image(ring)
    for r in ring.elements(cap):
        if not any((r * u).in_integers() for u in G):
            return False
    return True


@dataclass(frozen=True)
class SaturationResult:
    value: bool
    s: int
    all_inert: bool
    direct: bool | None


def saturated(order: QuadraticOrder, *, verify: bool = True) -> SaturationResult:
    """Condition O*O_K^x = O_K via s = 1 and all conductor primes inert.

    With verify=True the direct residue-orbit check also runs, and a
    disagreement raises: the two routes are equivalent.
    """
    s = picard_order(order).s
    inert = _all_inert(order)
    value = s == 1 and inert
    direct = None
    if verify and order.f <= ENUMERATION_CAP:
        direct = saturated_direct(order)
        if direct != value:
            raise AssertionError(f"{order}: saturation routes disagree (algebraic={value}, direct={direct})")
    return SaturationResult(value, s, inert, direct)


def seminormal(order: QuadraticOrder) -> bool:
    """Conductor ideal fO_K squarefree: f squarefree and no p | f ramified."""
    for p, k in order.conductor_primes().items():
        if k > 1 or splitting_type(order.field, p).variant is Splitting.RAMIFIED:
            return False
    return True


def seminormal_by_definition(order: QuadraticOrder, cap: int = ENUMERATION_CAP) -> bool:
    """No x in O_K \\ O with x^n in O for all large n, decided on residues mod f.

    The powers of a residue are eventually periodic; x^n lies in O for almost
    all n exactly when the whole cycle lies in Z/f.
    """
    if order.f == 1:
        return True
    ring = ResidueRing(order.field, order.f)
    for x in ring.elements(cap):
        if x.in_integers():
            continue
        seen: dict[tuple[int, int], int] = {}
        seq = []
        y = x
        while y.key() not in seen:
            seen[y.key()] = len(seq)
            seq.append(y)
            y = y * x
        cycle = seq[seen[y.key()]:]
        if all(z.in_integers() for z in cycle):
            return False
    return True


def power_in_order(order: QuadraticOrder, x: FieldElement, n_cap: int = 10**6) -> int | None:
    """Least n >= 1 with x^n in O, or None if there is none (up to n_cap)."""
    if order.contains(x):
        return 1
    ring = ResidueRing(order.field, order.f)
    r = ring(x.a, x.b)
    y = r
    seen = set()
    for n in range(1, n_cap + 1):
        if y.in_integers():
            return n
        if y.key() in seen:
            return None  # entered a cycle that avoids Z/f
        seen.add(y.key())
        y = y * r
    return None
