"""Brute-force factorization in quadratic orders.

Works in the reduced monoid of O: nonzero elements up to O-units, each class
stored by a canonical representative.  Two independent mechanisms compute
sets of lengths:

* ``LengthSieve`` enumerates every class with |N| <= bound and, walking up
  the norms, multiplies finished classes by finished atoms.  A class that no
  product reaches is an atom.
* ``length_set`` recurses over the divisors of a single element, found from
  elements of O_K of each norm dividing N(x).

Real orders have infinite unit groups.  Canonical representatives there are
taken in the fundamental domain x > 0, 1 <= |x|/|conj x| < eta^2 for the
fundamental unit eta of O, decided with exact integer comparisons.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import isqrt

from sympy import divisors

from .field import FieldElement, QuadraticField, torsion_units, unit_group
from .ideals import elements_of_norm, reduce_real
from .order import QuadraticOrder, order_unit, unit_index

__all__ = [
    "OracleConfig",
    "AssocClass",
    "LengthSet",
    "WitnessResult",
    "canonical_associate",
    "order_units",
    "unit_coset_reps",
    "enumerate_classes",
    "LengthSieve",
    "atoms_up_to",
    "is_atom",
    "length_set",
    "hf_witness_search",
    "elasticity_estimate",
    "atoms_transfer_check",
]

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class OracleConfig:
    norm_bound: int = 10**4
    length_cap: int = 64


@dataclass(frozen=True)
class AssocClass:
    representative: FieldElement
    order: QuadraticOrder = dc_field(repr=False)

    @property
    def norm(self) -> int:
        return abs(self.representative.norm())


@dataclass(frozen=True)
class LengthSet:
    element: AssocClass
    lengths: frozenset[int]
    partial: bool = False

    @property
    def elasticity(self) -> Fraction:
        if not self.lengths:
            return Fraction(1)
        lo = min(self.lengths)
        if lo == 0:
            return Fraction(1)
        return Fraction(max(self.lengths), lo)

    def to_dict(self) -> dict:
        x = self.element.representative
        return {
            "element": str(x),
            "norm": x.norm(),
            "lengths": sorted(self.lengths),
            "elasticity": str(self.elasticity),
            "partial": self.partial,
        }


# raw (a, b) tuple arithmetic for the hot loops


def _mul(K: QuadraticField, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    a, b = x
    c, e = y
    be = b * e
    return (a * c + be * K.n, a * e + b * c + be * K.t)


def order_units(order: QuadraticOrder) -> list[FieldElement]:
    """Torsion part of O^x (all of O^x for imaginary fields)."""
    return [u for u in torsion_units(order.field) if order.contains(u)]


class _Canon:
    """Canonical associates in O, on raw tuples."""

    def __init__(self, order: QuadraticOrder):
        self.order = order
        K = self.K = order.field
        if K.is_real:
            self.eta = order_unit(order)
            self.units = None
        else:
            self.eta = None
            self.units = [u.key() for u in order_units(order)]

    def __call__(self, x: tuple[int, int]) -> tuple[int, int]:
        if self.units is not None:
            return max(_mul(self.K, u, x) for u in self.units)
        return reduce_real(self.K(*x), self.eta).key()


def canonical_associate(order: QuadraticOrder, x: FieldElement) -> AssocClass:
    """Lexicographically greatest (a, b) over the unit orbit (imaginary), or the
    fundamental-domain representative (real)."""
    if x.is_zero():
        raise ValueError("zero has no associate class")
    if not order.contains(x):
        raise ValueError(f"{x} is not in the order of conductor {order.f}")
    return AssocClass(order.field(*_Canon(order)(x.key())), order)


def unit_coset_reps(order: QuadraticOrder) -> list[FieldElement]:
    """Units of O_K covering every coset of O_K^x / O^x (with repetition allowed)."""
    K = order.field
    if not K.is_real:
        return torsion_units(K)
    eps = unit_group(K).fundamental_unit
    m = unit_index(order)
    return [eps**j for j in range(m)]


def _maximal_classes_up_to(K: QuadraticField, bound: int) -> list[tuple[int, int]]:
    """One representative per O_K-associate class with 1 <= |N| <= bound."""
    out = set()
    if not K.is_real:
        absd = -K.d
        tors = [u.key() for u in torsion_units(K)]
        bmax = isqrt(4 * bound // absd) + 1
        for b in range(-bmax, bmax + 1):
            if K.t:
                rem = 4 * bound - absd * b * b
                if rem < 0:
                    continue
                T = isqrt(rem)
                for tr in range(-T, T + 1):
                    if (tr - b) % 2:
                        continue
                    x = ((tr - b) // 2, b)
                    if x != (0, 0):
                        out.add(max(_mul(K, u, x) for u in tors))
            else:
                rem = bound - absd * b * b
                if rem < 0:
                    continue
                A = isqrt(rem)
                for a in range(-A, A + 1):
                    if (a, b) != (0, 0):
                        out.add(max(_mul(K, u, (a, b)) for u in tors))
        return sorted(out)

    d = K.d
    eps = unit_group(K).fundamental_unit
    inv = eps.conj() * eps.norm()
    E = eps.a + eps.b * (isqrt(d) + 2)
    bmax = ((E + 1) * (isqrt(bound) + 1)) // isqrt(d) + 1
    scale = 4 if K.t else 1
    for b in range(0, bmax + 1):
        db2 = d * b * b
        lo_sq = db2 - scale * bound
        lo = isqrt(lo_sq) if lo_sq > 0 else 0
        hi = isqrt(db2 + scale * bound)
        for r in range(lo, hi + 1):
            if abs(r * r - db2) > scale * bound or r * r == db2:
                continue
            if K.t:
                if (r - b) % 2:
                    continue
                x = K((r - b) // 2, b)
            else:
                x = K(r, b)
            # keep only fundamental-domain elements: x > 0, 1 <= x/|x'| < eps^2
            if x.sign() <= 0 or not x.dominates_conjugate() or (x * inv).dominates_conjugate():
                continue
            out.add(x.key())
    return sorted(out)


def enumerate_classes(order: QuadraticOrder, bound: int) -> dict[tuple[int, int], int]:
    """Canonical representatives of all O-associate classes with |N| <= bound,
    mapped to their absolute norm."""
    K = order.field
    canon = _Canon(order)
    cosets = [u.key() for u in unit_coset_reps(order)]
    f = order.f
    out: dict[tuple[int, int], int] = {}
    for g in _maximal_classes_up_to(K, bound):
        n = abs(K(*g).norm())
        for u in cosets:
            y = _mul(K, u, g)
            if y[1] % f == 0:
                out.setdefault(canon(y), n)
    return out


class LengthSieve:
    """Sets of lengths for every associate class of O with |N| <= bound."""

    def __init__(self, order: QuadraticOrder, bound: int, *, length_cap: int = 64, stop_at_witness: bool = False):
        self.order = order
        self.bound = bound
        self.length_cap = length_cap
        self.classes = enumerate_classes(order, bound)
        self.L: dict[tuple[int, int], frozenset[int]] = {}
        self.atoms: list[tuple[int, int]] = []
        self.witness: tuple[int, int] | None = None
        self.truncated = False
        self.levels_done = 0
        self._run(stop_at_witness)

    def _run(self, stop_at_witness: bool):
        K = self.order.field
        canon = _Canon(self.order)
        B = self.bound
        by_level: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for key, n in self.classes.items():
            by_level[n].append(key)
        levels = sorted(by_level)
        atoms_by_level: dict[int, list[tuple[int, int]]] = defaultdict(list)
        pending: dict[tuple[int, int], set[int]] = defaultdict(set)
        L = self.L
        done_levels: list[int] = []

        def push(a, z):
            y = canon(_mul(K, a, z))
            if y not in self.classes:
                raise AssertionError(f"class enumeration incomplete: {y} missing")
            pending[y].update(1 + l for l in L[z])

        for n in levels:
            keys = sorted(by_level[n])
            if n == 1:
                for key in keys:
                    L[key] = frozenset({0})
                continue
            for key in keys:
                got = pending.pop(key, None)
                if got is None:
                    L[key] = frozenset({1})
                    atoms_by_level[n].append(key)
                    self.atoms.append(key)
                else:
                    if max(got) > self.length_cap:
                        self.truncated = True
                        got = {x for x in got if x <= self.length_cap}
                    L[key] = frozenset(got)
                    if len(got) > 1 and self.witness is None:
                        self.witness = key
            self.levels_done = n
            if stop_at_witness and self.witness is not None:
                return
            done_levels.append(n)
            if 2 * n > B:
                continue
            lim = B // n
            for a in atoms_by_level[n]:
                for m in done_levels:
                    if m > lim or m > n:
                        break
                    for z in by_level[m]:
                        push(a, z)
            for m in done_levels:
                if m >= n or m > lim:
                    break
                for a in atoms_by_level[m]:
                    for z in keys:
                        push(a, z)

    def length_set(self, key: tuple[int, int]) -> LengthSet:
        x = self.order.field(*key)
        return LengthSet(AssocClass(x, self.order), self.L[key], self.truncated)

    def elasticity(self) -> Fraction:
        best = Fraction(1)
        for key, ls in self.L.items():
            if ls and min(ls) > 0:
                best = max(best, Fraction(max(ls), min(ls)))
        return best


def atoms_up_to(order: QuadraticOrder, norm_bound: int) -> list[AssocClass]:
    if norm_bound < 2:
        raise ValueError("norm bound must be at least 2")
    sieve = LengthSieve(order, norm_bound)
    K = order.field
    return [AssocClass(K(*k), order) for k in sorted(sieve.atoms, key=lambda k: (sieve.classes[k], k))]


def _factor_pairs(order: QuadraticOrder, x: FieldElement):
    """All (y, z) with x = y*z, y and z nonunits of O; y runs over canonical classes."""
    K = order.field
    N = abs(x.norm())
    cosets = unit_coset_reps(order)
    canon = _Canon(order)
    seen = set()
    for n in divisors(N):
        if n == 1 or n == N:
            continue
        for g in elements_of_norm(K, n):
            if x.divide(g) is None:
                continue
            for u in cosets:
                y = u * g
                if not order.contains(y):
                    continue
                z = x.divide(y)
                if z is None or not order.contains(z):
                    continue
                key = canon(y.key())
                if key in seen:
                    continue
                seen.add(key)
                yk = K(*key)
                yield yk, x.divide(yk)


def is_atom(order: QuadraticOrder, x: FieldElement) -> bool:
    """x is a nonunit of O with no factorization into two nonunits."""
    if abs(x.norm()) == 1:
        return False
    return next(_factor_pairs(order, x), None) is None


def length_set(order: QuadraticOrder, x: FieldElement, length_cap: int = 64, *, trace: list | None = None) -> LengthSet:
    """L(x) by memoized recursion over atom divisors."""
    if x.is_zero():
        raise ValueError("zero has no factorizations")
    if not order.contains(x):
        raise ValueError(f"{x} is not in the order: {order.f} does not divide the w-coordinate {x.b}")
    canon = _Canon(order)
    memo: dict[tuple[int, int], frozenset[int]] = {}
    atom_memo: dict[tuple[int, int], bool] = {}
    partial = False

    def atom(y: FieldElement) -> bool:
        key = canon(y.key())
        if key not in atom_memo:
            atom_memo[key] = is_atom(order, y)
        return atom_memo[key]

    def rec(y: FieldElement, depth: int) -> frozenset[int]:
        nonlocal partial
        key = canon(y.key())
        if key in memo:
            return memo[key]
        if abs(y.norm()) == 1:
            memo[key] = frozenset({0})
            return memo[key]
        if depth > length_cap:
            partial = True
            return frozenset()
        out: set[int] = set()
        found = False
        for a, z in _factor_pairs(order, y):
            found = True
            if atom(a):
                out.update(1 + l for l in rec(z, depth + 1))
                if trace is not None:
                    trace.append((str(y), str(a), str(z)))
        if not found:
            out = {1}
        memo[key] = frozenset(out)
        return memo[key]

    lengths = rec(x, 0)
    return LengthSet(canonical_associate(order, x), lengths, partial)


@dataclass
class WitnessResult:
    order: QuadraticOrder
    bound: int
    witness: FieldElement | None
    lengths: frozenset[int] | None
    truncated: bool = False

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        return {
            "bound": self.bound,
            "witness": str(self.witness) if self.witness is not None else None,
            "norm": abs(self.witness.norm()) if self.witness is not None else None,
            "lengths": sorted(self.lengths) if self.lengths else None,
        }


def hf_witness_search(order: QuadraticOrder, norm_bound: int = 10**4, length_cap: int = 64) -> WitnessResult:
    """First element (by norm) with two factorization lengths, or a definite
    'none up to norm_bound'."""
    sieve = LengthSieve(order, norm_bound, length_cap=length_cap, stop_at_witness=True)
    if sieve.witness is None:
        return WitnessResult(order, norm_bound, None, None, sieve.truncated)
    x = order.field(*sieve.witness)
    return WitnessResult(order, norm_bound, x, sieve.L[sieve.witness], sieve.truncated)


def elasticity_estimate(order: QuadraticOrder, norm_bound: int) -> Fraction:
    """max rho(a) over classes with |N| <= norm_bound: a lower bound for rho(O)."""
    return LengthSieve(order, norm_bound).elasticity()


def atoms_transfer_check(order: QuadraticOrder, norm_bound: int) -> bool:
    """Every atom of O up to the bound is an atom of O_K.

    Only meaningful when the class number is at most 2 and O*O_K^x = O_K.
    """
    from .checker import theorem_verdict

    v = theorem_verdict(order)
    if not (v.cond_i and v.cond_ii):
        raise ValueError(f"{order}: conditions (i) and (ii) must hold for the atom-transfer criterion")
    maximal = QuadraticOrder(order.field, 1)
    return all(is_atom(maximal, a.representative) for a in atoms_up_to(order, norm_bound))
