"""Ideals of the maximal order: prime splitting, factorization of principal
ideals, class numbers by reduced forms, and principality by norm-form search.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd, isqrt

from sympy import factorint, isprime, sqrt_mod

from .field import FieldElement, QuadraticField, torsion_units, unit_group

__all__ = [
    "principal_ideal",
    "kronecker",
    "IdealHNF",
    "Splitting",
    "PrimeSplitting",
    "ClassGroupData",
    "splitting_type",
    "prime_above",
    "factor_principal_ideal",
    "valuation",
    "elements_of_norm",
    "class_number",
    "is_principal",
]


def kronecker(D: int, p: int) -> int:
    """Kronecker symbol (D|p) for a prime p."""
    if p == 2:
        if D % 2 == 0:
            return 0
        return 1 if D % 8 in (1, 7) else -1
    r = pow(D % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


@dataclass(frozen=True)
class IdealHNF:
    """The Z-module a*Z + (b + c*w)*Z."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.c <= 0 or not 0 <= self.b < self.a:
            raise ValueError(f"not in Hermite normal form: {self}")
        if self.a % self.c or self.b % self.c:
            raise ValueError(f"c must divide a and b: {self}")

    def norm(self) -> int:
        return self.a * self.c

    def contains(self, x: FieldElement) -> bool:
        if x.b % self.c:
            return False
        return (x.a - (x.b // self.c) * self.b) % self.a == 0

    def __str__(self):
        return f"({self.a}, {self.b}+{self.c}*w)"


class Splitting(str, Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class PrimeSplitting:
    p: int
    variant: Splitting
    primes_above: tuple[IdealHNF, ...]
    # residues r with w = r mod P, one per prime above (empty when inert)
    roots: tuple[int, ...] = ()


def _roots_mod_p(K: QuadraticField, p: int) -> list[int]:
    """Roots of x^2 - t x - n modulo p."""
    if p == 2:
        return [r for r in range(2) if (r * r - K.t * r - K.n) % 2 == 0]
    # (2x - t)^2 = D
    s = sqrt_mod(K.D % p, p, all_roots=True) or []
    inv2 = pow(2, -1, p)
    return sorted({((K.t + r) * inv2) % p for r in s})


@lru_cache(maxsize=None)
def splitting_type(K: QuadraticField, p: int) -> PrimeSplitting:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    chi = kronecker(K.D, p)
    if chi == -1:
        return PrimeSplitting(p, Splitting.INERT, (IdealHNF(p, 0, p),))
    roots = _roots_mod_p(K, p)
    ideals = tuple(IdealHNF(p, (-r) % p, 1) for r in roots)
    variant = Splitting.SPLIT if chi == 1 else Splitting.RAMIFIED
    assert len(roots) == (2 if chi == 1 else 1), (K, p, roots)
    return PrimeSplitting(p, variant, ideals, tuple(roots))


def prime_above(K: QuadraticField, p: int, index: int = 0) -> IdealHNF:
    return splitting_type(K, p).primes_above[index]


def _vp(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def valuation(x: FieldElement, P: IdealHNF) -> int:
    """v_P(x) for a nonzero x and a prime ideal P given by its HNF."""
    if x.is_zero():
        raise ValueError("valuation of zero")
    K = x.field
    p = P.a
    spl = splitting_type(K, p)
    content = min(_vp(x.a, p) if x.a else 10**9, _vp(x.b, p) if x.b else 10**9)
    if spl.variant is Splitting.INERT:
        return content
    N = abs(x.norm())
    if spl.variant is Splitting.RAMIFIED:
        return _vp(N, p)
    # split: after removing the p-content, x lies in at most one prime above p
    y_a, y_b = x.a // p**content, x.b // p**content
    rest = _vp(abs(K(y_a, y_b).norm()), p)
    r = spl.roots[spl.primes_above.index(P)]
    in_P = (y_a + y_b * r) % p == 0
    return content + (rest if in_P else 0)


def _egcd(x: int, y: int) -> tuple[int, int, int]:
    # u*x + v*y = g = gcd(x, y) >= 0
    u0, v0, u1, v1 = 1, 0, 0, 1
    while y:
        q, r = divmod(x, y)
        x, y = y, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return (u0, v0, x) if x >= 0 else (-u0, -v0, -x)


def principal_ideal(x: FieldElement) -> IdealHNF:
    """Hermite normal form of x*O_K, spanned by x and x*w."""
    if x.is_zero():
        raise ValueError("zero ideal")
    K = x.field
    v1 = (x.a, x.b)
    v2 = (x.b * K.n, x.a + x.b * K.t)
    u, v, c = _egcd(v1[1], v2[1])
    b0 = u * v1[0] + v * v2[0]
    a = abs(x.norm()) // c
    return IdealHNF(a, b0 % a, c)


def factor_principal_ideal(x: FieldElement) -> list[tuple[IdealHNF, int]]:
    """Prime ideal factorization of x*O_K as (prime, multiplicity) pairs."""
    if x.is_zero():
        raise ValueError("zero element has no ideal factorization")
    K = x.field
    out = []
    for p in sorted(factorint(abs(x.norm()))):
        for P in splitting_type(K, p).primes_above:
            v = valuation(x, P)
            if v:
                out.append((P, v))
    return out


@lru_cache(maxsize=4096)
def elements_of_norm(K: QuadraticField, n: int) -> tuple[FieldElement, ...]:
    """One representative per O_K-associate class of elements with |N| = n.

    Imaginary: the norm form is definite, so the search box is finite.
    Real: representatives x > 0 with |x| >= |conj x| and |x| < eps^2 |conj x|,
    which forces b >= 0, trace >= 0 and b*sqrt(d) < (eps + 1) sqrt(n).
    """
    if n <= 0:
        raise ValueError("norm must be positive")
    out: dict[tuple[int, int], FieldElement] = {}
    if not K.is_real:
        absd = -K.d
        bmax = isqrt(4 * n // absd) + 1
        tors = torsion_units(K)
        for b in range(-bmax, bmax + 1):
            # 4N = tr^2 + |d| b^2 (t=1) or N = a^2 + |d| b^2 (t=0)
            if K.t:
                rem = 4 * n - absd * b * b
                if rem < 0:
                    continue
                tr = isqrt(rem)
                if tr * tr != rem:
                    continue
                cands = {tr, -tr}
                for T in cands:
                    if (T - b) % 2 == 0:
                        x = K((T - b) // 2, b)
                        out.setdefault(_lexmax(x, tors).key(), _lexmax(x, tors))
            else:
                rem = n - absd * b * b
                if rem < 0:
                    continue
                a = isqrt(rem)
                if a * a != rem:
                    continue
                for A in {a, -a}:
                    x = K(A, b)
                    out.setdefault(_lexmax(x, tors).key(), _lexmax(x, tors))
        return tuple(sorted(out.values(), key=lambda e: e.key()))

    d = K.d
    eps = unit_group(K).fundamental_unit
    # integer upper bound for eps: eps <= a + b*(isqrt(d)+2)
    E = eps.a + eps.b * (isqrt(d) + 2)
    bmax = ((E + 1) * (isqrt(n) + 1)) // isqrt(d) + 1
    for b in range(0, bmax + 1):
        # tr^2 - d b^2 = 4 N(x) when t = 1, a^2 - d b^2 = N(x) when t = 0
        for sgn in (1, -1):
            if K.t:
                target = d * b * b + sgn * 4 * n
            else:
                target = d * b * b + sgn * n
            if target < 0:
                continue
            r = isqrt(target)
            if r * r != target:
                continue
            if K.t:
                if (r - b) % 2:
                    continue
                x = K((r - b) // 2, b)
            else:
                x = K(r, b)
            y = reduce_real(x, eps)
            out.setdefault(y.key(), y)
    return tuple(sorted(out.values(), key=lambda e: (e.b, e.a)))


def _lexmax(x: FieldElement, units) -> FieldElement:
    return max((u * x for u in units), key=lambda e: e.key())


def reduce_real(x: FieldElement, unit: FieldElement) -> FieldElement:
    """The associate y = +-unit^j x with y > 0 and 1 <= |y|/|conj y| < unit^2."""
    if x.is_zero():
        raise ValueError("zero has no associates")
    inv = unit.conj() * unit.norm()  # unit^-1
    y = x
    while not y.dominates_conjugate():
        y = y * unit
    while (y * inv).dominates_conjugate():
        y = y * inv
    return y if y.sign() > 0 else -y


@dataclass(frozen=True)
class ClassGroupData:
    h: int
    representatives: tuple[tuple[int, int, int], ...]
    narrow_h: int | None = None


def _reduced_forms_imaginary(D: int) -> list[tuple[int, int, int]]:
    forms = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a:
                continue
            if c == a and b < 0:
                continue
            if gcd(gcd(a, b), c) == 1:
                forms.append((a, b, c))
        a += 1
    return forms


def _reduced_forms_real(D: int) -> list[tuple[int, int, int]]:
    # reduced: 0 < b < sqrt D and sqrt D - b < 2|a| < sqrt D + b
    s = isqrt(D)
    forms = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        num = b * b - D
        for A in range((s - b + 2) // 2, (s + b) // 2 + 1):
            if 2 * A < s - b + 1 or 2 * A > s + b:
                continue
            for a in (A, -A):
                if num % (4 * a):
                    continue
                c = num // (4 * a)
                if gcd(gcd(abs(a), b), abs(c)) == 1:
                    forms.append((a, b, c))
    return forms


def _rho(form: tuple[int, int, int], D: int) -> tuple[int, int, int]:
    a, b, c = form
    s = isqrt(D)
    m = 2 * abs(c)
    r = s - ((s + b) % m)
    return (c, r, (r * r - D) // (4 * c))


@lru_cache(maxsize=None)
def class_number(K: QuadraticField) -> ClassGroupData:
    """|Pic(O_K)| from reduced binary quadratic forms of discriminant D.

    Real fields: cycles of reduced indefinite forms count narrow classes;
    the wide class number halves that unless the fundamental unit has norm -1.
    """
    D = K.D
    if D < 0:
        forms = _reduced_forms_imaginary(D)
        return ClassGroupData(len(forms), tuple(forms))
    forms = _reduced_forms_real(D)
    remaining = set(forms)
    cycles = []
    while remaining:
        start = min(remaining)
        cyc = [start]
        remaining.discard(start)
        g = _rho(start, D)
        while g != start:
            if g not in remaining:
                raise AssertionError(f"rho left the reduced set at {g}")
            remaining.discard(g)
            cyc.append(g)
            g = _rho(g, D)
        cycles.append(min(cyc))
    narrow = len(cycles)
    if unit_group(K).fundamental_unit.norm() == -1:
        h = narrow
    else:
        h = narrow // 2
    return ClassGroupData(h, tuple(sorted(cycles)), narrow)


def is_principal(K: QuadraticField, ideal: IdealHNF) -> FieldElement | None:
    """A generator of the ideal, or None when it is not principal."""
    for g in elements_of_norm(K, ideal.norm()):
        if ideal.contains(g):
            return g
    return None
