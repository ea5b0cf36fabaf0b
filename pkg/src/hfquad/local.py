"""Local orders O_p at conductor primes, computed in finite quotient rings.

For p | f not split, let P be the prime of O_K above p, e = v_p(f) and
k = v_P(fO_K) (k = e if p is inert, 2e if ramified).  Localizing at p inverts
every integer prime to p, so O_p = Z_(p) + p^e (O_K)_P and membership of a
P-adic unit multiple only depends on its residue modulo p^e.  With a fixed
uniformizer pi of (O_K)_P,

    U_i = { u in (O_K/p^e)^x : pi^i u lies in the image of Z }

and the reduced local monoid is the union of pi^i * (U_i / U_0), where U_0 is
the image of (Z/p^e)^x.  Everything below (exponent, V chain, atom
valuations) is read off these finite sets.

Note: the displayed quotient definition of the U-bar sets in the source
material reads ``p u`` where ``p^i u`` is evidently intended; the U_i above
follow the ``p^i u in O_p`` definition.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from .field import FieldElement, QuadraticField, make_field
from .ideals import Splitting, is_principal, splitting_type, valuation
from .order import QuadraticOrder
from .residue import ENUMERATION_CAP, ResidueElem, ResidueRing

__all__ = [
    "LocalProfile",
    "local_profile",
    "local_half_factorial",
    "criterion_b",
    "criterion_c",
    "atom_valuations",
    "atom_valuations_from_chain",
    "prop_3_3_bound",
    "condition_iii",
    "default_uniformizer",
]


class _UnitQuotient:
    """(O_K/p^e)^x modulo the image of (Z/p^e)^x, with a coset table."""

    def __init__(self, K: QuadraticField, pe: int, cap: int | None):
        self.ring = ResidueRing(K, pe)
        units = self.ring.units(cap)
        ints = self.ring.integer_units()
        self.coset_of: dict[tuple[int, int], int] = {}
        self.reps: list[ResidueElem] = []
        self.members: list[list[ResidueElem]] = []
        for u in units:
            if u.key() in self.coset_of:
                continue
            idx = len(self.reps)
            self.reps.append(u)
            coset = {(u * c).key(): u * c for c in ints}
            self.members.append(list(coset.values()))
            for key in coset:
                self.coset_of[key] = idx
        self.units = units
        self.order = len(self.reps)
        self._table: list[list[int]] | None = None

    def mul(self, i: int, j: int) -> int:
        if self._table is None:
            n = self.order
            self._table = [[self.coset_of[(self.reps[x] * self.reps[y]).key()] for y in range(n)] for x in range(n)]
        return self._table[i][j]

    def product(self, A: frozenset[int], B: frozenset[int]) -> frozenset[int]:
        return frozenset(self.mul(a, b) for a in A for b in B)

    @property
    def full(self) -> frozenset[int]:
        return frozenset(range(self.order))


@lru_cache(maxsize=256)
def _quotient(K: QuadraticField, pe: int, cap: int | None) -> _UnitQuotient:
    return _UnitQuotient(K, pe, None if cap is None or pe > cap else cap)


def default_uniformizer(K: QuadraticField, p: int) -> FieldElement:
    """p itself if p is inert, otherwise the HNF generator b + w of P."""
    spl = splitting_type(K, p)
    if spl.variant is Splitting.INERT:
        return K(p, 0)
    if spl.variant is Splitting.SPLIT:
        raise ValueError(f"{p} splits in Q(sqrt {K.d}): localization not a DVR overring")
    P = spl.primes_above[0]
    for j in range(p + 1):
        pi = K(P.b + j * p, 1)
        if valuation(pi, P) == 1:
            return pi
    raise AssertionError(f"no uniformizer found above {p}")


@dataclass(frozen=True)
class LocalProfile:
    d: int
    f: int
    p: int
    variant: Splitting
    e: int  # exponent of p in f
    k: int  # v_P of the conductor ideal
    alpha: int
    uniformizer: tuple[int, int]
    quotient_order: int  # |(O_K/p^e)^x / (Z/p^e)^x|
    ubar_chain: tuple[frozenset[int], ...]  # i = 0..k, coset indices
    v_chain: tuple[frozenset[tuple[int, int]], ...]  # i = 0..k, subsets of the residue field
    residue_field_size: int
    atom_valuations: frozenset[int]
    principal: bool
    route: str = dc_field(default="component", compare=False)

    def ubar(self, i: int) -> frozenset[int]:
        if i < len(self.ubar_chain):
            return self.ubar_chain[i]
        return frozenset(range(self.quotient_order))

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "variant": self.variant.value,
            "e": self.e,
            "k": self.k,
            "alpha": self.alpha,
            "uniformizer": f"{self.uniformizer[0]}+{self.uniformizer[1]}*w",
            "quotient_order": self.quotient_order,
            "ubar_sizes": [len(u) for u in self.ubar_chain],
            "v_sizes": [len(v) for v in self.v_chain],
            "residue_field_size": self.residue_field_size,
            "atom_valuations": sorted(self.atom_valuations),
            "principal": self.principal,
        }


def _kbar_reduce(K: QuadraticField, p: int, u: ResidueElem, variant: Splitting, root: int) -> tuple[int, int]:
    if variant is Splitting.INERT:
        return (u.a % p, u.b % p)
    return ((u.a + u.b * root) % p, 0)


def _kbar_mul(K: QuadraticField, p: int, x: tuple[int, int], y: tuple[int, int]) -> tuple[int, int]:
    a, b = x
    c, e = y
    return ((a * c + b * e * K.n) % p, (a * e + b * c + b * e * K.t) % p)


def _ubar_sets_component(Q: _UnitQuotient, pi: ResidueElem, k: int) -> list[frozenset[int]]:
    chain = []
    pw = Q.ring.one()
    for _ in range(k + 1):
        chain.append(frozenset(Q.coset_of[u.key()] for u in Q.units if (pw * u).in_integers()))
        pw = pw * pi
    return chain


def _ubar_sets_via_order(order: QuadraticOrder, p: int, e: int, pi: FieldElement, Q: _UnitQuotient, k: int, cap):
    """Same chain computed modulo the full conductor f.

    An integer c = 1 (mod p^e), c = 0 (mod f/p^e) lies in O outside p, so
    y in O_p iff c*y in O; units mod f are then projected to mod p^e.
    """
    f = order.f
    pe = p**e
    m = f // pe
    c = m * pow(m, -1, pe) % f
    ring = ResidueRing(order.field, f)
    units = ring.units(cap)
    cr = ring(c, 0)
    pir = ring(pi.a, pi.b)
    chain = []
    pw = ring.one()
    for _ in range(k + 1):
        cp = cr * pw
        chain.append(frozenset(Q.coset_of[(u.a % pe, u.b % pe)] for u in units if (cp * u).in_integers()))
        pw = pw * pir
    return chain


def atom_valuations_from_chain(ubar, full: frozenset[int], product, alpha: int) -> frozenset[int]:
    """Valuations i in [1, 2*alpha - 1] at which the reduced local monoid has atoms.

    pi^i u is an atom iff u is not in U_j * U_{i-j} for any 0 < j < i.  For
    i >= 2*alpha every pi^i u = (pi^alpha u)(pi^(i-alpha)) splits, so the
    search stops at 2*alpha - 1.
    """
    out = set()
    for i in range(1, 2 * max(alpha, 1)):
        Ui = ubar(i)
        if not Ui:
            continue
        covered: set[int] = set()
        for j in range(1, i // 2 + 1):
            covered |= product(ubar(j), ubar(i - j))
            if Ui <= covered:
                break
        if not Ui <= covered:
            out.add(i)
    return frozenset(out)


def local_profile(
    order: QuadraticOrder,
    p: int,
    *,
    uniformizer: FieldElement | None = None,
    cap: int | None = ENUMERATION_CAP,
) -> LocalProfile:
    K = order.field
    primes = order.conductor_primes()
    if p not in primes:
        raise ValueError(f"{p} does not divide the conductor {order.f}")
    spl = splitting_type(K, p)
    if spl.variant is Splitting.SPLIT:
        raise ValueError(f"{p} splits in Q(sqrt {K.d}): localization not a DVR overring")
    e = primes[p]
    k = e if spl.variant is Splitting.INERT else 2 * e
    pe = p**e
    P = spl.primes_above[0]
    pi = uniformizer if uniformizer is not None else default_uniformizer(K, p)
    if valuation(pi, P) != 1:
        raise ValueError(f"{pi} is not a uniformizer at {p}")
    Q = _quotient(K, pe, cap)
    pir = Q.ring(pi.a, pi.b)
    if order.f == pe:
        chain = _ubar_sets_component(Q, pir, k)
        route = "component"
    else:
        chain = _ubar_sets_via_order(order, p, e, pi, Q, k, cap)
        route = "order"
    full = Q.full
    if chain[k] != full:
        raise AssertionError(f"U_{k} is not full at p={p} for {order}")
    alpha = k
    while alpha > 0 and all(chain[j] == full for j in range(alpha - 1, k + 1)):
        alpha -= 1

    root = spl.roots[0] if spl.roots else 0
    vchain = []
    for U in chain:
        vals = {_kbar_reduce(K, p, u, spl.variant, root) for c in U for u in Q.members[c]}
        vchain.append(frozenset(vals | {(0, 0)}))
    kbar = p * p if spl.variant is Splitting.INERT else p

    ubar = lambda i: chain[i] if i <= k else full  # noqa: E731
    vals = atom_valuations_from_chain(ubar, full, Q.product, alpha)
    principal = True if spl.variant is Splitting.INERT else is_principal(K, P) is not None
    return LocalProfile(
        d=K.d,
        f=order.f,
        p=p,
        variant=spl.variant,
        e=e,
        k=k,
        alpha=alpha,
        uniformizer=pi.key(),
        quotient_order=Q.order,
        ubar_chain=tuple(chain),
        v_chain=tuple(vchain),
        residue_field_size=kbar,
        atom_valuations=vals,
        principal=principal,
        route=route,
    )


def _quotient_for(profile: LocalProfile) -> _UnitQuotient:
    return _quotient(make_field(profile.d), profile.p**profile.e, None)


def criterion_b(profile: LocalProfile) -> bool:
    """U_1 * U_1 is the whole unit group (at the quotient level)."""
    Q = _quotient_for(profile)
    return Q.product(profile.ubar(1), profile.ubar(1)) == Q.full


def criterion_c(profile: LocalProfile) -> bool:
    """V_1 * V_1 equals the residue field."""
    K = make_field(profile.d)
    p = profile.p
    V1 = profile.v_chain[1] if len(profile.v_chain) > 1 else frozenset({(0, 0)})
    if profile.variant is Splitting.INERT:
        prods = {_kbar_mul(K, p, x, y) for x in V1 for y in V1}
    else:
        prods = {((x[0] * y[0]) % p, 0) for x in V1 for y in V1}
    return len(prods) == profile.residue_field_size


def local_half_factorial(profile: LocalProfile) -> bool:
    """Kainrath's criterion V_1*V_1 = residue field, cross-checked against U_1*U_1 = units."""
    c = criterion_c(profile)
    b = criterion_b(profile)
    if b != c:
        raise AssertionError(f"criteria (b) and (c) disagree for d={profile.d}, f={profile.f}, p={profile.p}")
    return c


def atom_valuations(profile: LocalProfile) -> frozenset[int]:
    return profile.atom_valuations


def prop_3_3_bound(profile: LocalProfile) -> bool:
    """valuations within {1, 2} implies exponent at most 4."""
    return not profile.atom_valuations <= {1, 2} or profile.alpha <= 4


def condition_iii(k: int, valuations: frozenset[int] | set[int], principal: bool) -> bool:
    """Per-prime condition: k <= 2 and valuations == {1} for principal P,
    k <= 4 and valuations within {1, 2} otherwise."""
    if principal:
        return k <= 2 and set(valuations) == {1}
    return k <= 4 and set(valuations) <= {1, 2}
