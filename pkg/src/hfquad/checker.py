"""Half-factoriality verdicts for quadratic orders.

Three characterizations are assembled here: the general local criterion
(class number, saturation, per-prime atom valuations), the seminormal special
case, and the quadratic special case in terms of the shape of f.  A census
runs all of them and compares.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field as dc_field

from sympy import divisors, isprime

from .field import QuadraticField
from .ideals import Splitting, class_number, splitting_type
from .local import LocalProfile, condition_iii, local_half_factorial, local_profile
from .order import QuadraticOrder, picard_order, saturated, seminormal, spec_map_bijective

__all__ = [
    "PrimeRecord",
    "Verdict",
    "carlitz",
    "theorem_verdict",
    "cor47_verdict",
    "cor46_verdict",
    "f_shape_ok",
    "conjecture_scan",
]


@dataclass
class PrimeRecord:
    p: int
    variant: str
    k: int | None = None
    alpha: int | None = None
    principal: bool | None = None
    atom_valuations: list[int] | None = None
    local_hf: bool | None = None
    passed: bool | None = None  # None: not evaluated
    note: str = ""


@dataclass
class Verdict:
    d: int
    f: int
    checker: str
    overall: bool
    cond_i: bool
    h: int
    cond_ii: bool | None = None
    s: int | None = None
    unit_index: int | None = None
    pic_order: int | None = None
    cond_iii: list[PrimeRecord] = dc_field(default_factory=list)
    extra: dict = dc_field(default_factory=dict)
    witness: str = ""
    profiles: list[LocalProfile] = dc_field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "f": self.f,
            "h": self.h,
            "s": self.s,
            "unit_index": self.unit_index,
            "pic_order": self.pic_order,
            "conditions": {
                "i": self.cond_i,
                "ii": self.cond_ii,
                "iii": [asdict(r) for r in self.cond_iii],
                **self.extra,
            },
            "overall": self.overall,
            "checker": self.checker,
            "witness": self.witness,
        }


def carlitz(K: QuadraticField) -> bool:
    """O_K is half-factorial iff its class group has at most two elements."""
    return class_number(K).h <= 2


def _base(order: QuadraticOrder, checker: str) -> Verdict:
    pic = picard_order(order)
    return Verdict(
        d=order.d,
        f=order.f,
        checker=checker,
        overall=False,
        cond_i=pic.h <= 2,
        h=pic.h,
        s=pic.s,
        unit_index=pic.unit_index,
        pic_order=pic.pic_order,
    )


def theorem_verdict(order: QuadraticOrder) -> Verdict:
    v = _base(order, "theorem")
    if order.f == 1:
        v.cond_ii = True
        v.overall = v.cond_i
        if not v.cond_i:
            v.witness = f"h={v.h}"
        return v
    sat = saturated(order)
    v.cond_ii = sat.value
    v.extra["ii_routes"] = {"s": sat.s, "all_inert": sat.all_inert, "direct": sat.direct}
    for p, e in order.conductor_primes().items():
        spl = splitting_type(order.field, p)
        if spl.variant is Splitting.SPLIT:
            v.cond_iii.append(PrimeRecord(p, spl.variant.value, note="not evaluated: p splits"))
            continue
        prof = local_profile(order, p)
        v.profiles.append(prof)
        ok = condition_iii(prof.k, prof.atom_valuations, prof.principal)
        v.cond_iii.append(
            PrimeRecord(
                p,
                spl.variant.value,
                k=prof.k,
                alpha=prof.alpha,
                principal=prof.principal,
                atom_valuations=sorted(prof.atom_valuations),
                local_hf=local_half_factorial(prof),
                passed=ok,
            )
        )
    iii = all(r.passed for r in v.cond_iii if r.passed is not None)
    v.overall = v.cond_i and v.cond_ii and iii
    if not v.cond_i:
        v.witness = f"h={v.h}"
    elif not v.cond_ii:
        bad = [r.p for r in v.cond_iii if r.variant != "inert"]
        v.witness = f"non-inert p={bad}" if bad else f"s={v.s}"
    elif not iii:
        r = next(r for r in v.cond_iii if r.passed is False)
        v.witness = f"p={r.p}: k={r.k}, valuations={r.atom_valuations}"
    return v


def f_shape_ok(f: int) -> bool:
    """f is a prime or twice an odd prime."""
    return isprime(f) or (f % 2 == 0 and f // 2 > 2 and isprime(f // 2))


def cor47_verdict(order: QuadraticOrder) -> Verdict:
    if order.f < 2:
        raise ValueError("the quadratic criterion needs f >= 2")
    v = _base(order, "cor47")
    v.cond_ii = saturated(order).value
    shape = f_shape_ok(order.f)
    v.extra["iii_f_shape"] = shape
    v.overall = v.cond_i and v.cond_ii and shape
    if not v.overall:
        v.witness = "h" if not v.cond_i else ("saturation" if not v.cond_ii else f"f={order.f} shape")
    return v


def cor46_verdict(order: QuadraticOrder) -> Verdict:
    if not seminormal(order):
        raise ValueError(f"{order} is not seminormal (conductor ideal not squarefree)")
    v = _base(order, "cor46")
    bij = spec_map_bijective(order)
    same_pic = v.pic_order == v.h
    v.extra["spec_bijective"] = bij
    v.extra["pic_equal"] = same_pic
    v.cond_ii = bij
    v.overall = v.cond_i and bij and same_pic
    return v


def conjecture_scan(orders) -> list[tuple[QuadraticOrder, QuadraticOrder]]:
    """Pairs O <= O' (f' | f) with O half-factorial and O' not."""
    cache: dict[tuple[int, int], bool] = {}

    def hf(o: QuadraticOrder) -> bool:
        key = (o.d, o.f)
        if key not in cache:
            cache[key] = theorem_verdict(o).overall
        return cache[key]

    out = []
    for o in orders:
        if not hf(o):
            continue
        for g in divisors(o.f):
            if g == o.f:
                continue
            over = QuadraticOrder(o.field, g)
            if not hf(over):
                out.append((o, over))
    return out
