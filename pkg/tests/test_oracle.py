import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hfquad.field import make_field, torsion_units
from hfquad.order import make_order, order_unit, unit_index
from hfquad.oracle import (
    LengthSieve,
    OracleConfig,
    atoms_transfer_check,
    atoms_up_to,
    canonical_associate,
    elasticity_estimate,
    enumerate_classes,
    hf_witness_search,
    is_atom,
    length_set,
    unit_coset_reps,
)
from oracles import naive_length_sets

ORDERS = [(-5, 1), (-5, 3), (-7, 2), (-3, 2), (-1, 2), (-23, 1), (2, 3), (5, 2), (5, 4), (10, 3), (13, 2), (-2, 3)]


def test_config_defaults():
    c = OracleConfig()
    assert (c.norm_bound, c.length_cap) == (10**4, 64)


def test_canonical_examples():
    o = make_order(-3, 2)
    K = o.field
    assert canonical_associate(o, K(-2)).representative == K(2)
    o = make_order(5, 2)
    eta = order_unit(o)
    assert eta == o.field(1, 2)  # 2 + sqrt 5
    x = o.field(7, 4)
    assert canonical_associate(o, x) == canonical_associate(o, x * eta**3)
    with pytest.raises(ValueError):
        canonical_associate(o, o.field(0))
    with pytest.raises(ValueError):
        canonical_associate(o, o.field(0, 1))


@given(st.sampled_from(ORDERS), st.integers(-400, 400), st.integers(-60, 60), st.integers(-4, 4), st.data())
def test_canonical_on_unit_orbits(df, a, b, j, data):
    o = make_order(*df)
    K = o.field
    x = K(a, b * o.f)
    if x.is_zero():
        return
    c = canonical_associate(o, x)
    assert canonical_associate(o, c.representative) == c
    if K.is_real:
        eta = order_unit(o)
        u = eta**j if j >= 0 else (eta.conj() * eta.norm()) ** (-j)
        u = u * K(data.draw(st.sampled_from([1, -1])))
    else:
        u = data.draw(st.sampled_from([t for t in torsion_units(K) if o.contains(t)]))
    assert canonical_associate(o, x * u) == c


def test_atom_examples():
    o = make_order(-5, 1)
    assert is_atom(o, o.field(2))
    assert o.field(2) in [a.representative for a in atoms_up_to(o, 10)]
    o = make_order(-3, 2)
    assert is_atom(o, o.field(1, 2))  # 1 + sqrt -3
    o = make_order(-1, 1)
    assert is_atom(o, o.field(3)) and is_atom(o, o.field(7))
    with pytest.raises(ValueError):
        atoms_up_to(o, 1)


def test_length_set_examples():
    o = make_order(-5, 1)
    assert length_set(o, o.field(6)).lengths == {2}
    o = make_order(-7, 2)
    assert {2, 3} <= length_set(o, o.field(8)).lengths
    for d, f in ORDERS:
        o = make_order(d, f)
        assert length_set(o, o.field(1)).lengths == {0}
        assert length_set(o, o.field(-1)).lengths == {0}
        if o.field.is_real:
            assert length_set(o, order_unit(o)).lengths == {0}


def test_length_set_errors():
    o = make_order(-7, 2)
    with pytest.raises(ValueError, match="2 does not divide"):
        length_set(o, o.field(0, 1))
    with pytest.raises(ValueError):
        length_set(o, o.field(0))


def test_witness_examples():
    r = hf_witness_search(make_order(-7, 2), 100)
    assert r.witness == make_field(-7)(8) and r.lengths == {2, 3}
    assert not hf_witness_search(make_order(-3, 2), 10**4).found
    r = hf_witness_search(make_order(5, 4), 10**4)
    assert r.found and len(r.lengths) > 1
    # frozen: the first witness recorded for d=5, f=4
    assert (str(r.witness), abs(r.witness.norm()), sorted(r.lengths)) == ("0+16*w", 256, [2, 3])


def test_elasticity_examples():
    assert elasticity_estimate(make_order(-3, 2), 2000) == 1
    assert elasticity_estimate(make_order(-7, 2), 100) >= Fraction(3, 2)
    assert elasticity_estimate(make_order(-23, 1), 500) > 1


def test_atoms_transfer_examples():
    assert atoms_transfer_check(make_order(-3, 2), 1000)
    assert atoms_transfer_check(make_order(5, 2), 1000)
    assert not atoms_transfer_check(make_order(5, 4), 1000)
    with pytest.raises(ValueError):
        atoms_transfer_check(make_order(-7, 2), 100)


@pytest.mark.parametrize("d,f", [df for df in ORDERS if df[0] < 0])
def test_sieve_against_naive_lattice_scan(d, f):
    o = make_order(d, f)
    sieve = LengthSieve(o, 400)
    for x, lengths in naive_length_sets(d, f, 400).items():
        assert sieve.L[canonical_associate(o, o.field(*x)).representative.key()] == lengths


@pytest.mark.parametrize("d,f", ORDERS)
def test_sieve_against_divisor_recursion(d, f):
    o = make_order(d, f)
    K = o.field
    sieve = LengthSieve(o, 600)
    for key, lengths in sieve.L.items():
        assert length_set(o, K(*key)).lengths == lengths
        assert (lengths == {1}) == is_atom(o, K(*key))


@pytest.mark.parametrize("d,f", [(2, 3), (5, 4), (13, 2), (10, 3)])
def test_real_enumeration_complete(d, f):
    # every element of O with small coordinates has its class enumerated
    o = make_order(d, f)
    K = o.field
    classes = enumerate_classes(o, 2000)
    for a in range(-40, 41):
        for b in range(-12, 13):
            x = K(a, b * f)
            if not x.is_zero() and abs(x.norm()) <= 2000:
                assert canonical_associate(o, x).representative.key() in classes


@pytest.mark.parametrize("d,f", ORDERS)
def test_sumset_property(d, f):
    o = make_order(d, f)
    K = o.field
    rng = random.Random(d * 100 + f)
    keys = sorted(k for k, n in enumerate_classes(o, 120).items() if n > 1)
    for _ in range(100 // len(ORDERS) + 1):
        x, y = K(*rng.choice(keys)), K(*rng.choice(keys))
        lx, ly, lxy = length_set(o, x).lengths, length_set(o, y).lengths, length_set(o, x * y).lengths
        assert {a + b for a in lx for b in ly} <= lxy


def test_length_cap_marks_partial():
    o = make_order(-5, 1)
    r = length_set(o, o.field(2**10), length_cap=3)
    assert r.partial
    assert not length_set(o, o.field(2**10)).partial
    assert length_set(o, o.field(2**10)).lengths == {10}


@pytest.mark.parametrize("d,f", ORDERS)
def test_unit_coset_reps(d, f):
    o = make_order(d, f)
    reps = unit_coset_reps(o)
    # distinct cosets u*O^x, counted by the canonical class of u
    cosets = {canonical_associate(o, u * o.field(f)).representative for u in reps}
    assert len(cosets) == unit_index(o)


def test_first_witness_in_z_3_sqrt_minus_5():
    # frozen: 45 = 3*15 = 5*9 = (3 sqrt -5)(-3 sqrt -5), norm 2025; nothing smaller
    o = make_order(-5, 3)
    assert not hf_witness_search(o, 2024).found
    r = hf_witness_search(o, 2025)
    assert r.witness == o.field(45) and r.lengths == {2, 3}
