import random

import pytest
from hypothesis import given, strategies as st

from hfquad.field import make_field
from hfquad.order import (
    components,
    make_order,
    parse_order,
    picard_order,
    power_in_order,
    saturated,
    saturated_direct,
    seminormal,
    seminormal_by_definition,
    spec_map_bijective,
    unit_index,
)
from conftest import CENSUS
from oracles import primitive_form_count


def test_membership():
    o = make_order(-5, 2)
    K = o.field
    assert o.contains(K(1, 2)) and not o.contains(K(0, 1))
    assert make_order(-5, 1).contains(K(3, 7))
    assert o.in_reg(K(3, 2)) and not o.in_reg(K(2))
    assert make_order(-5, 1).in_reg(K(2))
    with pytest.raises(ValueError):
        o.in_reg(K(0, 1))


def test_parse_order():
    o = parse_order("d=-7,f=2")
    assert (o.d, o.f) == (-7, 2)
    with pytest.raises(ValueError):
        parse_order("f=2")


def test_components():
    comps = components(make_order(5, 12))
    assert [(c.p, c.k, c.order.f) for c in comps] == [(2, 2, 4), (3, 1, 3)]
    assert [c.order.f for c in components(make_order(5, 7))] == [7]
    o = make_order(5, 6)
    x = o.field(1, 6)
    assert o.contains(x) and all(c.order.contains(x) for c in components(o))
    with pytest.raises(ValueError):
        components(make_order(5, 1))


@given(st.sampled_from(CENSUS), st.integers(-500, 500), st.integers(-500, 500))
def test_membership_via_components(df, a, b):
    o = make_order(*df)
    x = o.field(a, b)
    assert o.contains(x) == all(c.order.contains(x) for c in components(o))


@given(st.sampled_from(CENSUS), *[st.integers(-200, 200)] * 4)
def test_reg_property(df, a0, a1, x0, x1):
    # a in Reg(O): a*x in O iff x in O
    o = make_order(*df)
    K = o.field
    a = K(a0, a1 * o.f)
    if not o.in_reg(a):
        return
    x = K(x0, x1)
    assert o.contains(a * x) == o.contains(x)


def test_unit_index_examples():
    assert unit_index(make_order(5, 2)) == 3
    assert unit_index(make_order(-3, 2)) == 3
    assert unit_index(make_order(5, 1)) == 1
    assert unit_index(make_order(5, 6)) == 12


@pytest.mark.parametrize(
    "d,f,pic",
    [(-3, 2, 1), (5, 6, 1), (-7, 2, 1), (-5, 3, 4), (-1, 3, 2), (-1, 5, 2)],
)
def test_picard_examples(d, f, pic):
    assert picard_order(make_order(d, f)).pic_order == pic


@pytest.mark.parametrize("df", [df for df in CENSUS if df[0] < 0])
def test_picard_vs_form_count(df):
    o = make_order(*df)
    assert picard_order(o).pic_order == primitive_form_count(o.f**2 * o.field.D)


def test_spec_map_examples():
    assert not spec_map_bijective(make_order(-7, 2))
    assert spec_map_bijective(make_order(-3, 2))
    assert spec_map_bijective(make_order(-7, 1))


@pytest.mark.parametrize("d,f,value", [(-3, 2, True), (-7, 2, False), (-1, 2, False), (5, 6, True), (5, 4, True)])
def test_saturation_examples(d, f, value):
    r = saturated(make_order(d, f))
    assert r.value is value and r.direct is value


def test_seminormal():
    assert seminormal(make_order(5, 6))
    assert not seminormal(make_order(5, 4))
    assert seminormal(make_order(-1, 1))
    # f squarefree but 2 ramified: the conductor ideal is P^2
    assert not seminormal(make_order(-1, 2))


@pytest.mark.parametrize("df", CENSUS[::3])
def test_seminormal_matches_definition(df):
    o = make_order(*df)
    assert seminormal(o) == seminormal_by_definition(o)


def test_power_in_order():
    o = make_order(5, 2)
    assert power_in_order(o, o.field(1, 2)) == 1
    assert power_in_order(o, o.field(0, 1)) == 3
    assert power_in_order(make_order(-7, 2), make_field(-7)(0, 1)) is None


@pytest.mark.parametrize("df", CENSUS)
def test_saturation_routes_agree(df):
    o = make_order(*df)
    r = saturated(o, verify=False)
    assert r.value == saturated_direct(o)


@pytest.mark.parametrize("df", CENSUS[::5])
def test_powers_land_in_order(df):
    o = make_order(*df)
    if not spec_map_bijective(o):
        return
    bound = picard_order(o).residue_units * max(o.conductor_primes().values())
    rng = random.Random(hash(df))
    for _ in range(100):
        x = o.field(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
        n = power_in_order(o, x)
        assert n is not None and n <= bound
