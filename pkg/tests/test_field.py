import pytest
from hypothesis import given, strategies as st

from hfquad.field import (
    QuadraticField,
    fundamental_unit,
    make_field,
    parse_element,
    torsion_units,
    unit_group,
)
from oracles import brute_fundamental_unit, brute_torsion_count

FIELDS = [-30, -23, -7, -5, -3, -2, -1, 2, 3, 5, 6, 13, 21, 29, 46, 94]
coef = st.integers(-10**6, 10**6)


def test_discriminants():
    assert make_field(-1).D == -4
    assert make_field(5).D == 5
    assert make_field(-3).D == -3
    assert make_field(2).D == 8


def test_rejects_bad_d():
    for d in (0, 1, 4, -12, 18):
        with pytest.raises(ValueError):
            QuadraticField(d)


def test_basic_arithmetic():
    K = make_field(-5)
    assert K(1, 1).norm() == 6
    assert K(7).conj() == K(7)
    assert make_field(5)(0, 1).norm() == -1


@pytest.mark.parametrize("d", FIELDS)
@given(a=coef, b=coef, c=coef, e=coef)
def test_norm_multiplicative(d, a, b, c, e):
    K = make_field(d)
    x, y = K(a, b), K(c, e)
    assert (x * y).norm() == x.norm() * y.norm()
    assert x.conj().conj() == x
    assert (x + x.conj()).b == 0 and (x + x.conj()).a == x.trace()
    if not y.is_zero():
        assert (x * y).divide(y) == x


@given(st.sampled_from(FIELDS), coef, coef)
def test_parse_roundtrip(d, a, b):
    K = make_field(d)
    assert parse_element(K, str(K(a, b))) == K(a, b)


@pytest.mark.parametrize("d", [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 21, 22, 29])
def test_fundamental_unit_matches_brute_force(d):
    eps = fundamental_unit(make_field(d))
    assert eps.key() == brute_fundamental_unit(d)


@pytest.mark.parametrize("d", [2, 3, 5, 19, 31, 43, 46, 61, 94, 109, 151, 166, 199])
def test_fundamental_unit_is_unit(d):
    eps = unit_group(make_field(d)).fundamental_unit
    assert eps * eps.conj() == make_field(d)(eps.norm())
    assert abs(eps.norm()) == 1
    assert eps.sign() > 0 and eps.dominates_conjugate()


def test_large_units_frozen():
    # frozen from the continued-fraction computation, checked here by norm
    assert fundamental_unit(make_field(46)).key() == (24335, 3588)
    assert fundamental_unit(make_field(94)).key() == (2143295, 221064)
    assert make_field(46)(24335, 3588).norm() == 1


@pytest.mark.parametrize("d", FIELDS)
def test_torsion(d):
    K = make_field(d)
    units = torsion_units(K)
    assert len(units) == brute_torsion_count(d)
    assert len(units) == {-3: 6, -4: 4}.get(K.D, 2)
    assert all(u.norm() == 1 for u in units)
