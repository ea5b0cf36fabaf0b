import pytest

from hfquad.checker import (
    carlitz,
    conjecture_scan,
    cor46_verdict,
    cor47_verdict,
    f_shape_ok,
    theorem_verdict,
)
from hfquad.field import make_field
from hfquad.oracle import atoms_up_to, hf_witness_search, is_atom
from hfquad.order import QuadraticOrder, make_order, picard_order, seminormal, spec_map_bijective
from conftest import CENSUS, CENSUS_D


def test_carlitz():
    assert carlitz(make_field(-1))
    assert carlitz(make_field(-5))
    assert not carlitz(make_field(-23))


def test_theorem_examples():
    v = theorem_verdict(make_order(-3, 2))
    assert v.overall and v.cond_i and v.cond_ii
    v = theorem_verdict(make_order(-7, 2))
    assert not v.overall and v.cond_ii is False
    assert v.cond_iii[0].passed is None and "split" in v.cond_iii[0].note
    v = theorem_verdict(make_order(5, 4))
    assert not v.overall and v.cond_i and v.cond_ii
    [r] = v.cond_iii
    assert r.principal and r.k == 2 and r.atom_valuations == [1, 2] and r.passed is False


def test_verdict_json_schema():
    d = theorem_verdict(make_order(5, 6)).to_dict()
    assert set(d) >= {"d", "f", "h", "s", "unit_index", "pic_order", "conditions", "overall", "checker"}
    assert set(d["conditions"]) >= {"i", "ii", "iii"}


def test_cor47_examples():
    assert cor47_verdict(make_order(5, 6)).overall
    assert not cor47_verdict(make_order(5, 4)).overall
    assert cor47_verdict(make_order(-3, 2)).overall
    with pytest.raises(ValueError):
        cor47_verdict(make_order(5, 1))


def test_f_shape():
    assert [f for f in range(2, 31) if f_shape_ok(f)] == [2, 3, 5, 6, 7, 10, 11, 13, 14, 17, 19, 22, 23, 26, 29]


def test_cor46_examples():
    assert cor46_verdict(make_order(5, 6)).overall
    assert not cor46_verdict(make_order(-7, 2)).overall
    for d in (-1, -5, -23, 10):
        assert cor46_verdict(make_order(d, 1)).overall == carlitz(make_field(d))
    with pytest.raises(ValueError):
        cor46_verdict(make_order(-1, 2))


@pytest.mark.parametrize("d", CENSUS_D)
def test_maximal_order_is_carlitz(d):
    assert theorem_verdict(make_order(d, 1)).overall == carlitz(make_field(d))


@pytest.mark.parametrize("df", CENSUS)
def test_checkers_agree(df):
    o = make_order(*df)
    t = theorem_verdict(o).overall
    assert cor47_verdict(o).overall == t
    if seminormal(o):
        assert cor46_verdict(o).overall == t


def test_conjecture_scan_examples():
    assert conjecture_scan([make_order(5, 6)]) == []
    assert conjecture_scan([make_order(-3, 2)]) == []
    assert conjecture_scan([make_order(-7, 2), make_order(5, 4)]) == []


@pytest.mark.parametrize("df", [df for df in CENSUS if df[1] <= 6])
def test_hf_atoms_are_maximal_atoms(df):
    o = make_order(*df)
    if not theorem_verdict(o).overall:
        return
    top = QuadraticOrder(o.field, 1)
    assert all(is_atom(top, a.representative) for a in atoms_up_to(o, 300))


@pytest.mark.parametrize("d,f", [(-3, 3), (-1, 2), (2, 2), (3, 6), (10, 2), (15, 6), (5, 5)])
def test_ramified_squarefree_f_not_hf(d, f):
    # f squarefree but the conductor ideal is not: the seminormal shortcut
    # (spec-map bijective, |Pic| = h <= 2) would say half-factorial here
    o = make_order(d, f)
    pic = picard_order(o)
    assert pic.h <= 2 and spec_map_bijective(o) and pic.pic_order == pic.h
    assert not seminormal(o) and not theorem_verdict(o).overall
    assert hf_witness_search(o, 16000).found
