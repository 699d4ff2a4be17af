from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fpcl.algebra import (
    Algebra,
    AlgebraError,
    Classification,
    check_laws,
    classify,
    complement,
    elements,
    join,
    leq,
    meet,
    sample_grid,
)

B, K3, F4, FZ = Algebra.BOOL2, Algebra.KLEENE3, Algebra.FOUR, Algebra.FUZZY
FINITE = [B, K3, F4]


def e(alg, v):
    return alg.element(v)


def test_four_join_meet_of_incomparables():
    assert join(e(F4, "u"), e(F4, "w")) == e(F4, "1")
    assert meet(e(F4, "u"), e(F4, "w")) == e(F4, "0")


def test_kleene3_meet_table():
    assert meet(e(K3, "u"), e(K3, "1")) == e(K3, "u")
    assert join(e(K3, "u"), e(K3, "0")) == e(K3, "u")


@pytest.mark.parametrize("alg", FINITE)
def test_identities(alg):
    for a in elements(alg):
        assert join(a, alg.zero) == a
        assert meet(a, alg.one) == a
        assert complement(complement(a)) == a
        assert leq(alg.zero, a)


def test_complements():
    assert complement(e(K3, "u")) == e(K3, "u")
    assert complement(e(F4, "w")) == e(F4, "w")
    assert complement(e(FZ, "3/10")) == e(FZ, "7/10")


def test_fuzzy_parsing_is_exact():
    assert e(FZ, "0.3").value == Fraction(3, 10)
    assert join(e(FZ, "0.3"), e(FZ, "7/10")) == e(FZ, "7/10")
    assert leq(e(FZ, "1/4"), e(FZ, "1/2"))


def test_four_order_incomparable():
    assert not leq(e(F4, "u"), e(F4, "w"))
    assert not leq(e(F4, "w"), e(F4, "u"))


@pytest.mark.parametrize("bad", ["1.5", "-1/2", "x", "1/0"])
def test_fuzzy_rejects(bad):
    with pytest.raises(AlgebraError):
        e(FZ, bad)


def test_finite_rejects_foreign_symbol():
    with pytest.raises(AlgebraError):
        e(K3, "w")


def test_mixed_algebras_rejected():
    with pytest.raises(AlgebraError):
        join(e(K3, "u"), e(F4, "u"))
    with pytest.raises(AlgebraError):
        leq(e(B, "1"), e(K3, "1"))


def test_elements_canonical_order():
    assert [str(x) for x in elements(B)] == ["0", "1"]
    assert [str(x) for x in elements(F4)] == ["0", "u", "w", "1"]
    with pytest.raises(AlgebraError):
        elements(FZ)


def test_sample_grid():
    assert [x.value for x in sample_grid(1)] == [0, 1]
    assert [x.value for x in sample_grid(4)] == [Fraction(i, 4) for i in range(5)]
    grid = set(sample_grid(6))
    assert all(complement(x) in grid for x in grid)


def test_classification():
    assert classify(B) is Classification.BOOLEAN
    assert classify(K3) is Classification.KLEENE
    assert classify(F4) is Classification.DE_MORGAN
    assert classify(FZ) is Classification.KLEENE


def test_four_kleene_witness():
    report = check_laws(F4)
    assert report.de_morgan and not report.kleene
    a, b = report.witnesses["kleene_condition"]
    assert (str(a), str(b)) == ("u", "w")
    assert meet(meet(a, ~a), join(b, ~b)) != meet(a, ~a)


@pytest.mark.parametrize("alg", FINITE)
def test_law_report_complete(alg):
    report = check_laws(alg)
    assert set(report.DE_MORGAN_LAWS) <= set(report.results)
    assert all(report.results[n] for n in report.DE_MORGAN_LAWS)
    assert len(report.lines()) == len(report.results)


fractions = st.fractions(min_value=0, max_value=1, max_denominator=50)


@given(fractions, fractions, fractions)
def test_fuzzy_de_morgan_and_kleene(a, b, c):
    x, y, z = (FZ.element(v) for v in (a, b, c))
    assert ~(x | y) == ~x & ~y
    assert ~(x & y) == ~x | ~y
    assert x & (y | z) == (x & y) | (x & z)
    assert (x & ~x) & (y | ~y) == x & ~x
