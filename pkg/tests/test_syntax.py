import pytest
from hypothesis import given
from hypothesis import strategies as st

from fpcl.syntax import (
    FALSE,
    TRUE,
    Atom,
    Coalesce,
    FNot,
    FOr,
    Neg,
    ParseError,
    Pil,
    Plus,
    big_and,
    big_coalesce,
    big_or,
    big_plus,
    big_times,
    is_port_name,
    parse_pcl,
    parse_pil,
    pcl_closure,
    pcl_times,
    pil_and,
    ports_of,
    print_formula,
)

p, q, r = Atom("p"), Atom("q"), Atom("r")


def test_derived_operators_expand():
    assert parse_pil("p & q") == FNot(FOr(FNot(p), FNot(q)))
    assert parse_pil("false") == FNot(TRUE)
    assert parse_pcl("p * q") == Neg(Plus(Neg(Pil(p)), Neg(Pil(q))))
    assert parse_pcl("cl p") == Coalesce(Pil(p), Pil(TRUE))


def test_precedence():
    assert parse_pil("!p | q & r") == FOr(FNot(p), pil_and(q, r))
    assert parse_pcl("p + q # r") == Plus(Pil(p), Coalesce(Pil(q), Pil(r)))
    assert parse_pcl("p # q * r") == Coalesce(Pil(p), pcl_times(q, r))
    assert parse_pcl("p + q + r") == Plus(Plus(Pil(p), Pil(q)), Pil(r))


def test_pil_operators_need_pil_operands():
    with pytest.raises(ParseError):
        parse_pcl("neg p & q")
    with pytest.raises(ParseError):
        parse_pcl("!(p # q)")
    assert parse_pcl("neg (p & q)") == Neg(Pil(pil_and(p, q)))


@pytest.mark.parametrize("text", ["p +", "(p", "p q", "p $ q", "", "p # ()"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_pcl(text)


def test_pcl_tokens_rejected_in_pil():
    with pytest.raises(ParseError) as info:
        parse_pil("p # q")
    assert info.value.position == 2
    with pytest.raises(ParseError):
        parse_pil("neg p")


def test_print_examples():
    assert print_formula(parse_pil("!(p | q)")) == "!(p | q)"
    assert print_formula(parse_pil("p & !q")) == "p & !q"
    assert print_formula(FALSE) == "false"
    assert print_formula(parse_pcl("(p + q) # r")) == "(p + q) # r"
    assert print_formula(parse_pcl("p # (q # r)")) == "p # (q # r)"
    assert print_formula(parse_pcl("cl p")) == "p # true"


def test_port_names():
    assert is_port_name("s_1") and is_port_name("_x")
    assert not is_port_name("neg") and not is_port_name("1a")


def test_big_builders():
    assert big_or([p, q, r]) == FOr(FOr(p, q), r)
    assert big_and([p]) == p
    assert big_plus([p, q]) == Plus(Pil(p), Pil(q))
    assert big_coalesce([p, q]) == Coalesce(Pil(p), Pil(q))
    assert big_times([p, q]) == pcl_times(p, q)
    with pytest.raises(ValueError):
        big_or([])


def test_ports_of():
    assert ports_of(parse_pcl("p # neg (q | !r)")) == {"p", "q", "r"}
    assert ports_of(parse_pcl("true")) == frozenset()


atoms = st.sampled_from([p, q, r, TRUE, FALSE])
pil = st.recursive(
    atoms,
    lambda c: st.one_of(
        c.map(FNot), st.builds(FOr, c, c), st.builds(pil_and, c, c)
    ),
    max_leaves=8,
)
pcl = st.recursive(
    pil.map(Pil),
    lambda c: st.one_of(
        c.map(Neg),
        st.builds(Plus, c, c),
        st.builds(Coalesce, c, c),
        st.builds(pcl_times, c, c),
        c.map(pcl_closure),
    ),
    max_leaves=6,
)


@given(pil)
def test_pil_round_trip(f):
    assert parse_pil(print_formula(f)) == f


@given(pcl)
def test_pcl_round_trip(z):
    assert parse_pcl(print_formula(z)) == z
